"""Preset figure rendering from modeloc CSV files.

Each preset maps 1:1 to a CSV-producing command of the modeloc CLI:

* fig1, fig2, fig3 - mode-grid heatmap collections (cells outside the
  domain are empty in the CSV and drawn transparent),
* fig4 - four panels of ratio vs sqrt(eigenvalue) with the closed-form
  bound dashed, log y axis,
* fig5 - focusing-ratio powers vs p per radial index, with the theoretical
  limit in black,
* figD1 - direct angular Mathieu curves with their two-term asymptotic
  approximations as markers.

Output is a PNG at 150 dpi plus a sidecar JSON (same path + ".json") with
the axis ranges and scales, which is what the tests assert against instead
of pixel comparisons.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

DPI = 150

PRESETS = ("fig1", "fig2", "fig3", "fig4", "fig5", "figD1")


class SchemaError(ValueError):
    """The input CSV does not match the preset's schema."""

    def __init__(self, path, column):
        self.path = str(path)
        self.column = column
        super().__init__(f"{path}: missing or empty column {column!r}")


def _read_table(path, required):
    path = Path(path)
    if not path.exists():
        raise SchemaError(path, required[0])
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise SchemaError(path, required[0])
    header = rows[0]
    for col in required:
        if col not in header:
            raise SchemaError(path, col)
    if len(rows) == 1:
        raise SchemaError(path, required[0])
    out = {}
    for col in header:
        i = header.index(col)
        vals = []
        for r in rows[1:]:
            cell = r[i] if i < len(r) else ""
            if cell == "":
                vals.append(math.nan)
            else:
                try:
                    vals.append(float(cell))
                except ValueError:
                    vals.append(cell)
        out[col] = vals
    return out


def _grid_from_table(tab):
    x = np.asarray(tab["x"], dtype=float)
    y = np.asarray(tab["y"], dtype=float)
    u = np.asarray(tab["u"], dtype=float)
    xs = np.unique(x)
    ys = np.unique(y)
    grid = np.full((xs.size, ys.size), np.nan)
    ix = np.searchsorted(xs, x)
    iy = np.searchsorted(ys, y)
    grid[ix, iy] = u
    return xs, ys, grid


def _panel_meta(ax):
    return {
        "title": ax.get_title(),
        "xlabel": ax.get_xlabel(),
        "ylabel": ax.get_ylabel(),
        "xlim": [float(v) for v in ax.get_xlim()],
        "ylim": [float(v) for v in ax.get_ylim()],
        "xscale": ax.get_xscale(),
        "yscale": ax.get_yscale(),
    }


def _finish(fig, axes, preset, out_path):
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out_path, dpi=DPI)
    plt.close(fig)
    meta = {
        "preset": preset,
        "dpi": DPI,
        "panels": [_panel_meta(ax) for ax in axes],
    }
    Path(str(out_path) + ".json").write_text(json.dumps(meta, indent=2) + "\n")
    return out_path


def _render_heatmaps(preset, in_dir, out_path):
    files = sorted(Path(in_dir).glob(f"{preset}_*.csv"))
    if not files:
        raise SchemaError(Path(in_dir) / f"{preset}_*.csv", "u")
    cols = min(3, len(files))
    rows = (len(files) + cols - 1) // cols
    fig, axarr = plt.subplots(rows, cols, figsize=(4 * cols, 3.4 * rows))
    axes = np.atleast_1d(axarr).ravel()
    for ax, path in zip(axes, files):
        tab = _read_table(path, ["x", "y", "u"])
        xs, ys, grid = _grid_from_table(tab)
        masked = np.ma.masked_invalid(grid.T)
        ax.imshow(
            masked,
            origin="lower",
            extent=(xs[0], xs[-1], ys[0], ys[-1]),
            cmap="RdBu_r",
            interpolation="nearest",
        )
        ax.set_title(path.stem.replace(f"{preset}_", ""))
        ax.set_xlabel("x")
        ax.set_ylabel("y")
    for ax in axes[len(files):]:
        ax.set_visible(False)
    fig.tight_layout()
    return _finish(fig, list(axes[: len(files)]), preset, out_path)


_FIG4_PANELS = (
    ("ellipse", 0, "filled ellipse, pair 0"),
    ("ellipse", 1, "filled ellipse, pair 1"),
    ("annulus", 0, "elliptical annulus, pair 0"),
    ("annulus", 1, "elliptical annulus, pair 1"),
)


def _render_fig4(in_dir, out_path):
    fig, axarr = plt.subplots(2, 2, figsize=(9, 7))
    axes = axarr.ravel()
    for ax, (name, n, title) in zip(axes, _FIG4_PANELS):
        tab = _read_table(
            Path(in_dir) / f"fig4_{name}_n{n}.csv",
            ["sqrt_lambda", "ratio", "bound"],
        )
        x = np.asarray(tab["sqrt_lambda"], dtype=float)
        ax.semilogy(x, tab["ratio"], "-", color="tab:blue", label="measured")
        ax.semilogy(x, tab["bound"], "--", color="tab:red", label="bound")
        ax.set_title(title)
        ax.set_xlabel(r"$\sqrt{\lambda}$")
        ax.set_ylabel("norm fraction outside sector")
        ax.legend()
    fig.tight_layout()
    return _finish(fig, list(axes), "fig4", out_path)


def _render_fig5(in_dir, out_path):
    tab = _read_table(
        Path(in_dir) / "fig5_focusing.csv",
        ["dim", "k", "p", "ratio_pow", "limit_pow"],
    )
    dim = np.asarray(tab["dim"], dtype=float)
    k = np.asarray(tab["k"], dtype=float)
    p = np.asarray(tab["p"], dtype=float)
    rp = np.asarray(tab["ratio_pow"], dtype=float)
    lp = np.asarray(tab["limit_pow"], dtype=float)
    dims = sorted(set(int(d) for d in dim))
    fig, axarr = plt.subplots(1, len(dims), figsize=(5 * len(dims), 4))
    axes = np.atleast_1d(axarr)
    for ax, d in zip(axes, dims):
        sel = dim == d
        for kv in sorted(set(k[sel])):
            s = sel & (k == kv)
            order = np.argsort(p[s])
            ax.plot(p[s][order], rp[s][order], "-o", ms=3, label=f"k={int(kv)}")
        order = np.argsort(p[sel])
        pp = p[sel][order]
        ll = lp[sel][order]
        good = ~np.isnan(ll)
        ax.plot(pp[good], ll[good], "-", color="black", lw=2, label="limit")
        ax.set_title(f"{d}D")
        ax.set_xlabel("p")
        ax.set_ylabel("p-th power of the norm fraction")
        ax.legend()
    fig.tight_layout()
    return _finish(fig, list(axes), "fig5", out_path)


def _render_figd1(in_dir, out_path):
    tab = _read_table(
        Path(in_dir) / "figD1_asymptotics.csv",
        ["z", "ce1_direct", "se1_direct", "ce1_twoterm", "se1_twoterm"],
    )
    z = np.asarray(tab["z"], dtype=float)
    fig, ax = plt.subplots(figsize=(6, 4.2))
    ax.plot(z, tab["ce1_direct"], "-", color="tab:blue", label="ce_1 direct")
    ax.plot(z, tab["se1_direct"], "--", color="tab:orange", label="se_1 direct")
    step = max(1, z.size // 24)
    ax.plot(z[::step], np.asarray(tab["ce1_twoterm"])[::step], "o", ms=4,
            mfc="none", color="tab:blue", label="ce_1 two-term")
    ax.plot(z[::step], np.asarray(tab["se1_twoterm"])[::step], "^", ms=4,
            mfc="none", color="tab:orange", label="se_1 two-term")
    ax.set_xlabel("angle")
    ax.set_ylabel("value")
    ax.set_title("angular Mathieu functions vs two-term expansion")
    ax.legend()
    fig.tight_layout()
    return _finish(fig, [ax], "figD1", out_path)


def render(preset, in_dir, out_path):
    """Render one preset from the CSVs in `in_dir` to a PNG at `out_path`,
    with an axis-metadata JSON sidecar next to it."""
    if preset not in PRESETS:
        raise ValueError(f"unknown preset {preset!r}; choose from {PRESETS}")
    if preset in ("fig1", "fig2", "fig3"):
        return _render_heatmaps(preset, in_dir, out_path)
    if preset == "fig4":
        return _render_fig4(in_dir, out_path)
    if preset == "fig5":
        return _render_fig5(in_dir, out_path)
    return _render_figd1(in_dir, out_path)
