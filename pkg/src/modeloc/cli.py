"""Command-line front end: Bessel-zero tables, mode evaluation grids, ratio
sweeps (with the figure presets), and the verification suite.

Exit codes: 0 success, 1 verification failure, 2 invalid usage/ranges,
3 numerical failure. CSV cells carry 17 significant digits so doubles
round-trip exactly; row order is deterministic (lexicographic in indices).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import localization as loc
from . import mathieu, verify
from .bessel import ZeroSpec, find_zero
from .errors import ModelocError
from .modes import (
    BoundaryCondition,
    Ellipse,
    EllipticAnnulus,
    annulus_mode,
    ball_mode,
    disk_mode,
    ellipse_mode,
    rectangle_mode,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

MODE_GRID_PRESETS = ("fig1", "fig2", "fig3")
RATIO_PRESETS = ("fig4", "fig5", "fig6", "figD1")


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        return f"{v:.17g}"
    return str(v)


def write_csv(path, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def _parse_range(text):
    """'0:4' -> 0..4 inclusive; '0:8:2' stepped; '1,3,7' listed; '5' single."""
    text = text.strip()
    if ":" in text:
        parts = [int(p) for p in text.split(":")]
        if len(parts) == 2:
            lo, hi, step = parts[0], parts[1], 1
        elif len(parts) == 3:
            lo, hi, step = parts
        else:
            raise ValueError(f"bad range {text!r}")
        if step <= 0 or hi < lo:
            raise ValueError(f"bad range {text!r}")
        return list(range(lo, hi + 1, step))
    return [int(p) for p in text.split(",") if p.strip()]


def _parse_floats(text):
    out = []
    for p in str(text).split(","):
        p = p.strip()
        if not p:
            continue
        out.append(math.inf if p in ("inf", "Inf") else float(p))
    return out


def _bc(args):
    return BoundaryCondition(args.bc, getattr(args, "h", 0.0) or 0.0)


# ----------------------------------------------------------------------
# zeros


def cmd_zeros(args):
    ns = _parse_range(args.n)
    ks = _parse_range(args.k)
    if not ns or not ks or min(ns) < 0 or min(ks) < 1:
        print("error: invalid n/k ranges", file=sys.stderr)
        return EXIT_USAGE
    bc = _bc(args)
    rows = []
    for n in sorted(ns):
        for k in sorted(ks):
            spec = ZeroSpec(
                n=n,
                k=k,
                kind=bc.zero_kind,
                family=args.family,
                h=bc.h if bc.kind == "robin" else None,
            )
            rows.append((args.family, bc.kind, n, k, find_zero(spec)))
    write_csv(args.out, ["family", "bc", "n", "k", "zero"], rows)
    return EXIT_OK


# ----------------------------------------------------------------------
# mode grids


def _build_mode(args):
    bc = _bc(args)
    if args.domain == "disk":
        return disk_mode(args.R, bc, args.n, args.k, args.i)
    if args.domain == "ball":
        return ball_mode(args.R, bc, args.n, args.k, args.l)
    if args.domain == "ellipse":
        return ellipse_mode(args.a, args.R, bc, args.n, args.k, args.i,
                            kmax=args.kmax)
    if args.domain == "annulus":
        return annulus_mode(args.a, args.R1, args.R2, bc, args.n, args.k,
                            args.i, kmax=args.kmax)
    if args.domain == "rectangle":
        lengths = _parse_floats(args.lengths)
        nvec = _parse_range(args.nvec)
        return rectangle_mode(lengths, bc, nvec)
    raise ValueError(f"unknown domain {args.domain!r}")


def _grid_rows(mode, grid):
    dom = mode.domain
    if dom.dim == 3:
        half = dom.radius
        axes = [np.linspace(-half, half, grid)] * 3
    elif mode.label == "disk":
        axes = [np.linspace(-dom.radius, dom.radius, grid)] * 2
    elif mode.label in ("ellipse", "annulus"):
        ax = dom.focal * math.cosh(dom.r_outer)
        ay = dom.focal * math.sinh(dom.r_outer)
        axes = [np.linspace(-ax, ax, grid), np.linspace(-ay, ay, grid)]
    else:
        axes = [np.linspace(0.0, li, grid) for li in dom.lengths]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([m.ravel() for m in mesh], axis=1)
    inside = dom.contains(pts)
    vals = np.full(pts.shape[0], np.nan)
    if np.any(inside):
        vals[inside] = mode.evaluate(pts[inside])
        peak = np.max(np.abs(vals[inside]))
        if peak > 0.0:
            vals[inside] /= peak
    rows = []
    for i in range(pts.shape[0]):
        coord = [float(c) for c in pts[i]]
        rows.append(tuple(coord) + ((None if not inside[i] else float(vals[i])),))
    return rows, len(axes)


def _mode_grid_preset(name, out_dir, args):
    out = Path(out_dir)
    specs = {
        "fig1": [("disk", n, k) for k in (1, 2) for n in (1, 10, 40)],
        "fig2": [("disk", n, k) for n in (0, 1) for k in (1, 10, 30)],
        "fig3": [("ellipse", 1, k) for k in (1, 5, 9)]
        + [("annulus", 1, k) for k in (1, 5, 9)],
    }[name]
    for dom, n, k in specs:
        ns = argparse.Namespace(**vars(args))
        ns.domain = dom
        ns.n, ns.k, ns.i, ns.l = n, k, 1, 0
        ns.bc, ns.h = "dirichlet", 0.0
        ns.R = 1.0
        ns.a, ns.R1, ns.R2 = 1.0, 0.5, 1.0
        mode = _build_mode(ns)
        rows, dim = _grid_rows(mode, args.grid)
        header = ["x", "y", "z"][:dim] + ["u"]
        write_csv(out / f"{name}_{dom}_n{n}_k{k}.csv", header, rows)
    return EXIT_OK


def cmd_mode_grid(args):
    if args.grid < 16:
        print("error: grid resolution must be >= 16", file=sys.stderr)
        return EXIT_USAGE
    if args.preset:
        if args.preset not in MODE_GRID_PRESETS:
            print(
                f"error: mode-grid presets are {MODE_GRID_PRESETS}",
                file=sys.stderr,
            )
            return EXIT_USAGE
        return _mode_grid_preset(args.preset, args.out, args)
    mode = _build_mode(args)
    rows, dim = _grid_rows(mode, args.grid)
    header = ["x", "y", "z"][:dim] + ["u"]
    write_csv(args.out, header, rows)
    return EXIT_OK


# ----------------------------------------------------------------------
# ratio sweeps


def _sweep_whispering(args, family):
    bc = _bc(args)
    rows = []
    fn = loc.whispering_ratio if family == "disk" else loc.ball_whispering_ratio
    default_n = "20:60:20" if family == "disk" else "15:45:15"
    for n in sorted(_parse_range(args.n or default_n)):
        for k in sorted(_parse_range(args.k or "1")):
            for p in _parse_floats(args.p or "2"):
                r = fn(args.R, bc, n, k, p)
                rows.append(
                    (family, bc.kind, n, k, p, r.ratio, r.bound,
                     r.measure_fraction, r.quad_error, r.eigenvalue)
                )
    write_csv(
        args.out,
        ["domain", "bc", "n", "k", "p", "ratio", "bound", "measure_fraction",
         "quad_error", "eigenvalue"],
        rows,
    )
    return EXIT_OK


def _focusing_rows(dims, ns, ks, ps, inner, bc):
    rows = []
    for dim in dims:
        for n in ns:
            for k in ks:
                for p in ps:
                    r = loc.focusing_ratio(dim, bc, n, k, p, inner)
                    lim_pow = None if r.limit is None else r.limit**p
                    rows.append(
                        (dim, bc.kind, n, k, p, inner, r.ratio,
                         None if p == math.inf else r.ratio**p,
                         r.limit, None if p == math.inf else lim_pow,
                         r.measure_fraction, r.quad_error)
                    )
    return rows


_FOCUSING_HEADER = [
    "dim", "bc", "n", "k", "p", "inner", "ratio", "ratio_pow", "limit",
    "limit_pow", "measure_fraction", "quad_error",
]

_BOUNCING_HEADER = [
    "domain", "a", "R1", "R2", "n", "i", "alpha", "p", "k", "q",
    "sqrt_lambda", "ratio", "bound", "measure_fraction", "quad_error",
]


def _sweep_focusing(args):
    bc = _bc(args)
    rows = _focusing_rows(
        [args.dim], sorted(_parse_range(args.n or "0,1")),
        sorted(_parse_range(args.k or "100,1000")),
        _parse_floats(args.p or "1,2,6"), args.R, bc
    )
    write_csv(args.out, _FOCUSING_HEADER, rows)
    return EXIT_OK


def _bouncing_rows(domain, label, n, i, alpha, ps, target, kmax):
    rows = []
    for p in ps:
        reports, lam_thr = loc.bouncing_sweep(
            domain, n, i, alpha, p, sqrt_lambda_target=target, kmax=kmax
        )
        r1 = getattr(domain, "r_inner", 0.0)
        for rep in reports:
            q = rep.eigenvalue * domain.focal**2 / 4.0
            rows.append(
                (label, domain.focal, r1, domain.r_outer, n, i, alpha, p,
                 rep.index[1], q, math.sqrt(rep.eigenvalue), rep.ratio,
                 rep.bound, rep.measure_fraction, rep.quad_error)
            )
    return rows


def _sweep_bouncing(args):
    if args.domain == "ellipse":
        dom = Ellipse(args.a, args.R)
    elif args.domain == "annulus":
        dom = EllipticAnnulus(args.a, args.R1, args.R2)
    else:
        print("error: bouncing sweep needs --domain ellipse|annulus",
              file=sys.stderr)
        return EXIT_USAGE
    n = int(args.n) if args.n else 0
    rows = _bouncing_rows(
        dom, args.domain, n, args.i, args.alpha,
        _parse_floats(args.p or "2"), args.sqrt_lambda_max, args.kmax
    )
    write_csv(args.out, _BOUNCING_HEADER, rows)
    return EXIT_OK


def _rect_box(text):
    out = []
    for part in text.split(","):
        a, b = part.split(":")
        out.append((float(a), float(b)))
    return tuple(out)


def _sweep_rectangle(args):
    bc = _bc(args)
    lengths = tuple(_parse_floats(args.lengths))
    box = _rect_box(args.box)
    rows = []
    import warnings as _w

    for p in _parse_floats(args.p or "1,2"):
        with _w.catch_warnings():
            _w.simplefilter("ignore", loc.NearRationalWarning)
            rep = loc.rectangle_lower_bound(lengths, bc, box, p,
                                            nmax_sq=args.nmax_sq)
        rows.append(
            (";".join(_fmt(v) for v in lengths), bc.kind, p,
             ";".join(str(v) for v in rep.argmin), rep.empirical_min,
             None, rep.analytic, rep.modes_checked)
        )
    write_csv(
        args.out,
        ["lengths", "bc", "p", "argmin", "empirical_min", "bound",
         "lower_bound", "modes_checked"],
        rows,
    )
    return EXIT_OK


def _preset_fig4(args):
    out = Path(args.out)
    target = args.sqrt_lambda_max
    for name, n, alpha in verify._FIG4_CONFIGS:
        dom = Ellipse(1.0, 1.0) if name == "ellipse" else EllipticAnnulus(1.0, 0.5, 1.0)
        rows = _bouncing_rows(dom, name, n, 1, alpha, [2.0], target, args.kmax)
        write_csv(out / f"fig4_{name}_n{n}.csv", _BOUNCING_HEADER, rows)
    return EXIT_OK


def _preset_fig5(args):
    out = Path(args.out)
    ks = sorted(_parse_range(args.k)) if args.k else [100, 1000, 10000]
    ps = _parse_floats(args.p) if args.p else [
        1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.5, 5.0, 5.5, 6.0,
    ]
    inner = args.R if 0.0 < args.R < 1.0 else 0.8
    rows = _focusing_rows([2], [1], ks, ps, inner, BoundaryCondition("dirichlet"))
    rows += _focusing_rows([3], [1], ks, ps, inner, BoundaryCondition("dirichlet"))
    write_csv(out / "fig5_focusing.csv", _FOCUSING_HEADER, rows)
    return EXIT_OK


def _preset_fig6(args):
    out = Path(args.out)
    ns = argparse.Namespace(**vars(args))
    ns.lengths = "1.0,1.4142135623730951"
    ns.box = "0.2:0.4,0.3:0.6"
    ns.p = ns.p or "1,2"
    ns.bc = "dirichlet"
    ns.nmax_sq = 400
    ns.out = out / "fig6_rectangle.csv"
    return _sweep_rectangle(ns)


def _preset_figd1(args):
    out = Path(args.out)
    q = 20.0
    z = np.linspace(0.0, 1.2, 121)
    ce1 = mathieu.angular_eval(mathieu.solve_characteristic(1, "ce", q), z)
    se1 = mathieu.angular_eval(mathieu.solve_characteristic(1, "se", q), z)
    ce1_a, _ = mathieu.asymptotic_angular(1, z, q)
    _, se1_a = mathieu.asymptotic_angular(0, z, q)
    rows = [
        (float(zi), q, float(a), float(b), float(c), float(d))
        for zi, a, b, c, d in zip(z, ce1, se1, ce1_a, se1_a)
    ]
    write_csv(
        out / "figD1_asymptotics.csv",
        ["z", "q", "ce1_direct", "se1_direct", "ce1_twoterm", "se1_twoterm"],
        rows,
    )
    return EXIT_OK


def cmd_ratio_sweep(args):
    if args.preset:
        if args.preset not in RATIO_PRESETS:
            print(f"error: ratio presets are {RATIO_PRESETS}", file=sys.stderr)
            return EXIT_USAGE
        return {
            "fig4": _preset_fig4,
            "fig5": _preset_fig5,
            "fig6": _preset_fig6,
            "figD1": _preset_figd1,
        }[args.preset](args)
    kind = args.kind
    if kind == "whispering":
        return _sweep_whispering(args, "disk")
    if kind == "ball":
        return _sweep_whispering(args, "ball")
    if kind == "focusing":
        return _sweep_focusing(args)
    if kind == "bouncing":
        return _sweep_bouncing(args)
    if kind == "rectangle":
        return _sweep_rectangle(args)
    print("error: choose a sweep kind or a preset", file=sys.stderr)
    return EXIT_USAGE


# ----------------------------------------------------------------------
# verify


def cmd_verify(args):
    names = args.suite or None
    if names:
        unknown = [n for n in names if n not in verify.SUITES]
        if unknown:
            print(f"error: unknown suites {unknown}; available: "
                  f"{sorted(verify.SUITES)}", file=sys.stderr)
            return EXIT_USAGE
    results = verify.run_all(names, full=args.full, corrupt=args.corrupt)
    passed = all(r.passed for r in results)
    report = {
        "passed": passed,
        "full": args.full,
        "suites": [r.to_dict() for r in results],
    }
    text = json.dumps(report, indent=2)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    for r in results:
        status = "pass" if r.passed else "FAIL"
        print(f"[{status}] {r.name} ({len(r.checks)} checks)", file=sys.stderr)
    return EXIT_OK if passed else EXIT_VERIFY


# ----------------------------------------------------------------------
# argument plumbing


def _load_config(path):
    out = {}
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"config line without '=': {line!r}")
        key, val = line.split("=", 1)
        out[key.strip().replace("-", "_")] = val.strip()
    return out


_CONFIG_TYPES = {
    "grid": int, "n": str, "k": str, "i": int, "l": int, "dim": int,
    "R": float, "R1": float, "R2": float, "a": float, "h": float,
    "alpha": float, "p": str, "kmax": int, "tol": float,
    "sqrt_lambda_max": float, "nmax_sq": int, "lengths": str, "box": str,
    "bc": str, "family": str, "domain": str, "out": str, "preset": str,
    "nvec": str,
}


def _apply_config(parser, subparsers, argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    raw = _load_config(known.config)
    typed = {}
    for key, val in raw.items():
        if key not in _CONFIG_TYPES:
            raise ValueError(f"unknown config key {key!r}")
        typed[key] = _CONFIG_TYPES[key](val)
    # subparsers re-apply their own defaults over the parent namespace, so
    # the config has to land on each of them
    parser.set_defaults(**typed)
    for sp in subparsers.values():
        known_dests = {a.dest for a in sp._actions}
        sp.set_defaults(**{k: v for k, v in typed.items() if k in known_dests})


def build_parser():
    p = argparse.ArgumentParser(
        prog="modeloc",
        description="Laplacian eigenmodes in separable domains and their "
        "localization diagnostics",
    )
    sub = p.add_subparsers(dest="command", required=True)
    registry = {}

    def common(sp):
        sp.add_argument("--config", help="key=value config file; flags win")
        sp.add_argument("--out", required=True, help="output path")
        sp.add_argument("--bc", default="dirichlet",
                        choices=["dirichlet", "neumann", "robin"])
        sp.add_argument("--h", type=float, default=0.0, help="robin coupling")
        sp.add_argument("--kmax", type=int, default=mathieu.DEFAULT_KMAX,
                        help="Mathieu truncation size")
        sp.add_argument("--tol", type=float, default=1e-8,
                        help="quadrature tolerance override")

    sp = registry["zeros"] = sub.add_parser("zeros", help="Bessel zero tables")
    common(sp)
    sp.add_argument("--family", default="cylindrical",
                    choices=["cylindrical", "spherical"])
    sp.add_argument("--n", default="0:2")
    sp.add_argument("--k", default="1:3")
    sp.set_defaults(func=cmd_zeros)

    sp = registry["mode-grid"] = sub.add_parser(
        "mode-grid", help="eigenfunction values on a grid")
    common(sp)
    sp.add_argument("--preset", choices=list(MODE_GRID_PRESETS))
    sp.add_argument("--domain", default="disk",
                    choices=["disk", "ball", "ellipse", "annulus", "rectangle"])
    sp.add_argument("--R", type=float, default=1.0)
    sp.add_argument("--R1", type=float, default=0.5)
    sp.add_argument("--R2", type=float, default=1.0)
    sp.add_argument("--a", type=float, default=1.0, help="focal distance")
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--i", type=int, default=1)
    sp.add_argument("--l", type=int, default=0)
    sp.add_argument("--lengths", default="1.0,1.4142135623730951")
    sp.add_argument("--nvec", default="1,1")
    sp.add_argument("--grid", type=int, default=64)
    sp.set_defaults(func=cmd_mode_grid)

    sp = registry["ratio-sweep"] = sub.add_parser(
        "ratio-sweep", help="localization ratio sweeps")
    common(sp)
    sp.add_argument("kind", nargs="?",
                    choices=["whispering", "ball", "focusing", "bouncing",
                             "rectangle"])
    sp.add_argument("--preset", choices=list(RATIO_PRESETS))
    sp.add_argument("--domain", default="ellipse",
                    choices=["ellipse", "annulus"])
    sp.add_argument("--R", type=float, default=1.0,
                    help="disk radius / inner fraction for focusing")
    sp.add_argument("--R1", type=float, default=0.5)
    sp.add_argument("--R2", type=float, default=1.0)
    sp.add_argument("--a", type=float, default=1.0)
    sp.add_argument("--n", default=None)
    sp.add_argument("--k", default=None)
    sp.add_argument("--i", type=int, default=1)
    sp.add_argument("--dim", type=int, default=2, choices=[2, 3])
    sp.add_argument("--p", default=None)
    sp.add_argument("--alpha", type=float, default=math.pi / 4.0)
    sp.add_argument("--sqrt-lambda-max", type=float, default=40.0,
                    dest="sqrt_lambda_max")
    sp.add_argument("--lengths", default="1.0,1.4142135623730951")
    sp.add_argument("--box", default="0.2:0.4,0.3:0.6")
    sp.add_argument("--nmax-sq", type=int, default=400, dest="nmax_sq")
    sp.set_defaults(func=cmd_ratio_sweep)

    sp = registry["verify"] = sub.add_parser(
        "verify", help="run the verification suites")
    sp.add_argument("--config", help="key=value config file; flags win")
    sp.add_argument("--out", help="JSON report path (stdout if omitted)")
    sp.add_argument("--suite", action="append",
                    help="restrict to named suites (repeatable)")
    sp.add_argument("--full", action="store_true",
                    help="acceptance-strength parameter grids")
    sp.add_argument("--corrupt", action="store_true",
                    help="deliberately corrupt one zero (self-test hook)")
    sp.set_defaults(func=cmd_verify)
    return p, registry


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, registry = build_parser()
    try:
        _apply_config(parser, registry, argv)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    args = parser.parse_args(argv)
    if getattr(args, "tol", None):
        from . import quadrature

        quadrature.set_default_tol(args.tol)
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ModelocError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
