"""Renderer tests: the CSV inputs come from the modeloc CLI (the producer's
external interface); assertions target file existence and the sidecar axis
metadata, never pixels."""

import csv
import json
import subprocess
import sys

import pytest

from modeloc_figures import SchemaError, render
from modeloc_figures.cli import main as render_main


def run_modeloc(args):
    proc = subprocess.run(
        [sys.executable, "-m", "modeloc.cli"] + args,
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="module")
def data_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("csv")
    run_modeloc(["ratio-sweep", "--preset", "fig4", "--out", str(d),
                 "--sqrt-lambda-max", "8"])
    run_modeloc(["ratio-sweep", "--preset", "fig5", "--out", str(d),
                 "--k", "100", "--p", "1,2,6"])
    run_modeloc(["ratio-sweep", "--preset", "figD1", "--out", str(d)])
    run_modeloc(["mode-grid", "--preset", "fig1", "--grid", "24",
                 "--out", str(d)])
    return d


def test_render_fig4(data_dir, tmp_path):
    out = tmp_path / "fig4.png"
    render("fig4", data_dir, out)
    assert out.exists() and out.stat().st_size > 10_000
    meta = json.loads((tmp_path / "fig4.png.json").read_text())
    assert meta["preset"] == "fig4"
    assert meta["dpi"] == 150
    assert len(meta["panels"]) == 4
    for panel in meta["panels"]:
        assert panel["yscale"] == "log"
        assert panel["ylim"][0] > 0.0
        assert panel["xlim"][1] > panel["xlim"][0]


def test_render_fig4_bound_above_measured_tail(data_dir):
    # the dashed bound line must sit above the measured curve at the end of
    # the sweep in every panel
    for name, n in (("ellipse", 0), ("ellipse", 1), ("annulus", 0),
                    ("annulus", 1)):
        with open(data_dir / f"fig4_{name}_n{n}.csv", newline="") as fh:
            rows = list(csv.DictReader(fh))
        last = rows[-1]
        assert float(last["bound"]) > float(last["ratio"])


def test_render_fig5(data_dir, tmp_path):
    out = tmp_path / "fig5.png"
    render("fig5", data_dir, out)
    assert out.exists() and out.stat().st_size > 10_000
    meta = json.loads((tmp_path / "fig5.png.json").read_text())
    assert len(meta["panels"]) == 2  # one per dimension
    titles = {p["title"] for p in meta["panels"]}
    assert titles == {"2D", "3D"}


def test_render_figd1_and_fig1(data_dir, tmp_path):
    out = tmp_path / "figD1.png"
    render("figD1", data_dir, out)
    assert out.exists() and out.stat().st_size > 10_000
    out2 = tmp_path / "fig1.png"
    render("fig1", data_dir, out2)
    assert out2.exists() and out2.stat().st_size > 10_000
    meta = json.loads((tmp_path / "fig1.png.json").read_text())
    assert len(meta["panels"]) == 6


def test_schema_mismatch_reports_column(tmp_path):
    bad = tmp_path / "fig5_focusing.csv"
    bad.write_text("dim,k,p,ratio\n2,100,1,0.5\n")
    with pytest.raises(SchemaError) as err:
        render("fig5", tmp_path, tmp_path / "out.png")
    assert err.value.column == "ratio_pow"


def test_empty_csv_is_schema_error(tmp_path):
    (tmp_path / "figD1_asymptotics.csv").write_text("")
    with pytest.raises(SchemaError):
        render("figD1", tmp_path, tmp_path / "out.png")


def test_cli_exit_codes(data_dir, tmp_path):
    assert render_main(["--preset", "fig4", "--in", str(data_dir),
                        "--out", str(tmp_path / "f.png")]) == 0
    empty = tmp_path / "empty"
    empty.mkdir()
    assert render_main(["--preset", "fig4", "--in", str(empty),
                        "--out", str(tmp_path / "g.png")]) == 2
    with pytest.raises(SystemExit):
        render_main(["--preset", "nope", "--in", str(empty),
                     "--out", "x.png"])


def test_renderer_does_not_recompute(data_dir, tmp_path):
    # altering a CSV value must flow straight to the plotted ranges: the
    # renderer is a pure table-to-pixels transform
    src = (data_dir / "figD1_asymptotics.csv").read_text().splitlines()
    hacked = tmp_path / "figD1_asymptotics.csv"
    header, rows = src[0], src[1:]
    cells = rows[0].split(",")
    cells[2] = "1000.0"  # blow up one direct value
    rows[0] = ",".join(cells)
    hacked.write_text("\n".join([header] + rows) + "\n")
    render("figD1", tmp_path, tmp_path / "h.png")
    meta = json.loads((tmp_path / "h.png.json").read_text())
    assert meta["panels"][0]["ylim"][1] > 900.0
