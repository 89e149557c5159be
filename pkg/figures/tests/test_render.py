"""Renderer tests, driving the primary toolkit only through its CLI.

The session fixture shells out to ``polarix`` to produce every preset CSV,
exactly as a user would; the renderer then validates and draws them.
"""

import subprocess
import sys

import numpy as np
import pytest

from polarix_figures import (SCHEMAS, FigureJob, SchemaMismatchError,
                             load_table, render)
from polarix_figures.cli import run

SWEEP_PRESETS = ("fig3a", "fig3b", "fig3c", "figS2", "figS4", "figS5",
                 "figS6", "figS7", "figS8")

#: figure id -> the polarix subcommand that produces its CSV
PRODUCERS = {
    "fig2c": ["poincare", "--preset", "fig2c"],
    "fig2d": ["poincare", "--preset", "fig2d"],
    "figS1": ["modes"],
    "figS3": ["drive"],
    **{p: ["sweep", p] for p in SWEEP_PRESETS},
}


def check(name: str, ok: bool, detail: str = "") -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}" + (f"  ({detail})" if detail else ""))
    assert ok, f"{name}: {detail}"


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("polarix-data")
    for figure_id, argv in PRODUCERS.items():
        cmd = [sys.executable, "-m", "polarix", *argv, "--out", str(out),
               "--format", "csv"]
        proc = subprocess.run(cmd, capture_output=True, text=True)
        assert proc.returncode == 0, f"{figure_id}: {proc.stderr}"
    return out


def test_every_sweep_preset_validates_and_renders(data_dir, tmp_path):
    failures = []
    for preset in SWEEP_PRESETS:
        csv_path = data_dir / f"{preset}.csv"
        try:
            load_table(preset, csv_path)
            render(FigureJob(figure_id=preset, input_csv=str(csv_path),
                             output_path=str(tmp_path / f"{preset}.png"),
                             deterministic=True))
        except SchemaMismatchError as exc:
            failures.append(f"{preset}: {exc}")
            continue
        if not (tmp_path / f"{preset}.png").stat().st_size:
            failures.append(f"{preset}: empty image")
    check("every sweep preset CSV validates and renders",
          not failures, "; ".join(failures))


def test_every_figure_id_round_trips(data_dir, tmp_path):
    for figure_id in SCHEMAS:
        report = render(FigureJob(figure_id=figure_id,
                                  input_csv=str(data_dir / f"{figure_id}.csv"),
                                  output_path=str(tmp_path / f"{figure_id}.png")))
        assert report.series or report.heatmaps, figure_id


def test_fig2c_three_series_with_reference_extrema(data_dir, tmp_path):
    report = render(FigureJob(figure_id="fig2c",
                              input_csv=str(data_dir / "fig2c.csv"),
                              output_path=str(tmp_path / "fig2c.png")))
    check("fig2c renders exactly three series", len(report.series) == 3,
          f"series: {sorted(report.series)}")
    theta, s1 = report.series["s1"]
    _, s2 = report.series["s2"]
    nodes = {name: int(round(val / (theta[1] - theta[0])))
             for name, val in (("zero", 0.0), ("eighth", np.pi / 8),
                               ("quarter", np.pi / 4))}
    ok = (int(np.argmax(s1)) == nodes["zero"]
          and int(np.argmax(s2)) == nodes["eighth"]
          and int(np.argmin(s1)) == nodes["quarter"])
    check("fig2c extrema sit on the theta = 0, pi/8, pi/4 grid nodes", ok,
          f"argmax s1={np.argmax(s1)}, argmax s2={np.argmax(s2)}, "
          f"argmin s1={np.argmin(s1)}")


def test_schema_mismatch_is_hard_error(data_dir, tmp_path):
    with pytest.raises(SchemaMismatchError, match="missing columns"):
        load_table("fig3a", data_dir / "fig3b.csv")
    code = run(["--figure", "fig3a", "--in", str(data_dir / "fig3b.csv"),
                "--out", str(tmp_path / "x.png")])
    assert code == 2


def test_empty_grid_rejected(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("theta,s1,s2,s3,preset\n")
    with pytest.raises(SchemaMismatchError, match="empty grid"):
        load_table("fig2c", empty)
    assert run(["--figure", "fig2c", "--in", str(empty),
                "--out", str(tmp_path / "x.png")]) == 2


def test_unknown_figure_id(tmp_path):
    assert run(["--figure", "fig9z", "--in", "nope.csv",
                "--out", str(tmp_path / "x.png")]) == 2


def test_deterministic_rerun_is_byte_identical(data_dir, tmp_path):
    paths = [tmp_path / f"s2-{i}.png" for i in (1, 2)]
    for path in paths:
        assert run(["--figure", "figS2", "--in", str(data_dir / "figS2.csv"),
                    "--out", str(path), "--deterministic"]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_cli_entry_point(data_dir, tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "polarix_figures", "--figure", "fig2d",
         "--in", str(data_dir / "fig2d.csv"),
         "--out", str(tmp_path / "fig2d.png")],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "fig2d.png").stat().st_size > 0
