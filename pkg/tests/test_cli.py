import argparse
import json

import numpy as np
import pytest

from common import SampledField, configure
from evaluation import load_field, save_field
from lp_operator import TorusGrid
from run import OUTPUT_ENV, main, resolve_output_dir
from schemas import ExperimentConfig
from suites import SuiteContext, run_mikhlin, run_seminorms

TINY = """\
schema_version: 1
suites: [mikhlin]
kernel:
  dyadic_range: [0, 1, 0, 1]
space_grid:
  side: 16.0
  points: 32
"""


@pytest.fixture(autouse=True)
def _isolated(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv(OUTPUT_ENV, raising=False)
    yield
    configure(threads=1, tolerance_scale=1.0)


@pytest.fixture
def config_path(tmp_path):
    path = tmp_path / "tiny.yaml"
    path.write_text(TINY, encoding="utf-8")
    return str(path)


def test_print_schema(capsys):
    assert main(["verify", "--print-schema"]) == 0
    schema = json.loads(capsys.readouterr().out)
    assert schema["title"] == "ExperimentConfig"


def test_missing_config_is_usage_error(capsys):
    assert main(["synthesize"]) == 2
    assert "no config file" in capsys.readouterr().out


def test_empty_suite_list_is_rejected(tmp_path, capsys):
    path = tmp_path / "bad.yaml"
    path.write_text("schema_version: 1\nsuites: []\n", encoding="utf-8")
    assert main(["--config", str(path), "verify"]) == 2
    assert "suites" in capsys.readouterr().out


def test_bad_tolerance_scale(tmp_path):
    assert main(["--tolerance-scale", "0", "export", "--source", "x.cfmg", "--kind", "multiplier-heatmap"]) == 2


def test_output_dir_precedence(monkeypatch):
    args = argparse.Namespace(out=None)
    assert str(resolve_output_dir(args)) == "outputs"
    monkeypatch.setenv(OUTPUT_ENV, "from_env")
    assert str(resolve_output_dir(args)) == "from_env"
    assert str(resolve_output_dir(argparse.Namespace(out="flag"))) == "flag"


def test_export_missing_source(tmp_path):
    code = main(["--out", str(tmp_path / "o"), "export", "--source", str(tmp_path / "nope.json"), "--kind", "phase-fit"])
    assert code == 2


def test_synthesize_writes_kernel(tmp_path, config_path):
    out = tmp_path / "run"
    assert main(["--config", config_path, "--out", str(out), "synthesize"]) == 0
    kernel = load_field(out / "kernel.cfmg")
    assert kernel.shape == (32, 32)
    assert np.all(np.isfinite(kernel.values))
    assert list((out / "logs").glob("run_*.txt"))


def test_apply_and_export(tmp_path, monkeypatch):
    grid = TorusGrid(side=16.0, points=32)
    freq = grid.frequencies
    m = SampledField(freq, freq, np.full((32, 32), 3.0), names=("xi", "eta"))
    f = grid.field(np.exp(-grid.axis[:, None] ** 2 - grid.axis[None, :] ** 2))
    save_field(m, tmp_path / "m.cfmg")
    save_field(f, tmp_path / "f.cfmg")

    monkeypatch.setenv(OUTPUT_ENV, str(tmp_path / "env_out"))
    assert main(["apply", "--multiplier", str(tmp_path / "m.cfmg"), "--input", str(tmp_path / "f.cfmg")]) == 0
    applied = load_field(tmp_path / "env_out" / "applied.cfmg")
    assert np.allclose(applied.values, 3.0 * f.values, atol=1e-12)

    assert main(["export", "--source", str(tmp_path / "env_out" / "applied.cfmg"), "--kind", "multiplier-heatmap"]) == 0
    lines = (tmp_path / "env_out" / "multiplier-heatmap.tsv").read_text().splitlines()
    assert len(lines) == 1 + 32 * 32


@pytest.mark.slow
def test_verify_writes_report(tmp_path, config_path):
    out = tmp_path / "verify"
    code = main(["--config", config_path, "--out", str(out), "--seed", "5", "verify"])
    report = json.loads((out / "report.json").read_text(encoding="utf-8"))
    assert code == (0 if report["passed"] else 1)
    assert [s["suite"] for s in report["suites"]] == ["mikhlin"]
    assert report["provenance"]["seed"] == 5
    assert report["config"]["seed"] == 5


@pytest.mark.slow
def test_seminorm_suite_runs_two_dilation_exponents():
    ctx = SuiteContext(ExperimentConfig(schema_version=1, suites=["seminorms"]))
    report = run_seminorms(ctx)
    assert report.suite == "seminorms"
    low = report.by_name("α=1: decay α=0 (δ-family order 1)")
    high = report.by_name("α=2: decay α=0 (δ-family order 2)")
    assert high.threshold == pytest.approx(2.0 * low.threshold)


@pytest.mark.slow
def test_mikhlin_suite_checks_the_overlap_band():
    config = ExperimentConfig(schema_version=1, suites=["mikhlin"], kernel={"dyadic_range": (0, 1, 0, 1)})
    report = run_mikhlin(SuiteContext(config))
    band = [r for r in report.records if "overlap band" in r.name]
    assert len(band) == 6
    assert all(np.isfinite(r.measured) for r in band)
