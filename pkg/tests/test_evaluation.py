import json
import math

import numpy as np
import pandas as pd
import pytest

from common import ArgumentError, SampledField
from evaluation import (
    EstimateReport,
    PLOT_KINDS,
    export_plot_data,
    load_field,
    plot_frame,
    read_grid_file,
    save_field,
    write_grid_file,
)
from lp_operator import LpSweepResult


@pytest.fixture
def field():
    a = np.array([8.0, 9.0, 10.0])
    d = np.array([2.0**-10, 2.0**-9])
    values = np.array([[1 + 2j, 3 - 1j], [0.5j, -2.0], [1e-300, np.pi]])
    return SampledField(a, d, values, axis_tags=("parabolic-a", "parabolic-delta"), quad_weight="none", names=("a", "delta"))


def test_grid_file_round_trip(tmp_path, field):
    path = write_grid_file(field, tmp_path / "m.cfmg")
    back = read_grid_file(path)
    assert np.array_equal(back.values, field.values)
    assert np.array_equal(back.axis_x, field.axis_x)
    assert back.axis_tags == field.axis_tags
    assert back.quad_weight == "none"
    assert back.names == ("a", "delta")
    assert path.stat().st_size == 64 + 8 * 5 + 16 * 6
    # 같은 입력 → 같은 바이트
    again = write_grid_file(back, tmp_path / "again.cfmg")
    assert again.read_bytes() == path.read_bytes()


def test_grid_file_rejects_bad_input(tmp_path, field):
    bad = tmp_path / "bad.cfmg"
    bad.write_bytes(b"XXXX" + bytes(60))
    with pytest.raises(ArgumentError, match="magic"):
        read_grid_file(bad)

    short = tmp_path / "short.cfmg"
    short.write_bytes(b"CFMG")
    with pytest.raises(ArgumentError):
        read_grid_file(short)

    truncated = tmp_path / "cut.cfmg"
    truncated.write_bytes(write_grid_file(field, tmp_path / "ok.cfmg").read_bytes()[:-16])
    with pytest.raises(ArgumentError):
        read_grid_file(truncated)

    with pytest.raises(ArgumentError):
        load_field(tmp_path / "missing.cfmg")


def test_csv_round_trip(tmp_path, field):
    path = save_field(field, tmp_path / "m.csv")
    df = pd.read_csv(path)
    assert list(df.columns) == ["x", "y", "re", "im"]
    assert len(df) == 6
    back = load_field(path)
    assert np.allclose(back.values, field.values, rtol=0, atol=0)


def test_report_check_and_note():
    r = EstimateReport(suite="demo")
    assert r.check("ok", 0.5, 1.0).passed
    assert not r.check("too big", 2.0, 1.0).passed
    assert not r.check("nan", float("nan"), 1.0).passed
    assert r.note("sup", 12.0).passed
    assert not r.note("inf", math.inf).passed
    assert r.pass_count == 2 and r.total_count == 5
    assert not r.all_passed
    assert r.by_name("sup").expected == "finite"
    with pytest.raises(KeyError):
        r.by_name("nope")


def test_report_extend_and_json_nulls():
    inner = EstimateReport(suite="inner", fitted={"c": 1.5, "bad": float("inf")}, series={"s": {"x": [1.0, float("nan")]}})
    inner.check("x", 0.1, 1.0)
    outer = EstimateReport(suite="outer")
    outer.extend(inner, prefix="L1: ")
    d = outer.to_dict()
    assert d["records"][0]["name"] == "L1: x"
    assert d["fitted"] == {"L1: bad": None, "L1: c": 1.5}
    assert d["series"]["L1: s"]["x"] == [1.0, None]
    json.dumps(d, allow_nan=False)


def test_heatmap_rows(field):
    df = plot_frame(field, "multiplier-heatmap")
    assert list(df.columns) == ["a[1]", "delta[1]", "abs[1]", "re[1]", "im[1]"]
    assert len(df) == 6
    assert df["abs[1]"].iloc[0] == pytest.approx(abs(1 + 2j))


def test_heatmap_row_count_on_square_grid():
    n = 2**3
    ax = np.arange(n, dtype=float)
    df = plot_frame(SampledField(ax, ax, np.ones((n, n))), "multiplier-heatmap")
    assert len(df) == 2 ** (2 * 3)


def test_decay_slope_needs_parabolic_axes(field):
    df = plot_frame(field, "decay-slope")
    assert list(df.columns) == ["delta[1]", "log1p_a[1]", "log_abs_da[1]"]
    assert len(df) == 6
    with pytest.raises(ArgumentError):
        plot_frame(SampledField([0.0, 1.0], [0.0, 1.0], np.ones((2, 2))), "decay-slope")


def test_lp_plateau_from_result_and_report():
    result = LpSweepResult(
        p_values=[2.0, 4.0],
        levels=[0, 1, 2],
        ratios=np.zeros((2, 1, 3)),
        sup_ratio_per_p=np.array([[1.0, 1.1, 1.12], [2.0, 2.1, 2.11]]),
        sup_m=[1.0, 1.1, 1.12],
    )
    df = plot_frame(result, "lp-plateau")
    assert len(df) == 6
    assert df["sup_ratio[1]"].tolist()[:3] == [1.0, 1.1, 1.12]

    report = {"suites": [result.to_report().to_dict()]}
    from_json = plot_frame(report, "lp-plateau")
    assert from_json.to_dict("list") == df.to_dict("list")


def test_phase_fit_from_report_without_series():
    with pytest.raises(ArgumentError):
        plot_frame({"suites": [{"suite": "x", "series": {}}]}, "phase-fit")


def test_unknown_kind(field, tmp_path):
    assert "phase-fit" in PLOT_KINDS
    with pytest.raises(ArgumentError, match="unknown plot kind"):
        export_plot_data(field, "scatter", tmp_path / "x.tsv")


def test_export_writes_tsv(field, tmp_path):
    path = export_plot_data(field, "multiplier-heatmap", tmp_path / "out" / "heat.tsv")
    lines = path.read_text().splitlines()
    assert lines[0].split("\t") == ["a[1]", "delta[1]", "abs[1]", "re[1]", "im[1]"]
    assert len(lines) == 7
