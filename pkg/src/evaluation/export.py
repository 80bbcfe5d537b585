# src/evaluation/export.py
"""그래프용 열 데이터 (TSV) 내보내기

그림은 그리지 않는다. 첫 줄은 `열이름[단위]` 헤더, 행 순서는 결정적.
"""

from pathlib import Path

import numpy as np
import pandas as pd

from common import ArgumentError, SampledField

PLOT_KINDS = ("multiplier-heatmap", "decay-slope", "phase-fit", "lp-plateau")


def _heatmap(field: SampledField) -> pd.DataFrame:
    if not isinstance(field, SampledField):
        raise ArgumentError("multiplier-heatmap needs a sampled field")
    X, Y = np.meshgrid(field.axis_x, field.axis_y, indexing="ij")
    v = field.values
    nx, ny = field.names
    return pd.DataFrame({
        f"{nx}[1]": X.ravel(),
        f"{ny}[1]": Y.ravel(),
        "abs[1]": np.abs(v).ravel(),
        "re[1]": v.real.ravel(),
        "im[1]": v.imag.ravel(),
    })


def _decay_slope(field: SampledField) -> pd.DataFrame:
    """(a, δ) 위 L 에서 δ 별 (log(1+a), log|∂_a L|)"""
    if not isinstance(field, SampledField) or field.axis_tags != ("parabolic-a", "parabolic-delta"):
        raise ArgumentError("decay-slope needs a field on parabolic (a, δ) axes")
    if field.axis_x.size < 2:
        raise ArgumentError("decay-slope needs at least two a samples")
    da = np.gradient(field.values, field.axis_x, axis=0)
    rows = []
    keep = field.axis_x > 0
    for j, delta in enumerate(field.axis_y):
        with np.errstate(divide="ignore"):
            log_d = np.log(np.abs(da[keep, j]))
        for a, ld in zip(field.axis_x[keep], log_d):
            rows.append((delta, np.log1p(a), ld))
    return pd.DataFrame(rows, columns=["delta[1]", "log1p_a[1]", "log_abs_da[1]"])


def _report_series(report: dict, match) -> list[tuple]:
    """읽어 들인 report JSON 에서 (이름, 열 dict) 목록 (이름순)"""
    suites = report.get("suites", [report])
    found = []
    for suite in suites:
        for name, cols in sorted(suite.get("series", {}).items()):
            if match(name):
                found.append((name, cols))
    return found


def _phase_fit(source) -> pd.DataFrame:
    """(ξ²/η, 풀린 위상, 적합 잔차); DecompositionResult, PhaseFit 또는 report JSON"""
    if isinstance(source, dict):
        found = _report_series(source, lambda n: n.endswith("phase_fit"))
        if not found:
            raise ArgumentError("report holds no phase-fit series")
        cols = found[0][1]
        return pd.DataFrame({
            "s_xi2_over_eta[1]": cols["s"],
            "phase[rad]": cols["phase"],
            "residual[rad]": cols["residual"],
            "burst[1]": cols["burst"],
        })
    fit = getattr(source, "phase_fit", source)
    if fit is None or not hasattr(fit, "point_bursts"):
        raise ArgumentError("phase-fit needs a phase regression result")
    s = np.asarray(fit.s_values, dtype=float)
    ph = np.asarray(fit.phases, dtype=float)
    b = np.asarray(fit.point_bursts, dtype=int)
    intercepts = np.asarray(fit.intercepts, dtype=float)
    residual = ph - (fit.c_prime * s + intercepts[b]) if s.size else ph
    return pd.DataFrame({
        "s_xi2_over_eta[1]": s,
        "phase[rad]": ph,
        "residual[rad]": residual,
        "burst[1]": b,
    })


def _lp_plateau(result) -> pd.DataFrame:
    if isinstance(result, dict):
        found = _report_series(result, lambda n: n.startswith("plateau_p"))
        if not found:
            raise ArgumentError("report holds no L^p plateau series")
        frames = [
            pd.DataFrame({
                "p[1]": cols["p"],
                "level[octave]": cols["level"],
                "sup_ratio[1]": cols["sup_ratio"],
                "sup_abs_m[1]": cols["sup_abs_m"],
            })
            for _, cols in found
        ]
        return pd.concat(frames, ignore_index=True).sort_values(["p[1]", "level[octave]"], kind="stable").reset_index(drop=True)
    if not hasattr(result, "sup_ratio_per_p"):
        raise ArgumentError("lp-plateau needs an L^p sweep result")
    rows = []
    for pi, p in enumerate(result.p_values):
        for li, level in enumerate(result.levels):
            rows.append((p, level, float(result.sup_ratio_per_p[pi][li]), float(result.sup_m[li])))
    return pd.DataFrame(rows, columns=["p[1]", "level[octave]", "sup_ratio[1]", "sup_abs_m[1]"])


_BUILDERS = {
    "multiplier-heatmap": _heatmap,
    "decay-slope": _decay_slope,
    "phase-fit": _phase_fit,
    "lp-plateau": _lp_plateau,
}


def plot_frame(source, kind: str) -> pd.DataFrame:
    if kind not in _BUILDERS:
        raise ArgumentError(f"unknown plot kind {kind!r}; choose from {', '.join(PLOT_KINDS)}")
    return _BUILDERS[kind](source)


def export_plot_data(source, kind: str, path) -> Path:
    """kind 별 TSV 저장

    Raises:
        ArgumentError: 알 수 없는 kind 또는 kind 에 맞지 않는 source
    """
    df = plot_frame(source, kind)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, sep="\t", index=False, float_format="%.17g")
    print(f"💾 [Export] {kind}: {len(df)}행 → {path}")
    return path
