# src/lp_operator/sweep.py
"""절단 수준별 ‖Tf‖_p/‖f‖_p 스윕 (균일 L^p 유계성의 경험적 대리 지표)"""

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from common import ArgumentError, ConfigurationError, DataError, SampledField, parallel_map, scaled
from evaluation.report import EstimateReport
from flag2d import FlagKernelSpec
from decomposition import CutoffPhi
from .apply import apply_multiplier, lattice_multiplier, prepare_multiplier
from .torus import TestFunctionFamily, TorusGrid, lp_norm, sample_test_function, plane_wave

DEFAULT_P_VALUES = (4.0 / 3.0, 2.0, 4.0)
PLATEAU_TOL = 0.05
PLANCHEREL_TOL = 1e-6
MIN_LEVELS = 3


@dataclass
class LpSweepResult:
    """ratios[p, f, level]; 마지막 f 는 |m| 최대 주파수의 평면파"""
    p_values: list
    levels: list
    ratios: np.ndarray
    sup_ratio_per_p: np.ndarray
    sup_m: list = field(default_factory=list)
    function_labels: list = field(default_factory=list)

    def plateau_growth(self) -> list[float]:
        """p 별 마지막 두 수준 사이 sup 비율 상대 증가"""
        out = []
        for row in self.sup_ratio_per_p:
            prev, last = float(row[-2]), float(row[-1])
            out.append((last - prev) / prev if prev > 0 else 0.0)
        return out

    def to_report(self) -> EstimateReport:
        report = EstimateReport(suite="lp_sweep")
        for p, growth, row in zip(self.p_values, self.plateau_growth(), self.sup_ratio_per_p):
            report.check(
                f"p={p:.4g} plateau growth",
                growth,
                scaled(PLATEAU_TOL),
                expected=f"sup ratio growth ≤ {PLATEAU_TOL:.0%} over the last two levels",
                message=f"sup ratios: {', '.join(f'{v:.6g}' for v in row)}",
            )
            report.series[f"plateau_p{p:.4g}"] = {
                "p": [p] * len(self.levels),
                "level": list(map(float, self.levels)),
                "sup_ratio": list(map(float, row)),
                "sup_abs_m": list(map(float, self.sup_m)),
            }
        if 2.0 in self.p_values:
            row = self.sup_ratio_per_p[self.p_values.index(2.0)]
            gap = max(abs(float(r) - s) for r, s in zip(row, self.sup_m))
            report.check(
                "p=2 sup ratio vs sup|m|",
                gap,
                PLANCHEREL_TOL * max(1.0, max(self.sup_m)),
                expected="Plancherel: equal within 1e-6",
            )
        for i, level in enumerate(self.levels):
            report.fitted[f"sup_m_level{level}"] = self.sup_m[i]
        return report


def truncation_ladder(spec: FlagKernelSpec) -> Callable[[int], FlagKernelSpec]:
    """수준 j → m_max, n_max 를 j 만큼 늘린 명세"""
    m_min, m_max, n_min, n_max = spec.dyadic_range

    def at(level: int) -> FlagKernelSpec:
        return spec.with_(dyadic_range=(m_min, m_max + level, n_min, n_max + level))

    return at


def lattice_builder(spec: FlagKernelSpec, grid: TorusGrid = None, part: str = "full", phi: CutoffPhi = None) -> Callable[[int], SampledField]:
    """수준 → 해당 절단의 torus multiplier"""
    ladder = truncation_ladder(spec)
    return lambda level: lattice_multiplier(ladder(level), grid, part, phi)


def _extremal_plane_wave(m: SampledField, grid: TorusGrid) -> SampledField:
    i, j = np.unravel_index(int(np.argmax(np.abs(m.values))), m.values.shape)
    return plane_wave(grid, grid.frequencies[i], grid.frequencies[j])


def lp_sweep(
    m_builder: Callable[[int], SampledField],
    family: TestFunctionFamily,
    p_values: Sequence[float] = DEFAULT_P_VALUES,
    levels: Sequence[int] = (0, 1, 2),
    grid: TorusGrid = None,
) -> LpSweepResult:
    """각 (p, 시험 함수, 수준) 의 ‖Tf‖_p/‖f‖_p

    Raises:
        ArgumentError: p ∉ (1, ∞)
        ConfigurationError: 수준이 3개 미만
        DataError: 비유한 비율 (key = (p, 함수, 수준))
    """
    p_values = [float(p) for p in p_values]
    levels = list(levels)
    if not p_values or any(not (1.0 < p < math.inf) for p in p_values):
        raise ArgumentError(f"p values must lie in (1, ∞), got {p_values}")
    if len(levels) < MIN_LEVELS:
        raise ConfigurationError(f"lp_sweep needs ≥ {MIN_LEVELS} truncation levels")
    grid = grid or TorusGrid()

    print(f"🧮 [Operator] L^p 스윕: p={p_values}, {family.count}개 {family.family.value}, 수준 {levels}")
    multipliers = [prepare_multiplier(m_builder(level), grid) for level in levels]
    sup_m = [m.sup_abs() for m in multipliers]
    waves = [_extremal_plane_wave(m, grid) for m in multipliers]

    n_f = family.count + 1
    ratios = np.zeros((len(p_values), n_f, len(levels)))
    labels = [f"{family.family.value}[{i}]" for i in range(family.count)] + ["extremal-plane-wave"]

    def row(f: SampledField, idx: int, only_level: int = None) -> list:
        out = []
        for li, m in enumerate(multipliers):
            if only_level is not None and li != only_level:
                continue
            tf = apply_multiplier(m, f)
            for pi, p in enumerate(p_values):
                r = lp_norm(tf, p) / lp_norm(f, p)
                if not math.isfinite(r):
                    raise DataError("non-finite L^p ratio", key=(p, labels[idx], levels[li]))
                out.append((pi, li, r))
        return out

    rows = parallel_map(lambda i: row(sample_test_function(family, i, grid), i), range(family.count), desc="L^p sweep")
    for idx, entries in enumerate(rows):
        for pi, li, r in entries:
            ratios[pi, idx, li] = r
    for li, wave in enumerate(waves):
        for pi, _, r in row(wave, n_f - 1, only_level=li):
            ratios[pi, n_f - 1, li] = r

    sup_ratio = ratios.max(axis=1)
    for p, s in zip(p_values, sup_ratio):
        print(f"✅ [Operator] p={p:.4g}: sup 비율 {', '.join(f'{v:.5g}' for v in s)}")
    return LpSweepResult(
        p_values=p_values,
        levels=levels,
        ratios=ratios,
        sup_ratio_per_p=sup_ratio,
        sup_m=sup_m,
        function_labels=labels,
    )
