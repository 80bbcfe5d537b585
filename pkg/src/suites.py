# src/suites.py
"""검사 스위트 실행기

설정(ExperimentConfig)에서 커널/격자 객체를 만들고
스위트 이름마다 EstimateReport 를 돌려주는 함수를 하나씩 둔다.
분해 결과는 여러 스위트가 공유하므로 한 번만 계산한다.
"""

from functools import cached_property
from typing import Callable

import numpy as np

from common import ArgumentError
from decomposition import (
    EXTENSION_OCTAVES,
    CutoffPhi,
    ParabolicGrid,
    asymptotic_relation_check,
    burst_grid,
    decomposition_report,
    default_delta_values,
    default_overlap_grid,
    dyadic_extension_check,
    extract_decomposition,
    flag_multiplier_check,
    flat_flag_field,
    inverse_direction_check,
    mikhlin_check,
    phase_fit_invariance_check,
    theoretical_c_prime,
)
from evaluation import EstimateReport
from flag2d import (
    Flag,
    FlagKernelSpec,
    check_flag_inequalities,
    m_eta_family_check,
    pairing_convergence_check,
    shear_invariance_check,
)
from kernels1d import BumpSpec, Kernel1D, KernelFamily, Profile, default_delta_grid, dilation_family_check
from lp_operator import TestFunctionFamily, TorusGrid, lattice_builder, lp_sweep
from oscillatory import (
    ab_decay_check,
    ab_leading_order_check,
    default_decay_family,
    default_phase_grid,
    dyadic_ladder,
    oracle_equivalence_check,
    uniform_bound_sweep,
)
from schemas import ExperimentConfig, Suite

AB_EPSILON = 2.0**-16
DILATION_EXPONENTS = (1, 2)
M_ETA_EXPONENTS = range(-8, 1)
EXTENSION_ORDERS = ((0, 0), (1, 0), (0, 1))


def _bumps(profile: str) -> tuple:
    b = BumpSpec(Profile(profile), cancellative=True)
    return (b, b)


class SuiteContext:
    """설정 → 커널 명세, 격자, Φ (필요할 때 만들어 캐시)"""

    def __init__(self, config: ExperimentConfig):
        self.config = config

    @cached_property
    def kernel_spec(self) -> FlagKernelSpec:
        k = self.config.kernel
        return FlagKernelSpec(
            bumps=_bumps(k.bump_profile),
            dyadic_range=tuple(k.dyadic_range),
            flag=Flag(k.flag),
            curvature_c0=k.curvature_c0,
        )

    @cached_property
    def decomposition_spec(self) -> FlagKernelSpec:
        """분해용: m_max 만 parabolic_grid.m_max 로 바꾼 커널"""
        m_min, _, n_min, n_max = self.kernel_spec.dyadic_range
        m_max = max(m_min, self.config.parabolic_grid.m_max)
        return self.kernel_spec.with_(dyadic_range=(m_min, m_max, n_min, n_max))

    @cached_property
    def parabolic_grid(self) -> ParabolicGrid:
        pg = self.config.parabolic_grid
        return burst_grid(default_delta_values(*pg.delta_exponents), pg.a_centers, pg.burst_len, pg.ds)

    @cached_property
    def phi(self) -> CutoffPhi:
        return CutoffPhi(self.config.cutoff.slope_c, self.config.cutoff.transition_width)

    @cached_property
    def torus(self) -> TorusGrid:
        return TorusGrid(self.config.space_grid.side, self.config.space_grid.points)

    @cached_property
    def decomposition(self):
        return extract_decomposition(self.decomposition_spec, self.parabolic_grid, self.phi)

    @cached_property
    def extended_decomposition(self):
        """dyadic 범위를 EXTENSION_OCTAVES 만큼 넓힌 커널로 다시 뽑은 분해"""
        return extract_decomposition(self.decomposition_spec.extended(EXTENSION_OCTAVES), self.parabolic_grid, self.phi)

    @property
    def has_decomposition(self) -> bool:
        return "decomposition" in self.__dict__


# ---------------------------------------------------------------------------
# 1차원 커널 / 진동 적분
# ---------------------------------------------------------------------------

def run_uniform_bound(ctx: SuiteContext) -> EstimateReport:
    od = ctx.config.one_dim
    lo, hi = od.ladder_exponents
    return uniform_bound_sweep(
        [Kernel1D(family=KernelFamily(f)) for f in od.families],
        default_phase_grid(od.phase_grid_points, od.phase_span),
        dyadic_ladder(range(lo, hi + 1)),
    )


def run_oracle_equivalence(ctx: SuiteContext) -> EstimateReport:
    od = ctx.config.one_dim
    return oracle_equivalence_check(od.equivalence_cases, ctx.config.seed, od.phase_span, ctx.config.tolerances.oracle_abs_tol)


def run_seminorms(ctx: SuiteContext) -> EstimateReport:
    """확대 지수마다 {δ^α ∂_δ^α k^δ} 族 검사 (임계값 2^{α+1} 배)"""
    report = EstimateReport(suite="seminorms")
    for alpha in DILATION_EXPONENTS:
        report.extend(dilation_family_check(Kernel1D(), alpha, default_delta_grid()), prefix=f"α={alpha}: ")
    return report


def run_ab_leading_order(ctx: SuiteContext) -> EstimateReport:
    od = ctx.config.one_dim
    k = Kernel1D(epsilon=AB_EPSILON, big_n=2.0**od.ab_big_n_exponent)
    return ab_leading_order_check(k, points=od.ab_points)


def run_ab_decay(ctx: SuiteContext) -> EstimateReport:
    return ab_decay_check(default_decay_family())


# ---------------------------------------------------------------------------
# 평탄 flag 커널
# ---------------------------------------------------------------------------

def run_flag_inequalities(ctx: SuiteContext) -> EstimateReport:
    return check_flag_inequalities(ctx.kernel_spec.with_(curvature_c0=0.0))


def run_shear_invariance(ctx: SuiteContext) -> EstimateReport:
    spec = ctx.kernel_spec.with_(flag=Flag.F2, curvature_c0=0.0)
    return shear_invariance_check(spec, ctx.config.kernel.curvature_c0)


def run_m_eta_family(ctx: SuiteContext) -> EstimateReport:
    return m_eta_family_check(ctx.kernel_spec, 1, 2.0 ** np.array(M_ETA_EXPONENTS, dtype=float))


def run_flag_pairing(ctx: SuiteContext) -> EstimateReport:
    return pairing_convergence_check(ctx.kernel_spec.with_(curvature_c0=0.0))


# ---------------------------------------------------------------------------
# 휜 커널 분해
# ---------------------------------------------------------------------------

def run_decomposition(ctx: SuiteContext) -> EstimateReport:
    return decomposition_report(ctx.decomposition)


def run_phase_invariance(ctx: SuiteContext) -> EstimateReport:
    return phase_fit_invariance_check(ctx.decomposition_spec, ctx.parabolic_grid, ctx.phi)


def run_flag_multiplier(ctx: SuiteContext) -> EstimateReport:
    result = ctx.decomposition
    report = EstimateReport(suite="flag_multiplier")
    report.extend(flag_multiplier_check(result.l1), prefix="L1: ")
    report.extend(flag_multiplier_check(result.l2), prefix="L2: ")
    report.extend(dyadic_extension_check(result, ctx.extended_decomposition, EXTENSION_ORDERS))
    return report


def run_mikhlin(ctx: SuiteContext) -> EstimateReport:
    return mikhlin_check(ctx.kernel_spec, overlap_grid=default_overlap_grid(ctx.phi.slope_c))


def run_asymptotic_relation(ctx: SuiteContext) -> EstimateReport:
    return asymptotic_relation_check(ctx.decomposition, r_max=1)


def run_inverse_direction(ctx: SuiteContext) -> EstimateReport:
    """두 bump 프로파일로 만든 평탄 ℓ 각각에 대해"""
    c0 = ctx.config.kernel.curvature_c0
    if c0 == 0:
        raise ArgumentError("inverse direction needs a curved kernel (c₀ ≠ 0)")
    fg = ctx.config.frequency_grid
    report = EstimateReport(suite="inverse_direction")
    for profile in Profile:
        flat = FlagKernelSpec(bumps=_bumps(profile.value), dyadic_range=tuple(fg.dyadic_range))
        ell = flat_flag_field(flat, fg.points, fg.d_freq)
        sub = inverse_direction_check(ell, ctx.phi, c_prime=theoretical_c_prime(c0))
        report.extend(sub, prefix=f"{profile.value}: ")
    return report


# ---------------------------------------------------------------------------
# L^p 연산자
# ---------------------------------------------------------------------------

def run_lp_sweep(ctx: SuiteContext) -> EstimateReport:
    op = ctx.config.operator
    base = ctx.kernel_spec.with_(dyadic_range=tuple(op.dyadic_range))
    builder = lattice_builder(base, ctx.torus, op.multiplier_part, ctx.phi)
    family = TestFunctionFamily(op.family, op.count, ctx.config.seed)
    result = lp_sweep(builder, family, op.p_values, op.levels, ctx.torus)
    return result.to_report()


SUITE_RUNNERS: dict[Suite, Callable[[SuiteContext], EstimateReport]] = {
    Suite.UNIFORM_BOUND: run_uniform_bound,
    Suite.ORACLE_EQUIVALENCE: run_oracle_equivalence,
    Suite.SEMINORMS: run_seminorms,
    Suite.AB_LEADING_ORDER: run_ab_leading_order,
    Suite.AB_DECAY: run_ab_decay,
    Suite.FLAG_INEQUALITIES: run_flag_inequalities,
    Suite.SHEAR_INVARIANCE: run_shear_invariance,
    Suite.M_ETA_FAMILY: run_m_eta_family,
    Suite.FLAG_PAIRING: run_flag_pairing,
    Suite.DECOMPOSITION: run_decomposition,
    Suite.PHASE_INVARIANCE: run_phase_invariance,
    Suite.FLAG_MULTIPLIER: run_flag_multiplier,
    Suite.MIKHLIN: run_mikhlin,
    Suite.ASYMPTOTIC_RELATION: run_asymptotic_relation,
    Suite.INVERSE_DIRECTION: run_inverse_direction,
    Suite.LP_SWEEP: run_lp_sweep,
}


def run_suite(suite: Suite, ctx: SuiteContext) -> EstimateReport:
    """리포트의 suite 이름은 설정의 스위트 이름으로 맞춘다"""
    suite = Suite(suite)
    report = SUITE_RUNNERS[suite](ctx)
    report.suite = suite.value
    return report
