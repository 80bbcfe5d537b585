import math

import numpy as np
import pytest

from common import AliasingError, ArgumentError, ConfigurationError, SampledField
from decomposition import (
    CutoffPhi,
    DecompositionResult,
    ParabolicGrid,
    ParabolicPoint,
    burst_grid,
    decomposition_report,
    default_delta_values,
    default_mikhlin_grid,
    default_overlap_grid,
    dyadic_extension_check,
    extract_decomposition,
    fit_phase_constant,
    flag_multiplier_check,
    flat_flag_field,
    frequency_axis,
    inverse_direction_check,
    mikhlin_check,
    asymptotic_relation_check,
    multiplier_value,
    near_radius,
    nyquist_energy_fraction,
    sheared_kernel,
    theoretical_c_prime,
)
from flag2d import FlagKernelSpec, flat_multiplier

SMALL = FlagKernelSpec(dyadic_range=(-2, 4, 0, 3))


def test_parabolic_point_round_trip():
    p = ParabolicPoint.from_xi_eta(6.0, 4.0)
    assert (p.a, p.delta) == (3.0, 2.0)
    assert (p.xi, p.eta) == (6.0, 4.0)
    with pytest.raises(ArgumentError):
        ParabolicPoint(1.0, 0.0)
    with pytest.raises(ArgumentError):
        ParabolicPoint.from_xi_eta(1.0, -1.0)


def test_cutoff_phi():
    phi = CutoffPhi(slope_c=1.0, transition_width=1.0)
    assert phi.full_from == 2.0
    assert phi.of_a(np.array([0.0, 0.5, 1.0])) == pytest.approx([0.0, 0.0, 0.0])
    assert phi.of_a(np.array([2.0, -3.0, 50.0])) == pytest.approx([1.0, 1.0, 1.0])
    mid = phi.of_a(np.linspace(1.0, 2.0, 21))
    assert np.all(np.diff(mid) >= -1e-15)
    # |ξ| ≥ 2|η|^{1/2} 이면 1, η = 0 도 1
    assert phi(np.array([4.0, 1.0]), np.array([4.0, 0.0])) == pytest.approx([1.0, 1.0])
    assert phi(0.5, 4.0) == pytest.approx(0.0)
    with pytest.raises(ArgumentError):
        CutoffPhi(slope_c=0.0)


def test_burst_grid_layout():
    grid = burst_grid(default_delta_values(-3, -1), a_centers=(8.0, 16.0), burst_len=4, ds=0.25)
    assert grid.delta_values == pytest.approx([0.125, 0.25, 0.5])
    assert grid.a_values.size == 8
    assert list(grid.burst_ids) == [0, 0, 0, 0, 1, 1, 1, 1]
    s = grid.a_values[:4] ** 2
    assert np.diff(s) == pytest.approx([0.25] * 3)
    assert len(grid.points()) == 24

    with pytest.raises(ConfigurationError):
        burst_grid([0.1], burst_len=2)
    with pytest.raises(ConfigurationError):
        burst_grid([0.1], a_centers=(8.0, 8.0))


def test_parabolic_grid_validation():
    with pytest.raises(ArgumentError):
        ParabolicGrid(a_values=[], delta_values=[0.1])
    with pytest.raises(ArgumentError):
        ParabolicGrid(a_values=[1.0, 2.0], delta_values=[-0.1, 0.1])
    with pytest.raises(ArgumentError):
        ParabolicGrid(a_values=[2.0, 1.0], delta_values=[0.1])


def test_fit_phase_constant_recovers_slope():
    c = 1.3
    s, z, ids = [], [], []
    for b, (center, offset) in enumerate([(64.0, 0.4), (256.0, -2.0), (576.0, 1.1)]):
        sb = center + 0.25 * np.arange(6)
        s.append(sb)
        z.append(2.0 * np.exp(1j * (c * sb + offset)))
        ids.append(np.full(6, b))
    fit = fit_phase_constant(np.concatenate(s), np.concatenate(z), np.concatenate(ids))
    assert fit.c_prime == pytest.approx(c, rel=1e-9)
    assert fit.r2 == pytest.approx(1.0)
    assert fit.bursts == 3
    residual = np.asarray(fit.phases) - (fit.c_prime * np.asarray(fit.s_values) + np.asarray(fit.intercepts)[fit.point_bursts])
    assert np.allclose(residual, 0.0, atol=1e-8)


def test_fit_phase_constant_needs_two_bursts():
    s = 64.0 + 0.25 * np.arange(5)
    with pytest.raises(ConfigurationError):
        fit_phase_constant(s, np.exp(1j * s), np.zeros(5))


def test_near_radius_and_c_prime():
    assert near_radius(4.0) == pytest.approx(0.25)
    assert near_radius(-4.0) == pytest.approx(0.25)
    assert theoretical_c_prime(1.0) == pytest.approx(math.pi / 2)
    assert theoretical_c_prime(2.0) * 2.0 == pytest.approx(math.pi / 2)


def test_multiplier_lower_half_plane_is_conjugate():
    curved = SMALL.with_(curvature_c0=1.0)
    upper = multiplier_value(curved, -0.8, 0.6)
    lower = multiplier_value(curved, 0.8, -0.6)
    assert lower == pytest.approx(np.conj(upper))
    with pytest.raises(ArgumentError):
        multiplier_value(curved, 1.0, 0.0)


def test_flat_case_matches_closed_form():
    value = multiplier_value(SMALL, 0.7, 0.3)
    assert value == pytest.approx(complex(flat_multiplier(SMALL, 0.7, 0.3)), rel=1e-3, abs=1e-6)


def test_extract_rejects_bad_setups():
    grid = burst_grid(default_delta_values(-8, -6), a_centers=(8.0, 16.0), burst_len=4)
    with pytest.raises(ArgumentError):
        extract_decomposition(SMALL, grid)
    # 정류점 a/(2c₀δ) 가 커널 지지 밖
    with pytest.raises(ConfigurationError):
        extract_decomposition(SMALL.with_(curvature_c0=1.0), grid)


def _parabolic_field(a, delta, values, evaluator=None):
    return SampledField(
        axis_x=a,
        axis_y=delta,
        values=values,
        axis_tags=("parabolic-a", "parabolic-delta"),
        quad_weight="none",
        names=("a", "delta"),
        evaluator=evaluator,
    )


def test_flag_multiplier_check_on_tabulated_field():
    a = np.linspace(8.0, 48.0, 201)
    delta = 2.0 ** np.arange(-12.0, -3.0)
    values = (1.0 + a[:, None]) ** 1j * np.ones(delta.size)[None, :]
    report = flag_multiplier_check(_parabolic_field(a, delta, values))
    # α = 0 차수만 기울기 항목을 가진다 (δ 방향 도함수는 0)
    assert report.total_count == 9 + 3 * 2
    assert report.fitted["L_sup_00"] == pytest.approx(1.0)
    assert report.fitted["L_a_slope_01"] == pytest.approx(-1.0, abs=0.05)
    assert report.fitted["L_a_slope_02"] == pytest.approx(-2.0, abs=0.1)
    assert report.fitted["L_sup_10"] == pytest.approx(0.0, abs=1e-12)
    for beta in range(3):
        assert report.by_name(f"L (α,β)=(0,{beta}) a-decay slope").passed
        assert report.by_name(f"L (α,β)=(0,{beta}) δ-scaling slope").passed
    assert report.by_name("L (α,β)=(1,1) refinement drift").passed


def test_flag_multiplier_check_rejects_growing_field():
    a = np.linspace(0.0, 40.0, 41)
    delta = 2.0 ** np.arange(-12.0, -3.0)
    values = (1.0 + a[:, None]) ** 2.0 * delta[None, :] ** -2.0
    report = flag_multiplier_check(_parabolic_field(a, delta, values), orders=[(0, 0)])
    assert report.fitted["L_a_slope_00"] == pytest.approx(2.0)
    assert report.fitted["L_delta_slope_00"] == pytest.approx(-2.0)
    assert report.by_name("L (α,β)=(0,0) refinement drift").passed
    assert not report.by_name("L (α,β)=(0,0) a-decay slope").passed
    assert not report.by_name("L (α,β)=(0,0) δ-scaling slope").passed
    assert not report.all_passed


def test_flag_multiplier_check_default_orders_reach_second_derivatives():
    a = np.linspace(0.0, 40.0, 41)
    delta = 2.0 ** np.arange(-12.0, -3.0)
    values = np.ones((a.size, delta.size))
    report = flag_multiplier_check(_parabolic_field(a, delta, values))
    orders = {r.orders for r in report.records}
    assert orders == {(i, j) for i in range(3) for j in range(3)}
    short = _parabolic_field(a, delta[:7], values[:, :7])
    with pytest.raises(ConfigurationError):
        flag_multiplier_check(short)


def _tabulated_result(scale: float = 1.0) -> DecompositionResult:
    a = np.linspace(8.0, 48.0, 41)
    delta = 2.0 ** np.arange(-12.0, -7.0)
    values = scale * (1.0 + a[:, None]) ** 1j * np.ones(delta.size)[None, :]
    field = _parabolic_field(a, delta, values)
    return DecompositionResult(field, field, CutoffPhi(), math.pi / 2, 1.0, 0.0)


def test_dyadic_extension_check_compares_sups():
    base = _tabulated_result()
    stable = dyadic_extension_check(base, _tabulated_result(1.02), orders=[(0, 0), (0, 1)])
    assert stable.total_count == 4
    assert stable.all_passed
    assert stable.by_name("L2 (α,β)=(0,0) dyadic extension growth").measured == pytest.approx(0.02)
    grown = dyadic_extension_check(base, _tabulated_result(1.2))
    assert not grown.by_name("L1 (α,β)=(0,0) dyadic extension growth").passed
    assert grown.fitted["L1_extended_sup_00"] == pytest.approx(1.2)


def test_dyadic_extension_check_needs_matching_grids():
    base = _tabulated_result()
    a = np.linspace(8.0, 48.0, 21)
    delta = 2.0 ** np.arange(-12.0, -7.0)
    other = _parabolic_field(a, delta, np.ones((a.size, delta.size)))
    with pytest.raises(ArgumentError):
        dyadic_extension_check(base, DecompositionResult(other, other, CutoffPhi(), 1.0, 1.0, 0.0))


def test_flag_multiplier_check_validation():
    with pytest.raises(ArgumentError):
        flag_multiplier_check(SampledField(np.arange(3.0), np.arange(3.0), np.ones((3, 3))))
    tiny = _parabolic_field([1.0, 2.0], [0.1, 0.2], np.ones((2, 2)))
    with pytest.raises(ConfigurationError):
        flag_multiplier_check(tiny)
    with pytest.raises(ArgumentError):
        flag_multiplier_check(tiny, orders=[(3, 0)])


def test_mikhlin_argument_checks():
    grid = default_mikhlin_grid()
    assert grid.shape == (24, 2)
    assert np.all(np.abs(grid[:, 1]) > 4 * grid[:, 0] ** 2)
    with pytest.raises(ArgumentError):
        mikhlin_check(SMALL, region_grid=[(1.0, 1.0)])
    with pytest.raises(ArgumentError):
        mikhlin_check(SMALL, orders=[(2, 1)])
    with pytest.raises(ArgumentError):
        mikhlin_check(SMALL, overlap_grid=[(1.0, 0.0)])


def test_default_overlap_grid_lies_in_the_band():
    grid = default_overlap_grid(slope_c=2.0)
    assert grid.shape == (24, 2)
    ratio = np.abs(grid[:, 0]) / np.sqrt(grid[:, 1])
    assert np.all(ratio >= 2.0 - 1e-12) and np.all(ratio <= 4.0 + 1e-12)
    with pytest.raises(ArgumentError):
        default_overlap_grid(slope_c=0.0)


@pytest.mark.slow
def test_mikhlin_check_records_overlap_band():
    region = default_mikhlin_grid(n=2)
    band = default_overlap_grid(n=2)
    report = mikhlin_check(SMALL, region_grid=region, orders=[(0, 0), (1, 0)], lambdas=(1.0, 2.0), overlap_grid=band)
    names = [r.name for r in report.records]
    assert "(α,β)=(0,0) overlap band consistency" in names
    assert "(α,β)=(1,0) overlap band consistency" in names
    assert report.total_count == 4
    assert {"overlap_sup_00", "overlap_sup_10"} <= set(report.fitted)
    assert all(math.isfinite(r.measured) for r in report.records)


def test_asymptotic_relation_rejects_order():
    with pytest.raises(ArgumentError):
        asymptotic_relation_check(None, r_max=2)


def test_frequency_axis_and_nyquist_fraction():
    assert frequency_axis(4, 0.5) == pytest.approx([-1.0, -0.5, 0.0, 0.5])
    assert nyquist_energy_fraction(np.zeros((16, 16))) == 0.0
    assert nyquist_energy_fraction(np.ones((16, 16))) == pytest.approx(112 / 256)
    g = np.zeros((16, 16))
    g[8, 8] = 1.0
    assert nyquist_energy_fraction(g) == 0.0


def test_sheared_kernel_shapes():
    x, y, p = sheared_kernel(np.zeros((16, 8), dtype=complex), 0.5, 0.25, 1.0)
    assert x.shape == (16,) and y.shape == (8,)
    assert p.shape == (16, 8)
    assert np.all(p == 0)
    assert x[1] - x[0] == pytest.approx(1.0 / (16 * 0.5))


def test_inverse_direction_argument_checks():
    axis = frequency_axis(16, 1.0)
    ones = SampledField(axis, axis, np.ones((16, 16)))
    with pytest.raises(ArgumentError):
        inverse_direction_check(ones, c_prime=0.0)
    with pytest.raises(AliasingError):
        inverse_direction_check(ones)
    skewed = SampledField(np.geomspace(1.0, 2.0, 16), axis, np.ones((16, 16)))
    with pytest.raises(ArgumentError):
        inverse_direction_check(skewed)
    with pytest.raises(ArgumentError):
        flat_flag_field(SMALL, n=15)


@pytest.mark.slow
def test_inverse_direction_on_a_flat_flag_multiplier():
    ell = flat_flag_field(FlagKernelSpec(dyadic_range=(1, 3, 0, 2)), n=256, d_freq=1.0 / 64.0)
    report = inverse_direction_check(ell, c_prime=math.pi / 2)
    assert report.suite == "inverse_direction"
    assert {"product_sup_00", "product_sup_10", "product_sup_01", "imag_fraction"} <= set(report.fitted)
    assert all(math.isfinite(r.measured) for r in report.records)
    assert report.fitted["round_trip_c_prime"] == pytest.approx(math.pi / 2, rel=0.05)
    assert report.by_name("round-trip c′ relative error").passed


@pytest.mark.slow
def test_decomposition_recovers_phase_constant():
    spec = FlagKernelSpec(dyadic_range=(-8, 20, 0, 8), curvature_c0=1.0)
    grid = burst_grid(default_delta_values(-10, -8), a_centers=(8.0, 16.0), burst_len=4)
    result = extract_decomposition(spec, grid)
    assert result.l1.shape == result.l2.shape == (8, 3)
    assert result.l2.axis_tags == ("parabolic-a", "parabolic-delta")
    assert result.c_prime == pytest.approx(math.pi / 2)
    assert abs(result.c_prime_fit - math.pi / 2) / (math.pi / 2) < 0.05

    report = decomposition_report(result)
    assert report.fitted["c_prime_fit"] == result.c_prime_fit
    assert len(report.series["phase_fit"]["s"]) == len(report.series["phase_fit"]["residual"])


@pytest.mark.slow
@pytest.mark.parametrize("c0", [0.5, 1.0, 2.0])
def test_phase_constant_across_curvatures(c0):
    spec = FlagKernelSpec(dyadic_range=(-8, 20, 0, 8), curvature_c0=c0)
    grid = burst_grid(default_delta_values(-10, -8), a_centers=(8.0, 16.0), burst_len=4)
    result = extract_decomposition(spec, grid)
    assert result.c_prime == pytest.approx(theoretical_c_prime(c0))
    assert abs(c0 * result.c_prime_fit - math.pi / 2) <= 0.05 * (math.pi / 2)
    assert result.c_prime_fit_r2 >= 0.99
    assert result.phase_fit.r2 == pytest.approx(result.c_prime_fit_r2)
