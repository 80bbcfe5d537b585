import math

import numpy as np
import pytest
from scipy.special import sici

from common import ArgumentError, ConfigurationError
from kernels1d import Kernel1D, KernelFamily, point_mass, reflect_conjugate
from oscillatory import (
    Method,
    OscIntegralSpec,
    ab_decay_check,
    ab_leading_order_check,
    ab_split,
    default_phase_grid,
    dyadic_ladder,
    evaluate,
    evaluate_fast_with_info,
    evaluate_oracle,
    evaluate_oracle_with_info,
    fresnel_integral,
    multiplier_value,
    oracle_equivalence_check,
    uniform_bound_sweep,
)

SHORT = Kernel1D(epsilon=2.0**-4, big_n=2.0**4)


def truncated_hilbert_symbol(xi: float, eps: float, big_n: float) -> complex:
    """∫_{ε<|t|<N} e^{-2πitξ}/t dt = -2i (Si(2πξN) - Si(2πξε))"""
    si_n, _ = sici(2 * math.pi * xi * big_n)
    si_e, _ = sici(2 * math.pi * xi * eps)
    return -2j * (si_n - si_e)


def test_integral_spec_validation():
    spec = OscIntegralSpec(SHORT, (1, 2), "oracle")
    assert spec.method == Method.ORACLE
    assert (spec.linear, spec.quadratic) == (1.0, 2.0)
    with pytest.raises(ArgumentError):
        OscIntegralSpec(SHORT, (1.0, 2.0, 3.0))


@pytest.mark.parametrize("xi", [0.75, 1.5, -3.0])
def test_oracle_matches_sine_integral(xi):
    value = evaluate_oracle(OscIntegralSpec(SHORT, (xi, 0.0)))
    assert value == pytest.approx(truncated_hilbert_symbol(xi, 2.0**-4, 2.0**4), abs=1e-8)


def test_fast_path_without_outer_truncation():
    eps = 2.0**-16
    k = Kernel1D(epsilon=eps, big_n=math.inf)
    res = evaluate_fast_with_info(OscIntegralSpec(k, (1.0, 0.0)))
    expected = -2j * (math.pi / 2 - sici(2 * math.pi * eps)[0])
    assert not res.fallback
    assert res.value == pytest.approx(expected, abs=1e-7)


def test_oracle_rejects_bad_arguments():
    with pytest.raises(ArgumentError):
        evaluate_oracle_with_info(OscIntegralSpec(SHORT, (1.0, 1.0)), abs_tol=1e-12)
    with pytest.raises(ArgumentError):
        evaluate_oracle(OscIntegralSpec(Kernel1D(big_n=math.inf), (1.0, 1.0)))


@pytest.mark.parametrize("method", list(Method))
def test_point_mass_is_constant(method):
    k = point_mass(3.0 - 1.0j)
    for phase in [(0.0, 0.0), (5.0, -2.0), (-1.0, 40.0)]:
        assert evaluate(OscIntegralSpec(k, phase, method)) == 3.0 - 1.0j


@pytest.mark.parametrize("phase", [(0.7, 1.3), (-2.0, 0.4)])
def test_conjugate_reflection_identity(phase):
    k = Kernel1D(family=KernelFamily.OSCILLATING, epsilon=2.0**-3, big_n=2.0**3, log_frequency=0.7, coefficient=1 - 0.5j)
    xi, eta = phase
    lhs = evaluate_oracle(OscIntegralSpec(k, (xi, -eta)))
    rhs = np.conj(evaluate_oracle(OscIntegralSpec(reflect_conjugate(k), (xi, eta))))
    assert lhs == pytest.approx(rhs, abs=1e-8)


def test_fast_agrees_with_oracle_on_a_curved_phase():
    spec = OscIntegralSpec(SHORT, (3.0, -2.5))
    fast = evaluate_fast_with_info(spec).value
    oracle = evaluate_oracle(spec)
    assert abs(fast - oracle) <= 1e-6 * (1 + abs(oracle))


def test_fresnel_integral_is_multiplier_at_half():
    x = np.array([0.5, 2.0])
    values = fresnel_integral(x, Method.ORACLE, kernel=SHORT)
    assert values.shape == (2,)
    for v, xv in zip(values, x):
        assert v == pytest.approx(multiplier_value(SHORT, float(xv), 0.5, Method.ORACLE))
    with pytest.raises(ArgumentError):
        fresnel_integral(x)


def test_phase_grid_and_ladder():
    grid = default_phase_grid(4, 16.0)
    assert len(grid) == 16
    assert max(abs(v) for p in grid for v in p) == pytest.approx(16.0)
    assert dyadic_ladder([4, 5]) == [(2.0**-4, 2.0**4), (2.0**-5, 2.0**5)]


def test_uniform_bound_sweep_argument_checks():
    with pytest.raises(ArgumentError):
        uniform_bound_sweep([], default_phase_grid(4), dyadic_ladder())
    with pytest.raises(ArgumentError):
        uniform_bound_sweep([Kernel1D()], [], dyadic_ladder())
    with pytest.raises(ConfigurationError):
        uniform_bound_sweep([Kernel1D()], default_phase_grid(4), dyadic_ladder(range(4, 7)))


@pytest.mark.slow
def test_uniform_bound_sweep_plateaus():
    report = uniform_bound_sweep([Kernel1D()], default_phase_grid(4, 8.0), dyadic_ladder(range(4, 9)))
    assert report.suite == "uniform_bound"
    assert report.total_count == 1
    assert 0 < report.fitted["sup_principal-value-reciprocal#0"] < math.inf


def test_oracle_equivalence_requires_samples():
    with pytest.raises(ArgumentError):
        oracle_equivalence_check(n=0)


@pytest.mark.slow
def test_oracle_equivalence_small_sample():
    report = oracle_equivalence_check(n=4, seed=1, span=4.0)
    assert report.total_count == 1
    assert len(report.series["samples"]["relative_error"]) == 4
    assert report.all_passed


def test_ab_split_reconstructs_fresnel_integral():
    x = np.array([0.5, 1.25, 2.0])
    split = ab_split(SHORT, x, method=Method.ORACLE)
    direct = fresnel_integral(x, Method.ORACLE, kernel=SHORT)
    assert np.allclose(split.reconstruct(), direct, atol=1e-8)


def test_ab_split_puts_point_mass_in_a():
    split = ab_split(point_mass(2.0), [1.0, 3.0], method=Method.ORACLE)
    assert np.allclose(split.a_values, 2.0)
    assert np.allclose(split.b_values, 0.0)


def test_ab_split_rejects_empty_grid():
    with pytest.raises(ArgumentError):
        ab_split(SHORT, [])


def test_ab_checks_argument_validation():
    with pytest.raises(ArgumentError):
        ab_leading_order_check(SHORT, x_range=(2.0, 8.0))
    with pytest.raises(ArgumentError):
        ab_decay_check([Kernel1D(big_n=math.inf)], j_max=3)
    with pytest.raises(ArgumentError):
        ab_decay_check([point_mass()])
    with pytest.raises(ArgumentError):
        ab_decay_check([Kernel1D(big_n=math.inf)], x_grid=[1.0, 8.0])


@pytest.mark.slow
def test_ab_decay_records_grid_refinement():
    k = Kernel1D(big_n=math.inf, epsilon=2.0**-16)
    report = ab_decay_check([k], j_max=1, x_grid=[8.0, 32.0, 128.0])
    assert report.total_count == 8
    drift = report.by_name("sup |x|^1|∂^0B| grid refinement drift")
    assert drift.threshold == pytest.approx(0.10)
    assert drift.passed
    assert {"refine_drift_A0", "refine_drift_A1", "refine_drift_B0", "refine_drift_B1"} <= set(report.fitted)


@pytest.mark.slow
def test_ab_decay_skips_refinement_across_the_origin():
    report = ab_decay_check([Kernel1D(big_n=math.inf, epsilon=2.0**-16)], j_max=0, x_grid=[-8.0, 8.0])
    assert report.total_count == 2
    assert not any("refinement" in r.name for r in report.records)
