import numpy as np
import pytest
from scipy.integrate import simpson

from common import ArgumentError, ConfigurationError
from flag2d import (
    Flag,
    FlagKernelSpec,
    bump_transform,
    check_flag_inequalities,
    check_grid,
    contributing_terms,
    eval_flag_kernel,
    fd_mixed,
    flag_kernel_values,
    flag_weight,
    flat_multiplier,
    m_eta_family_check,
    m_eta_kernel,
    pairing_convergence_check,
    partial_ft_y,
    product_weight,
    sample_curved_kernel,
    shear,
    shear_invariance_check,
)
from kernels1d import BumpSpec, KernelFamily, Profile

SMALL = FlagKernelSpec(dyadic_range=(-2, 4, 0, 3))


def test_flag_kernel_spec_validation():
    with pytest.raises(ArgumentError):
        FlagKernelSpec(bumps=(BumpSpec(), BumpSpec()))
    with pytest.raises(ArgumentError):
        FlagKernelSpec(dyadic_range=(0, 2, -1, 2))
    with pytest.raises(ArgumentError):
        FlagKernelSpec(dyadic_range=(3, 2, 0, 1))
    assert FlagKernelSpec(flag="F2").flag == Flag.F2


def test_extended_range_keeps_n_min_non_negative():
    spec = FlagKernelSpec(dyadic_range=(0, 2, 1, 3))
    assert spec.extended(2).dyadic_range == (-2, 4, 0, 5)
    assert len(spec.terms()) == 3 * 3


def test_pointwise_and_vectorized_agree():
    pts = [(0.3, 0.7), (1.5, -4.0), (-2.2, 0.05), (9.0, 30.0)]
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    vec = flag_kernel_values(SMALL, x, y)
    for (px, py), v in zip(pts, vec):
        assert eval_flag_kernel(SMALL, px, py) == pytest.approx(v, abs=1e-14)


def test_kernel_is_odd_in_each_variable():
    x = np.array([0.4, 1.1, 3.0])
    y = np.array([0.2, 2.5, 7.0])
    m = flag_kernel_values(SMALL, x, y)
    assert flag_kernel_values(SMALL, -x, y) == pytest.approx(-m)
    assert flag_kernel_values(SMALL, x, -y) == pytest.approx(-m)


def test_contributing_terms_respect_support():
    assert contributing_terms(SMALL, 100.0, 0.1) == []
    terms = contributing_terms(SMALL, 0.1, 0.1)
    assert (-2, 0) in terms
    assert all(abs(0.1) < 2.0 ** (m + n) for m, n in terms)


def test_shear_and_curved_sampling():
    curved = SMALL.with_(curvature_c0=1.5)
    x = np.array([0.5, 1.0, -2.0])
    y = np.array([1.0, -0.5, 3.0])
    assert shear(curved)(x, y) == pytest.approx(flag_kernel_values(SMALL, x, y - 1.5 * x**2))

    axis = np.linspace(-4.0, 4.0, 9)
    field = sample_curved_kernel(curved, axis, axis)
    assert field.shape == (9, 9)
    assert field.meta["curvature_c0"] == 1.5
    assert field.values[2, 7] == pytest.approx(shear(curved)(axis[2], axis[7]))


def test_weights():
    assert flag_weight(Flag.F1, 1.0, 4.0, 0, 0) == pytest.approx(1.0 / 12.0)
    assert flag_weight(Flag.F2, 2.0, 4.0, 1, 0) == pytest.approx(0.25 / 16.0)
    assert product_weight(2.0, 0.5, 1, 1) == pytest.approx(0.25 * 4.0)


def test_fd_mixed_on_a_polynomial():
    x = np.array([1.0, 2.0])
    y = np.array([3.0, 0.5])
    f = lambda a, b: a**2 * b
    assert fd_mixed(f, x, y, 1, 1) == pytest.approx(2 * x, rel=1e-6)
    assert fd_mixed(f, x, y, 2, 0) == pytest.approx(2 * y, rel=1e-4)
    with pytest.raises(ArgumentError):
        fd_mixed(f, x, y, 3, 0)


def test_check_grid_is_inside_the_cone():
    x, y = check_grid(SMALL, points=10)
    assert x.size == y.size > 0
    assert np.all(y <= x * 2.0 ** (3 - 2) * (1 + 1e-12))
    with pytest.raises(ConfigurationError):
        check_grid(FlagKernelSpec(dyadic_range=(0, 3, 0, 0)))


@pytest.mark.parametrize("profile", list(Profile))
def test_cancellative_bump_transform(profile):
    hat = bump_transform(BumpSpec(profile, cancellative=True))
    assert abs(hat(0.0)) < 1e-10
    zeta = np.array([0.3, 1.7, 5.0])
    # 실수 홀함수의 변환은 순허수이고 홀함수
    assert np.allclose(hat(zeta).real, 0.0, atol=1e-10)
    assert hat(-zeta) == pytest.approx(-hat(zeta))
    assert hat(1000.0) == 0


def test_mollifier_transform_is_negligible_at_the_table_edge():
    hat = bump_transform(BumpSpec(Profile.MOLLIFIER, cancellative=True))
    assert abs(hat(0.5)) > 1e-3
    assert abs(hat(250.0)) < 1e-8
    assert abs(hat(-250.0)) < 1e-8


def test_flat_multiplier_vanishes_on_the_axes():
    eta = np.array([0.1, 1.0, 3.0])
    assert np.allclose(flat_multiplier(SMALL, 0.0, eta), 0.0, atol=1e-9)
    assert np.allclose(flat_multiplier(SMALL, eta, 0.0), 0.0, atol=1e-9)


def test_flat_multiplier_is_the_x_transform_of_partial_ft():
    spec = FlagKernelSpec(dyadic_range=(0, 1, 0, 1))
    x = np.linspace(-2.0, 2.0, 8001)
    eta, xi = 0.35, 0.6
    m_eta = partial_ft_y(spec, x, eta)
    integrand = m_eta * np.exp(-2j * np.pi * x * xi)
    direct = simpson(integrand.real, x=x) + 1j * simpson(integrand.imag, x=x)
    assert flat_multiplier(spec, xi, eta) == pytest.approx(direct, abs=1e-6)


def test_m_eta_kernel_table():
    k = m_eta_kernel(SMALL, 0.5)
    assert k.family == KernelFamily.TABULATED
    assert k.table_t[k.table_t.size // 2] == 0.0
    with pytest.raises(ArgumentError):
        m_eta_kernel(SMALL, 0.0)
    with pytest.raises(ArgumentError):
        m_eta_kernel(SMALL, 0.5, alpha=2)


def test_check_argument_validation():
    with pytest.raises(ArgumentError):
        shear_invariance_check(SMALL, 1.0)
    with pytest.raises(ArgumentError):
        m_eta_family_check(SMALL, 1, [0.0, 1.0])
    with pytest.raises(ConfigurationError):
        m_eta_family_check(SMALL, 1, 2.0 ** np.arange(-3, 1))
    with pytest.raises(ArgumentError):
        check_flag_inequalities(SMALL, orders=[(3, 0)])
    with pytest.raises(ConfigurationError):
        pairing_convergence_check(SMALL, extensions=1)


def test_flag_inequality_report_structure():
    spec = FlagKernelSpec(dyadic_range=(-4, 4, 0, 4))
    report = check_flag_inequalities(spec, points=12, extend=1)
    assert report.suite == "flag_inequalities"
    assert report.total_count == 6
    assert {"flag_sup_00", "product_sup_10", "argmax_x_01"} <= set(report.fitted)
    assert all(np.isfinite(r.measured) for r in report.records)


def test_shear_invariance_report_structure():
    spec = FlagKernelSpec(dyadic_range=(-4, 4, 0, 4), flag=Flag.F2)
    report = shear_invariance_check(spec, 1.0, points=12, extend=1)
    assert report.suite == "shear_invariance"
    assert report.total_count == 6


@pytest.mark.slow
def test_pairing_sequence():
    report = pairing_convergence_check(FlagKernelSpec(dyadic_range=(-2, 2, 0, 2)), extensions=3)
    values = report.series["pairing"]["value"]
    assert len(values) == 4
    assert np.all(np.isfinite(values))
    assert report.total_count == 1
