import math

import numpy as np
import pytest
from scipy.integrate import simpson

from common import ArgumentError, ConfigurationError, KernelDomainError
from kernels1d import (
    BumpSpec,
    CutoffWindow,
    Kernel1D,
    KernelFamily,
    Profile,
    closed_form_decay_constant,
    default_bump_set,
    default_delta_grid,
    dilation_family_check,
    estimate_seminorms,
    eval_kernel,
    kernel_derivatives,
    kernel_values,
    plateau_cutoff,
    point_mass,
    reflect_conjugate,
)


@pytest.mark.parametrize("profile", list(Profile))
@pytest.mark.parametrize("cancellative", [False, True])
def test_bump_is_normalized(profile, cancellative):
    bump = BumpSpec(profile, cancellative=cancellative)
    t = np.linspace(-1.0, 1.0, 20001)
    assert np.max(np.abs(bump.values(t))) <= 1.0 + 1e-12
    assert np.max(np.abs(bump.derivative(t))) <= 1.0 + 1e-9
    assert np.all(bump.values(np.array([-1.5, 1.0, 2.0])) == 0)


@pytest.mark.parametrize("profile", list(Profile))
def test_cancellative_bump_has_mean_zero(profile):
    bump = BumpSpec(profile, scale=0.5, cancellative=True)
    t = np.linspace(-0.5, 0.5, 4001)
    assert simpson(bump.values(t), x=t) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("scale", [0.0, -0.5, 1.5])
def test_bump_scale_range(scale):
    with pytest.raises(ArgumentError):
        BumpSpec(scale=scale)


@pytest.mark.parametrize("profile", list(Profile))
def test_plateau_cutoff(profile):
    inner = np.linspace(-0.5, 0.5, 11)
    outer = np.array([-3.0, -1.0, 1.0, 1.7])
    assert plateau_cutoff(profile, inner) == pytest.approx(np.ones(11))
    assert plateau_cutoff(profile, outer) == pytest.approx(np.zeros(4))

    band = np.linspace(0.5, 1.0, 51)
    values = plateau_cutoff(profile, band)
    assert np.all(np.diff(values) <= 1e-15)


def test_cutoff_window_parts_sum_to_one():
    t = np.linspace(-5.0, 5.0, 101)
    near = CutoffWindow(radius=3.0, part="near").values(t)
    far = CutoffWindow(radius=3.0, part="far").values(t)
    assert near + far == pytest.approx(np.ones_like(t))
    assert CutoffWindow(radius=3.0).transition == (1.5, 3.0)
    with pytest.raises(ArgumentError):
        CutoffWindow(part="middle")


def test_kernel_validation():
    with pytest.raises(ArgumentError):
        Kernel1D(epsilon=2.0, big_n=1.0)
    with pytest.raises(ArgumentError):
        Kernel1D(epsilon=-1.0)
    with pytest.raises(ArgumentError):
        Kernel1D(delta=0.0)
    with pytest.raises(ArgumentError):
        Kernel1D(family=KernelFamily.TABULATED)
    with pytest.raises(ValueError):
        Kernel1D(family="cauchy")


def test_eval_kernel_values_and_truncation():
    k = Kernel1D()
    assert eval_kernel(k, 2.0) == pytest.approx(0.5)
    assert eval_kernel(k, -4.0) == pytest.approx(-0.25)
    assert eval_kernel(k, 1e-5) == 0
    assert eval_kernel(k, 2.0**13) == 0

    with pytest.raises(KernelDomainError):
        eval_kernel(Kernel1D(epsilon=0.0), 0.0)


def test_signed_power_matches_reciprocal():
    t = np.geomspace(1e-3, 1e3, 40)
    t = np.concatenate([-t, t])
    a = kernel_values(Kernel1D(), t)
    b = kernel_values(Kernel1D(family=KernelFamily.SIGNED_POWER), t)
    assert np.allclose(a, b, rtol=1e-15)


def test_dilation_of_homogeneous_kernel():
    t = np.array([0.3, 1.0, 7.0])
    base = kernel_values(Kernel1D(), t)
    dilated = kernel_values(Kernel1D(delta=2.0), t)
    assert np.allclose(base, dilated)
    # 절단 shell 도 함께 확대된다
    assert kernel_values(Kernel1D(delta=2.0), np.array([2.0**12 * 1.5]))[0] != 0


def test_point_mass_has_no_function_part():
    k = point_mass(2.0 - 1.0j)
    assert not k.has_function_part
    assert k.delta_mass == 2.0 - 1.0j
    assert np.all(kernel_values(k, np.array([0.5, 1.0])) == 0)


def test_kernel_derivatives_of_reciprocal():
    d = kernel_derivatives(Kernel1D(), np.array([2.0]), 2)[:, 0]
    assert d == pytest.approx([0.5, -0.25, 0.25])


@pytest.mark.parametrize("theta", [0.5, 2.0])
def test_closed_form_decay_constant(theta):
    k = Kernel1D(family=KernelFamily.OSCILLATING, log_frequency=theta)
    assert closed_form_decay_constant(k, 0) == pytest.approx(1.0)
    assert closed_form_decay_constant(k, 1) == pytest.approx(math.hypot(1.0, theta))
    assert closed_form_decay_constant(Kernel1D(), 2) == pytest.approx(2.0)
    with pytest.raises(ArgumentError):
        closed_form_decay_constant(Kernel1D(modulation=1.0), 0)


def test_reflect_conjugate_oscillating():
    k = Kernel1D(family=KernelFamily.OSCILLATING, log_frequency=1.3, coefficient=0.5 + 2j)
    r = reflect_conjugate(k)
    t = np.linspace(-20.0, 20.0, 81)
    t = t[t != 0]
    assert np.allclose(kernel_values(r, t), np.conj(kernel_values(k, -t)))


def test_reflect_conjugate_tabulated():
    tt = np.linspace(-3.0, 5.0, 33)
    kk = np.exp(-tt**2) * (1 + 1j * tt)
    k = Kernel1D(family=KernelFamily.TABULATED, epsilon=0.0, big_n=10.0, table_t=tt, table_k=kk)
    r = reflect_conjugate(k)
    t = np.linspace(-4.0, 4.0, 41)
    assert np.allclose(kernel_values(r, t), np.conj(kernel_values(k, -t)), atol=1e-9)


def test_estimate_seminorms_of_reciprocal():
    est = estimate_seminorms(Kernel1D(), 1, default_bump_set(), default_delta_grid(), grid_points=2000)
    assert [e.order for e in est] == [0, 1]
    assert est[0].decay_constant == pytest.approx(1.0, rel=1e-3)
    assert est[1].decay_constant == pytest.approx(1.0, rel=1e-3)
    assert math.isfinite(est[0].cancellation_constant)


def test_estimate_seminorms_argument_checks():
    with pytest.raises(ArgumentError):
        estimate_seminorms(Kernel1D(), 1, [], default_delta_grid())
    with pytest.raises(ArgumentError):
        estimate_seminorms(Kernel1D(), 5, default_bump_set(), default_delta_grid())
    with pytest.raises(ConfigurationError):
        estimate_seminorms(Kernel1D(), 1, default_bump_set(), [1.0, 2.0, 4.0])


def test_dilation_family_argument_checks():
    with pytest.raises(ArgumentError):
        dilation_family_check(Kernel1D(), 3, default_delta_grid())
    with pytest.raises(ConfigurationError):
        dilation_family_check(Kernel1D(), 1, default_delta_grid(), rel_step=0.05)


@pytest.mark.slow
def test_dilation_family_report_structure():
    report = dilation_family_check(Kernel1D(), 1, default_delta_grid(4), grid_points=1000)
    assert report.suite == "dilation_family"
    assert report.total_count == 3
    assert all(math.isfinite(r.measured) for r in report.records)
    assert set(report.fitted) >= {"decay_sup_order0", "decay_sup_order1", "cancellation_sup"}


@pytest.mark.slow
def test_dilation_family_threshold_scales_with_exponent():
    first = dilation_family_check(Kernel1D(), 1, default_delta_grid(4), grid_points=1000)
    second = dilation_family_check(Kernel1D(), 2, default_delta_grid(4), grid_points=1000)
    for order in range(2):
        lo = first.by_name(f"decay α={order} (δ-family order 1)")
        hi = second.by_name(f"decay α={order} (δ-family order 2)")
        assert hi.threshold == pytest.approx(2.0 * lo.threshold)
    assert all(math.isfinite(r.measured) for r in second.records)
