# src/kernels1d/seminorms.py
"""CZ seminorm 수치 추정

- decay constant: log 격자 위 sup |t|^{1+α}|∂^α k(t)| (중앙 차분, 스텝 10⁻³|t|)
- cancellation constant: δ 격자와 bump 집합에 대한 sup |∫ k^δ φ|
"""

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import simpson

from common import ArgumentError, ConfigurationError, scaled
from evaluation.report import EstimateReport
from .bumps import BumpSpec, Profile
from .kernels import Kernel1D, kernel_values

FD_REL_STEP = 1e-3          # 중앙 차분 상대 스텝
GRID_MARGIN = 1.01          # shell 경계에서 떨어뜨리는 비율
DECAY_GRID_POINTS = 10_000
CANCEL_NODES = 4001
MIN_OCTAVES = 4
UNBOUNDED_OCTAVES = 24      # 절단 없는 쪽의 탐색 범위


@dataclass(frozen=True)
class SeminormEstimate:
    order: int
    decay_constant: float
    cancellation_constant: float


def default_bump_set() -> list[BumpSpec]:
    """짝/홀 bump 를 모두 포함하는 기본 집합"""
    return [
        BumpSpec(Profile.MOLLIFIER),
        BumpSpec(Profile.MOLLIFIER, cancellative=True),
        BumpSpec(Profile.COSINE_SQUARED),
        BumpSpec(Profile.COSINE_SQUARED, scale=0.5, cancellative=True),
    ]


def default_delta_grid(octaves: int = 8) -> list[float]:
    half = octaves // 2
    return [2.0**j for j in range(-half, octaves - half + 1)]


def octave_span(grid: Sequence[float]) -> float:
    g = np.asarray(grid, dtype=float)
    return float(np.log2(g.max() / g.min()))


def fd_derivative(fn: Callable, t: np.ndarray, order: int, rel_step: float = FD_REL_STEP) -> np.ndarray:
    """스케일 상대 스텝의 반복 중앙 차분 ∂^order fn(t)"""
    t = np.asarray(t, dtype=float)
    if order == 0:
        return fn(t)
    h = rel_step * np.abs(t)
    acc = np.zeros(t.shape, dtype=complex)
    for j in range(order + 1):
        acc += (-1) ** j * math.comb(order, j) * fn(t + (order / 2.0 - j) * h)
    return acc / h**order


def _bounded_range(lo: float, hi: float) -> tuple:
    if lo <= 0:
        lo = min(1.0, hi) * 2.0**-UNBOUNDED_OCTAVES
    if not math.isfinite(hi):
        hi = max(lo, 1.0) * 2.0**UNBOUNDED_OCTAVES
    return lo, hi


def _decay_grid(support: tuple, points: int) -> np.ndarray:
    lo, hi_plus, hi_minus = support
    sides = []
    for sign, hi in ((1.0, hi_plus), (-1.0, hi_minus)):
        a, b = _bounded_range(lo, hi)
        a, b = a * GRID_MARGIN, b / GRID_MARGIN
        if b > a:
            sides.append(sign * np.geomspace(a, b, points // 2))
    return np.concatenate(sides) if sides else np.array([])


def paired_integral(fn: Callable, lo: float, hi: float, nodes: int = CANCEL_NODES) -> complex:
    """∫_{lo<|t|<hi} fn(t) dt  (t 와 -t 를 짝지어 주값 수렴)

    u = log|t| 치환 후 Simpson 적분.
    """
    if not hi > lo:
        return 0j
    lo, hi = _bounded_range(lo, hi)
    u = np.linspace(np.log(lo), np.log(hi), nodes)
    s = np.exp(u)
    g = (fn(s) + fn(-s)) * s
    return complex(simpson(g.real, x=u) + 1j * simpson(g.imag, x=u))


def seminorms_of(
    fn: Callable,
    support: tuple,
    delta_mass: complex,
    max_order: int,
    bump_set: Sequence[BumpSpec],
    delta_grid: Sequence[float],
    grid_points: int = DECAY_GRID_POINTS,
) -> list[SeminormEstimate]:
    """임의의 1차원 커널 함수 fn 의 seminorm 추정 (estimate_seminorms 의 본체)"""
    grid = _decay_grid(support, grid_points)
    decays = []
    for alpha in range(max_order + 1):
        if grid.size == 0:
            decays.append(0.0)
            continue
        d = fd_derivative(fn, grid, alpha)
        decays.append(float(np.max(np.abs(grid) ** (1 + alpha) * np.abs(d))))

    lo, hi_plus, hi_minus = support
    hi = max(hi_plus, hi_minus)
    cancel = 0.0
    for dil in delta_grid:
        def dilated(t, dil=dil):
            return fn(np.asarray(t) / dil) / dil
        for phi in bump_set:
            def integrand(t, dilated=dilated, phi=phi):
                return dilated(t) * phi.values(t)
            value = paired_integral(integrand, dil * lo, min(phi.scale, dil * hi))
            value += delta_mass * float(phi.values(np.array([0.0]))[0])
            cancel = max(cancel, abs(value))

    return [SeminormEstimate(order=a, decay_constant=decays[a], cancellation_constant=cancel) for a in range(max_order + 1)]


def _validate_seminorm_args(max_order: int, bump_set, delta_grid):
    if not 0 <= max_order <= 4:
        raise ArgumentError(f"max_order must lie in [0, 4], got {max_order}")
    if not bump_set:
        raise ArgumentError("bump_set must not be empty")
    if not delta_grid:
        raise ArgumentError("delta_grid must not be empty")
    if min(delta_grid) <= 0:
        raise ArgumentError("delta_grid entries must be positive")
    if octave_span(delta_grid) < MIN_OCTAVES:
        raise ConfigurationError(f"delta_grid must span ≥ {MIN_OCTAVES} dyadic octaves")


def estimate_seminorms(
    k: Kernel1D,
    max_order: int,
    bump_set: Sequence[BumpSpec],
    delta_grid: Sequence[float],
    grid_points: int = DECAY_GRID_POINTS,
) -> list[SeminormEstimate]:
    """α = 0..max_order 의 SeminormEstimate 목록

    Args:
        k: 대상 커널
        max_order: 최대 미분 차수 (≤ 4)
        bump_set: cancellation 검사용 정규화 bump 목록
        delta_grid: cancellation 검사용 확대 비율 (4 옥타브 이상)
        grid_points: decay 검사 log 격자 점 수

    Returns:
        차수별 SeminormEstimate
    """
    _validate_seminorm_args(max_order, bump_set, delta_grid)
    return seminorms_of(
        lambda t: kernel_values(k, t),
        k.support(),
        k.delta_mass,
        max_order,
        bump_set,
        delta_grid,
        grid_points,
    )


def _delta_derivative_kernel(k: Kernel1D, delta: float, alpha: int, rel_step: float) -> Callable:
    """t ↦ δ^α ∂_δ^α k^δ(t) (δ 방향 중앙 차분)"""
    h = rel_step * delta

    def at(d):
        kd = k.with_(delta=d)
        return lambda t: kernel_values(kd, t)

    if alpha == 0:
        return at(delta)
    if alpha == 1:
        fp, fm = at(delta + h), at(delta - h)
        return lambda t: delta * (fp(t) - fm(t)) / (2 * h)
    fp, f0, fm = at(delta + h), at(delta), at(delta - h)
    return lambda t: delta**2 * (fp(t) - 2 * f0(t) + fm(t)) / h**2


def dilation_family_check(
    k: Kernel1D,
    alpha: int,
    delta_grid: Sequence[float],
    rel_step: float = FD_REL_STEP,
    bump_set: Sequence[BumpSpec] = None,
    cancellation_grid: Sequence[float] = None,
    max_order: int = 1,
    factor: float = None,
    grid_points: int = 2000,
) -> EstimateReport:
    """{δ^α ∂_δ^α k^δ}_δ 가 균일 유계 CZ 커널 족인지 검사

    각 δ 에서 seminorm 을 추정하고 δ 에 대한 sup 을
    α=0 seminorm 의 고정 배수와 비교한다.
    """
    if not 0 <= alpha <= 2:
        raise ArgumentError(f"alpha must lie in [0, 2], got {alpha}")
    if rel_step > 1e-2:
        raise ConfigurationError(f"relative δ-step {rel_step} exceeds 1e-2; finite differences unstable")
    if not delta_grid or min(delta_grid) <= 0:
        raise ArgumentError("delta_grid must hold positive values")

    bump_set = list(bump_set or default_bump_set())
    cancellation_grid = list(cancellation_grid or default_delta_grid())
    _validate_seminorm_args(max_order, bump_set, cancellation_grid)
    factor = factor if factor is not None else 2.0 ** (alpha + 1)

    base = estimate_seminorms(k, max_order, bump_set, cancellation_grid, grid_points)
    floor = 1e-8 * max(1.0, base[0].decay_constant)

    per_delta = []
    for d in delta_grid:
        d_abs = d * k.delta
        fn = _delta_derivative_kernel(k, d_abs, alpha, rel_step)
        lo, hi_plus, hi_minus = k.with_(delta=d_abs).support()
        shrink = 1.0 + 2.0 * rel_step
        support = (lo * shrink, hi_plus / shrink, hi_minus / shrink)
        mass = k.delta_mass if alpha == 0 else 0j
        per_delta.append(seminorms_of(fn, support, mass, max_order, bump_set, cancellation_grid, grid_points))

    report = EstimateReport(suite="dilation_family")
    for order in range(max_order + 1):
        decays = np.array([est[order].decay_constant for est in per_delta])
        threshold = scaled(factor * max(base[order].decay_constant, floor))
        report.check(
            f"decay α={order} (δ-family order {alpha})",
            float(decays.max()),
            threshold,
            orders=(alpha, order),
            weight="|t|^{1+α}",
            message=f"spread={(decays.max() - decays.min()) / max(decays.max(), floor):.3e}",
        )
        report.fitted[f"decay_sup_order{order}"] = float(decays.max())
        report.fitted[f"decay_spread_order{order}"] = float((decays.max() - decays.min()) / max(decays.max(), floor))
        report.series[f"decay_order{order}"] = {"delta": list(map(float, delta_grid)), "constant": decays.tolist()}

    cancels = np.array([est[0].cancellation_constant for est in per_delta])
    report.check(
        f"cancellation (δ-family order {alpha})",
        float(cancels.max()),
        scaled(factor * max(base[0].cancellation_constant, floor)),
        orders=(alpha,),
        weight="|∫k^δφ|",
    )
    report.fitted["cancellation_sup"] = float(cancels.max())
    return report
