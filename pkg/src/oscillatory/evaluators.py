# src/oscillatory/evaluators.py
"""m_k(ξ,η) = ∫ e^{-2πi(tξ + t²η)} k(t) dt 평가기

- oracle: 절단 shell 전체를 합성 GL 로 적분 (t 와 -t 짝지음)
- fast: 원점 근방 + 정류점 창은 직접 적분, 나머지 꼬리는 L=4 부분적분
"""

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from common import AccuracyError, ArgumentError
from kernels1d import Kernel1D, kernel_values, kernel_derivatives
from .quadrature import (
    DEFAULT_NODE_BUDGET,
    IBP_DEPTH,
    ibp_boundary,
    integrate_segment,
    phase,
    remainder_bound,
)

MIN_ORACLE_TOL = 1e-10
DEFAULT_FAST_TOL = 1e-10
PV_FLOOR = 1e-12          # 내부 절단 없는 주값 적분의 하한 (상대)
MAX_WIDENINGS = 40


class Method(str, Enum):
    ORACLE = "oracle"
    FAST = "fast"


@dataclass(frozen=True)
class OscIntegralSpec:
    """진동 적분 명세: phase_coeffs = (ξ, η)"""
    kernel: Kernel1D
    phase_coeffs: tuple = (0.0, 0.0)
    method: Method = Method.FAST

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))
        if len(self.phase_coeffs) != 2:
            raise ArgumentError("phase_coeffs must be (linear, quadratic)")
        object.__setattr__(self, "phase_coeffs", (float(self.phase_coeffs[0]), float(self.phase_coeffs[1])))

    @property
    def linear(self) -> float:
        return self.phase_coeffs[0]

    @property
    def quadratic(self) -> float:
        return self.phase_coeffs[1]


@dataclass
class OscResult:
    """평가 결과와 메타데이터"""
    value: complex
    error_estimate: float = 0.0
    method: str = "oracle"
    fallback: bool = False
    nodes: int = 0
    remainder_bound: float = 0.0
    notes: list = field(default_factory=list)


def _integrand(k: Kernel1D, xi: float, eta: float):
    def fn(t):
        return np.exp(1j * phase(t, xi, eta)) * kernel_values(k, t)
    return fn


def _direct_pieces(fn, lo, paired_hi, extra, lin, quad, abs_tol, budget) -> tuple:
    """짝지은 [lo, paired_hi] + 한쪽 구간들 (s 좌표, side=±1)"""
    pieces = 1 + len(extra)
    tol = abs_tol / pieces
    value, err, used = integrate_segment(
        lambda s: fn(s) + fn(-s), lo, paired_hi, lin, quad, tol, budget
    )
    for side, a, b in extra:
        v, e, u = integrate_segment(lambda s, side=side: fn(side * s), a, b, lin, quad, tol, budget - used)
        value += v
        err += e
        used += u
    return value, err, used


def _effective_lo(lo: float, hi: float) -> float:
    return lo if lo > 0 else PV_FLOOR * min(1.0, hi)


def evaluate_oracle_with_info(spec: OscIntegralSpec, abs_tol: float = MIN_ORACLE_TOL, node_budget: int = DEFAULT_NODE_BUDGET) -> OscResult:
    """brute-force oracle (점질량 상수 포함)"""
    if abs_tol < MIN_ORACLE_TOL:
        raise ArgumentError(f"abs_tol must be ≥ {MIN_ORACLE_TOL}")
    k = spec.kernel
    xi, eta = spec.linear, spec.quadratic
    if not k.has_function_part:
        return OscResult(value=k.delta_mass, method="oracle")

    lo, hi_plus, hi_minus = k.support()
    if not (math.isfinite(hi_plus) and math.isfinite(hi_minus)):
        raise ArgumentError("oracle needs a finite outer truncation")
    lo = _effective_lo(lo, max(hi_plus, hi_minus))
    paired_hi = max(lo, min(hi_plus, hi_minus))
    extra = []
    if hi_plus > paired_hi:
        extra.append((1.0, paired_hi, hi_plus))
    if hi_minus > paired_hi:
        extra.append((-1.0, paired_hi, hi_minus))

    fn = _integrand(k, xi, eta)
    lin, quad = abs(xi) + abs(k.modulation), abs(eta)
    value, err, used = _direct_pieces(fn, lo, paired_hi, extra, lin, quad, abs_tol, node_budget)
    return OscResult(value=value + k.delta_mass, error_estimate=err, method="oracle", nodes=used)


def evaluate_oracle(spec: OscIntegralSpec, abs_tol: float = MIN_ORACLE_TOL) -> complex:
    return evaluate_oracle_with_info(spec, abs_tol).value


def _plan(lo, his, T0, t0, r):
    """직접 적분 구간과 부분적분 구간 (s 좌표)

    Returns:
        near_hi: {side: 원점 근방 직접 구간 끝}
        windows: [(side, a, b)] 정류점 창
        tails: [(side, a, b)] 부분적분 구간 (b 는 inf 가능)
    """
    near_hi, windows, tails = {}, [], []
    for side, hi in his.items():
        n_hi = min(T0, hi)
        w = None
        if t0 is not None and np.sign(t0) == side:
            wa, wb = max(abs(t0) - r, lo), min(abs(t0) + r, hi)
            if wb > wa:
                if wa <= n_hi:
                    n_hi = max(n_hi, wb)
                else:
                    w = (wa, wb)
        near_hi[side] = n_hi
        if w is not None:
            windows.append((side, *w))
            if w[0] > n_hi:
                tails.append((side, n_hi, w[0]))
            if hi > w[1]:
                tails.append((side, w[1], hi))
        elif hi > n_hi:
            tails.append((side, n_hi, hi))
    return near_hi, windows, tails


def evaluate_fast_with_info(spec: OscIntegralSpec, abs_tol: float = DEFAULT_FAST_TOL, node_budget: int = DEFAULT_NODE_BUDGET) -> OscResult:
    """정류점 인식 fast path

    변조 e^{-2πist} 는 선형 계수로 흡수한다 (ξ → ξ + s).
    """
    k = spec.kernel
    if not k.has_function_part:
        return OscResult(value=k.delta_mass, method="fast")

    xi = spec.linear + k.modulation
    eta = spec.quadratic
    k = k.with_(modulation=0.0)
    lo, hi_plus, hi_minus = k.support()
    finite = math.isfinite(hi_plus) and math.isfinite(hi_minus)

    def fallback(note: str) -> OscResult:
        if not finite:
            raise AccuracyError(f"fast path failed ({note}) and oracle needs finite truncation")
        res = evaluate_oracle_with_info(spec, max(abs_tol, MIN_ORACLE_TOL), node_budget)
        res.method, res.fallback = "fast->oracle", True
        res.notes.append(note)
        return res

    if xi == 0 and eta == 0:
        return fallback("non-oscillatory phase")

    t0 = -xi / (2.0 * eta) if eta != 0 else None
    notes = []
    if t0 is not None and abs(t0) < lo:
        note = "stationary point inside the inner truncation ball"
        if finite:
            try:
                return fallback(note)
            except AccuracyError:
                # oracle 예산 초과: 정류점이 shell 밖이므로 fast path 로 계속
                note += "; oracle over budget"
        notes.append(note)

    lo_eff = _effective_lo(lo, max(hi_plus, hi_minus))
    r = max(1.0, abs(2.0 * eta) ** -0.5) if eta != 0 else 1.0
    T0 = max(r, 2.0 * lo_eff)
    if k.window is not None:
        T0 = max(T0, k.window.radius)

    his = {1.0: hi_plus, -1.0: hi_minus}
    derivs = lambda t: kernel_derivatives(k, t, IBP_DEPTH)

    for _ in range(MAX_WIDENINGS):
        near_hi, windows, tails = _plan(lo_eff, his, T0, t0, r)
        bound = 0.0
        for side, a, b in tails:
            bound += remainder_bound(derivs, side * a, side * b, xi, eta)
        if bound <= 0.1 * abs_tol:
            break
        T0 *= 2.0
        r *= 2.0
    else:
        return fallback("tail remainder bound not reached")

    fn = _integrand(k, xi, eta)
    lin, quad = abs(xi), abs(eta)
    paired_hi = min(near_hi[1.0], near_hi[-1.0])
    extra = [(side, paired_hi, n_hi) for side, n_hi in near_hi.items() if n_hi > paired_hi]
    extra += windows
    if paired_hi <= lo_eff:
        paired_hi = lo_eff
    value, err, used = _direct_pieces(fn, lo_eff, paired_hi, extra, lin, quad, 0.9 * abs_tol, node_budget)

    for side, a, b in tails:
        ends = [side * a] + ([side * b] if math.isfinite(b) else [])
        t = np.array(ends, dtype=float)
        F, _ = ibp_boundary(derivs(t), t, xi, eta)
        F_a = F[0]
        F_b = F[1] if F.size > 1 else 0j
        # 음의 쪽은 t 방향이 반대
        value += (F_b - F_a) if side > 0 else (F_a - F_b)

    return OscResult(
        value=value + k.delta_mass,
        error_estimate=err + bound,
        method="fast",
        nodes=used,
        remainder_bound=bound,
        notes=notes,
    )


def evaluate_fast(spec: OscIntegralSpec) -> complex:
    return evaluate_fast_with_info(spec).value


def evaluate(spec: OscIntegralSpec) -> complex:
    """spec.method 에 따라 분기"""
    if spec.method == Method.ORACLE:
        return evaluate_oracle(spec)
    return evaluate_fast(spec)


def multiplier_value(k: Kernel1D, xi: float, eta: float, method: Method = Method.FAST) -> complex:
    """m_k(ξ, η)"""
    return evaluate(OscIntegralSpec(kernel=k, phase_coeffs=(xi, eta), method=method))


def fresnel_integral(x, method: Method = Method.FAST, kernel: Kernel1D = None) -> np.ndarray:
    """I_k(x) = ∫ e^{-2πixt} e^{-iπt²} k(t) dt = m_k(x, 1/2)"""
    if kernel is None:
        raise ArgumentError("kernel is required")
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    return np.array([multiplier_value(kernel, float(v), 0.5, method) for v in xs])
