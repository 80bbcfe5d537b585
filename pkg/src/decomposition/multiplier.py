# src/decomposition/multiplier.py
"""휜 커널 K(x,y) = M(x, y - c₀x²) 의 multiplier

m(ξ,η) = ∫ e^{-2πi(xξ + c₀x²η)} M_η(x) dx
L₁(ξ,η) = 같은 적분에 근방 cutoff η₀(x/R), R = η^{-1/2}/2 를 곱한 것
η < 0 은 K 가 실수이므로 m(ξ,η) = conj(m(-ξ,-η)).
"""

from functools import lru_cache

import numpy as np

from common import ArgumentError, DataError, SampledField, parallel_map
from flag2d import FlagKernelSpec, m_eta_kernel
from kernels1d import CutoffWindow, Kernel1D
from oscillatory import OscIntegralSpec, evaluate_fast_with_info


@lru_cache(maxsize=256)
def _m_eta(spec: FlagKernelSpec, eta: float) -> Kernel1D:
    return m_eta_kernel(spec, eta)


def near_radius(eta: float) -> float:
    return 0.5 / np.sqrt(abs(eta))


def _upper(spec: FlagKernelSpec, xi: float, eta: float, near: bool) -> complex:
    k = _m_eta(spec, eta)
    if near:
        k = k.with_(window=CutoffWindow(radius=near_radius(eta), part="near"))
    res = evaluate_fast_with_info(OscIntegralSpec(k, (xi, spec.curvature_c0 * eta)))
    return res.value


def multiplier_value(spec: FlagKernelSpec, xi: float, eta: float, near: bool = False) -> complex:
    """m(ξ,η) (near=True 이면 L₁)"""
    if eta == 0:
        raise ArgumentError("η = 0 lies on the ξ-axis where m is not evaluated")
    if eta > 0:
        return _upper(spec, float(xi), float(eta), near)
    return complex(np.conj(_upper(spec, -float(xi), -float(eta), near)))


def multiplier_at(spec: FlagKernelSpec, points, near: bool = False, desc: str = None) -> np.ndarray:
    """(ξ,η) 점 목록에서 m (또는 L₁)"""
    pts = [(float(p[0]), float(p[1])) for p in points]
    if any(eta == 0 for _, eta in pts):
        raise ArgumentError("η = 0 in multiplier grid")
    values = np.array(parallel_map(lambda p: multiplier_value(spec, p[0], p[1], near), pts, desc=desc), dtype=complex)
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise DataError("non-finite multiplier value", key=pts[int(bad[0])])
    return values


def curved_multiplier(spec: FlagKernelSpec, xi_axis, eta_axis) -> SampledField:
    """ξ × η 직사각 격자 위 m(ξ,η)"""
    xi = np.asarray(xi_axis, dtype=float)
    eta = np.asarray(eta_axis, dtype=float)
    if np.any(eta == 0):
        raise ArgumentError("η = 0 in multiplier grid")
    print(f"🧮 [Decomposition] multiplier 계산: {xi.size}×{eta.size} 격자, c₀={spec.curvature_c0:g}")
    points = [(x, e) for x in xi for e in eta]
    values = multiplier_at(spec, points, desc="m(ξ,η)").reshape(xi.size, eta.size)
    return SampledField(
        axis_x=xi,
        axis_y=eta,
        values=values,
        names=("xi", "eta"),
        evaluator=lambda x, e: multiplier_value(spec, x, e),
        meta={"curvature_c0": spec.curvature_c0, "sup_abs": float(np.max(np.abs(values)))},
    )


def parabolic_multiplier(spec: FlagKernelSpec, a_values, delta_values) -> SampledField:
    """포물선 극좌표 (a, δ) 격자 위 m"""
    a = np.asarray(a_values, dtype=float)
    d = np.asarray(delta_values, dtype=float)
    if np.any(d <= 0):
        raise ArgumentError("δ values must be positive")
    print(f"🧮 [Decomposition] multiplier 계산 (a, δ): {a.size}×{d.size} 격자, c₀={spec.curvature_c0:g}")
    points = [(x * e, e * e) for x in a for e in d]
    values = multiplier_at(spec, points, desc="m(a,δ)").reshape(a.size, d.size)
    return SampledField(
        axis_x=a,
        axis_y=d,
        values=values,
        axis_tags=("parabolic-a", "parabolic-delta"),
        quad_weight="none",
        names=("a", "delta"),
        evaluator=lambda x, e: multiplier_value(spec, x * e, e * e),
        meta={"part": "m", "curvature_c0": spec.curvature_c0},
    )
