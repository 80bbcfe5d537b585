# src/flag2d/checks.py
"""flag 커널 미분 부등식, shear 불변성, M_η 족, 분포 수렴 검사"""

from typing import Callable, Sequence

import numpy as np
from scipy.integrate import simpson

from common import ArgumentError, ConfigurationError, parallel_map, scaled
from evaluation.report import EstimateReport
from kernels1d import default_bump_set, default_delta_grid, estimate_seminorms
from .kernel import Flag, FlagKernelSpec, flag_kernel_values, shear
from .transforms import KNOTS_PER_OCTAVE, flat_multiplier, m_eta_kernel

FD_REL_STEP = 1e-3
RANGE_GROWTH_TOL = 0.05
GRID_REFINE_TOL = 0.05
PAIRING_TOL = 1e-4
MIN_ETA_OCTAVES = 6
DEFAULT_ORDERS = ((0, 0), (1, 0), (0, 1))

# 중앙 차분 계수 {offset: weight}
_STENCILS = {
    0: {0: 1.0},
    1: {-1: -0.5, 1: 0.5},
    2: {-1: 1.0, 0: -2.0, 1: 1.0},
}


def check_grid(spec: FlagKernelSpec, points: int = 40) -> tuple:
    """양의 사분면 dyadic-log 격자 (내부 원뿔)

    2^{m_min+2} ≤ x ≤ 2^{m_max-2},  2^{m_min+2} ≤ y ≤ x·2^{n_max-2}
    M 은 x, y 각각에 대해 홀함수이므로 양의 사분면으로 충분하다.
    """
    m_min, m_max, _, n_max = spec.dyadic_range
    lo, hi = 2.0 ** (m_min + 2), 2.0 ** (m_max - 2)
    if not hi > lo:
        raise ConfigurationError(f"dyadic range {spec.dyadic_range} too short for an interior grid")
    x = np.geomspace(lo, hi, points)
    y = np.geomspace(lo, hi * 2.0 ** (n_max - 2), points)
    X, Y = np.meshgrid(x, y, indexing="ij")
    mask = Y <= X * 2.0 ** (n_max - 2)
    return X[mask], Y[mask]


def fd_mixed(evaluator: Callable, x: np.ndarray, y: np.ndarray, alpha: int, beta: int, rel_step: float = FD_REL_STEP) -> np.ndarray:
    """∂_x^α ∂_y^β 중앙 차분 (스케일 상대 스텝)"""
    if alpha > 2 or beta > 2:
        raise ArgumentError("orders above 2 are not supported")
    hx, hy = rel_step * np.abs(x), rel_step * np.abs(y)
    acc = np.zeros(x.shape, dtype=float)
    for i, wi in _STENCILS[alpha].items():
        for j, wj in _STENCILS[beta].items():
            acc = acc + wi * wj * evaluator(x + i * hx, y + j * hy)
    return acc / (hx**alpha * hy**beta)


def flag_weight(flag: Flag, x, y, alpha: int, beta: int) -> np.ndarray:
    ax, ay = np.abs(x), np.abs(y)
    if Flag(flag) == Flag.F1:
        return (ax + np.sqrt(ay)) ** (-1 - alpha) * ay ** (-1 - beta)
    return ax ** (-1 - alpha) * (ax + np.sqrt(ay)) ** (-2 - 2 * beta)


def product_weight(x, y, alpha: int, beta: int) -> np.ndarray:
    return np.abs(x) ** (-1 - alpha) * np.abs(y) ** (-1 - beta)


def _flag_region(flag: Flag, x, y) -> np.ndarray:
    """flag 가중이 product 가중과 달라지는 영역"""
    if Flag(flag) == Flag.F1:
        return np.abs(y) > x * x
    return x * x > np.abs(y)


def _weighted_sups(evaluator: Callable, spec: FlagKernelSpec, orders, x, y) -> dict:
    region = _flag_region(spec.flag, x, y)
    out = {}
    for alpha, beta in orders:
        d = np.abs(fd_mixed(evaluator, x, y, alpha, beta))
        flag_ratio = np.where(region, d / flag_weight(spec.flag, x, y, alpha, beta), 0.0)
        prod_ratio = np.where(~region, d / product_weight(x, y, alpha, beta), 0.0)
        i = int(np.argmax(flag_ratio))
        out[(alpha, beta)] = {
            "flag": float(flag_ratio.max()) if region.any() else 0.0,
            "product": float(prod_ratio.max()) if (~region).any() else 0.0,
            "argmax": (float(x[i]), float(y[i])),
        }
    return out


def _validate_orders(orders) -> list:
    orders = [tuple(int(v) for v in o) for o in orders]
    if not orders:
        raise ArgumentError("orders must not be empty")
    for a, b in orders:
        if not (0 <= a <= 2 and 0 <= b <= 2):
            raise ArgumentError(f"orders (α,β) must lie in [0,2], got {(a, b)}")
    return orders


def _inequality_report(suite: str, spec: FlagKernelSpec, make_evaluator: Callable, orders, points: int, extend: int) -> EstimateReport:
    orders = _validate_orders(orders)
    x, y = check_grid(spec, points)
    base = _weighted_sups(make_evaluator(spec), spec, orders, x, y)
    wide = _weighted_sups(make_evaluator(spec.extended(extend)), spec, orders, x, y)

    report = EstimateReport(suite=suite)
    for (alpha, beta) in orders:
        for kind in ("flag", "product"):
            s0, s1 = base[(alpha, beta)][kind], wide[(alpha, beta)][kind]
            growth = abs(s1 - s0) / s0 if s0 > 0 else 0.0
            report.check(
                f"{kind} bound (α,β)=({alpha},{beta}) range stability",
                growth,
                scaled(RANGE_GROWTH_TOL),
                orders=(alpha, beta),
                weight=f"{spec.flag.value} weight" if kind == "flag" else "|x|^{-1-α}|y|^{-1-β}",
                message=f"sup={s0:.6g}, extended sup={s1:.6g}",
            )
            report.fitted[f"{kind}_sup_{alpha}{beta}"] = s0
        ax, ay = base[(alpha, beta)]["argmax"]
        report.fitted[f"argmax_x_{alpha}{beta}"] = ax
        report.fitted[f"argmax_y_{alpha}{beta}"] = ay

    ref = base.get((0, 0), {}).get("flag", 0.0)
    for (alpha, beta) in orders:
        if (alpha, beta) != (0, 0) and ref > 0:
            report.fitted[f"ratio_to_00_{alpha}{beta}"] = base[(alpha, beta)]["flag"] / ref
    return report


def check_flag_inequalities(
    spec: FlagKernelSpec,
    orders: Sequence[tuple] = DEFAULT_ORDERS,
    points: int = 40,
    extend: int = 2,
) -> EstimateReport:
    """|∂_x^α ∂_y^β M| 의 flag/product 가중 sup 과 범위 확장 안정성"""
    print(f"🧮 [Flag2D] 미분 부등식 검사: flag={spec.flag.value}, 범위={spec.dyadic_range}")
    return _inequality_report(
        "flag_inequalities",
        spec,
        lambda s: (lambda x, y: flag_kernel_values(s, x, y)),
        orders,
        points,
        extend,
    )


def shear_invariance_check(
    spec: FlagKernelSpec,
    c: float,
    orders: Sequence[tuple] = DEFAULT_ORDERS,
    points: int = 40,
    extend: int = 2,
) -> EstimateReport:
    """M(x, y - cx²) 가 F2 flag 커널로 남는지 검사"""
    if spec.flag != Flag.F2:
        raise ArgumentError("shear invariance holds for flag F2 only")
    print(f"🧮 [Flag2D] shear 불변성 검사: c={c:g}")
    return _inequality_report(
        "shear_invariance",
        spec,
        lambda s: shear(s.with_(curvature_c0=c)),
        orders,
        points,
        extend,
    )


def _eta_octaves(eta_grid: np.ndarray) -> float:
    a = np.abs(eta_grid)
    return float(np.log2(a.max() / a.min()))


def _m_eta_seminorms(spec: FlagKernelSpec, eta: float, alpha: int, knots: int, grid_points: int) -> tuple:
    k = m_eta_kernel(spec, eta, alpha, knots)
    est = estimate_seminorms(k, 1, default_bump_set(), default_delta_grid(), grid_points)
    return est[0].decay_constant, est[1].decay_constant, est[0].cancellation_constant


def m_eta_family_check(
    spec: FlagKernelSpec,
    alpha: int,
    eta_grid: Sequence[float],
    grid_points: int = 4000,
) -> EstimateReport:
    """{η^α ∂_η^α M_η}_η 의 균일 CZ seminorm 과 표 해상도 안정성"""
    if alpha not in (0, 1):
        raise ArgumentError(f"alpha must be 0 or 1, got {alpha}")
    etas = np.asarray(eta_grid, dtype=float)
    if etas.size == 0:
        raise ArgumentError("eta_grid must not be empty")
    if np.any(etas == 0):
        raise ArgumentError("η = 0 is not allowed in eta_grid")
    if _eta_octaves(etas) < MIN_ETA_OCTAVES:
        raise ConfigurationError(f"eta_grid must span ≥ {MIN_ETA_OCTAVES} dyadic octaves")

    print(f"🧮 [Flag2D] M_η 족 검사: α={alpha}, η {etas.size}개")
    coarse = parallel_map(lambda e: _m_eta_seminorms(spec, float(e), alpha, KNOTS_PER_OCTAVE, grid_points), etas, desc="M_η")
    fine = parallel_map(lambda e: _m_eta_seminorms(spec, float(e), alpha, 2 * KNOTS_PER_OCTAVE, grid_points), etas, desc="M_η refined")
    coarse, fine = np.array(coarse), np.array(fine)

    report = EstimateReport(suite="m_eta_family")
    labels = ("decay order 0", "decay order 1", "cancellation")
    for col, label in enumerate(labels):
        s0, s1 = float(coarse[:, col].max()), float(fine[:, col].max())
        drift = abs(s1 - s0) / s0 if s0 > 0 else 0.0
        report.check(
            f"sup_η {label} grid stability (α={alpha})",
            drift,
            scaled(GRID_REFINE_TOL),
            orders=(alpha,),
            message=f"sup={s0:.6g}, refined={s1:.6g}",
        )
        report.fitted[f"sup_{label.replace(' ', '_')}"] = s0
    report.series["per_eta"] = {
        "eta": etas.tolist(),
        "decay0": coarse[:, 0].tolist(),
        "decay1": coarse[:, 1].tolist(),
        "cancellation": coarse[:, 2].tolist(),
    }
    return report


def _pairing(spec: FlagKernelSpec, half_width: float = 6.0, points: int = 241) -> float:
    """⟨M, f⟩,  f(x,y) = xy·e^{-π(x²+y²)}

    Parseval: ⟨M, f⟩ = -∫∫ M̂(ξ,η) ξη e^{-π(ξ²+η²)} dξdη
    """
    s = np.linspace(-half_width, half_width, points)
    XI, ETA = np.meshgrid(s, s, indexing="ij")
    integrand = -flat_multiplier(spec, XI, ETA) * XI * ETA * np.exp(-np.pi * (XI**2 + ETA**2))
    inner = simpson(integrand.real, x=s, axis=1)
    return float(simpson(inner, x=s))


def pairing_convergence_check(spec: FlagKernelSpec, extensions: int = 3) -> EstimateReport:
    """범위를 한 옥타브씩 넓힐 때 ⟨M_range, f⟩ 의 Cauchy 차이"""
    if extensions < 2:
        raise ConfigurationError("need at least two range extensions")
    values = [_pairing(spec.extended(j)) for j in range(extensions + 1)]
    diffs = np.abs(np.diff(values))

    report = EstimateReport(suite="flag_pairing")
    report.check(
        "pairing Cauchy difference (last two extensions)",
        float(diffs[-2:].max()),
        scaled(PAIRING_TOL),
        message=f"pairing={values[-1]:.8g}",
    )
    report.series["pairing"] = {"extension": list(map(float, range(extensions + 1))), "value": list(map(float, values))}
    return report
