# src/decomposition/checks.py
"""분해 성분의 미분 부등식 검사

- flag_multiplier_check: |δ|^α (1+a)^β |∂_δ^α ∂_a^β L| (포물선 극좌표)
- dyadic_extension_check: dyadic 범위를 넓혀 다시 뽑은 L₁, L₂ 와 sup 비교
- mikhlin_check: (|ξ|+|η|^{1/2})^{α+2β} |∂_ξ^α ∂_η^β m| (포물선 위쪽 영역)
- asymptotic_relation_check: L₁ - λ·FT{(1/u)Φ(u)L₂(u,δ)}(a) 의 a-감쇠 기울기
"""

import math
from typing import Sequence

import numpy as np

from common import ArgumentError, ConfigurationError, SampledField, parallel_map, scaled
from evaluation.report import EstimateReport
from flag2d import FlagKernelSpec
from kernels1d import CutoffWindow, Kernel1D, KernelFamily
from oscillatory import OscIntegralSpec, evaluate_fast_with_info
from .extract import DecompositionResult
from .multiplier import multiplier_value

LOG_DELTA_STEP = 1e-2
REFINE_TOL = 0.10
DILATION_TOL = 0.15
SLOPE_SLACK = 0.3
SLOPE_SPREAD_TOL = 0.3
MIKHLIN_REL_STEP = 1e-2
DEFAULT_LAMBDAS = (1.0, 2.0, 4.0, 8.0, 16.0)
ALL_ORDERS = ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))
FLAG_ORDERS = tuple((a, b) for a in range(3) for b in range(3))
EXTENSION_TOL = 0.05
EXTENSION_OCTAVES = 2
VANISH_RTOL = 1e-10

_STENCILS = {
    0: {0: 1.0},
    1: {-1: -0.5, 1: 0.5},
    2: {-1: 1.0, 0: -2.0, 1: 1.0},
}


def _validate_orders(orders, limit: int) -> list:
    orders = [tuple(int(v) for v in o) for o in orders]
    if not orders:
        raise ArgumentError("orders must not be empty")
    for a, b in orders:
        if a < 0 or b < 0 or a > 2 or b > 2 or a + b > limit:
            raise ArgumentError(f"unsupported order {(a, b)}")
    return orders


def _a_step(a: np.ndarray, scale: float = 1.0) -> np.ndarray:
    return scale * np.minimum(0.1, 0.02 * (1.0 + np.abs(a)))


class _StencilSampler:
    """evaluator 재샘플링 값을 (i, j) 이동마다 한 번만 계산해 차수 간에 공유"""

    def __init__(self, field: SampledField, scale: float):
        self.field = field
        self.A, self.D = np.meshgrid(field.axis_x, field.axis_y, indexing="ij")
        self.ha = _a_step(self.A, scale)
        self.hu = LOG_DELTA_STEP * scale
        self._cache = {}

    def at(self, i: int, j: int) -> np.ndarray:
        if (i, j) not in self._cache:
            a = self.A + i * self.ha
            d = self.D * np.exp(j * self.hu)
            pts = list(zip(a.ravel(), d.ravel()))
            vals = parallel_map(lambda p: complex(self.field.evaluator(p[0], p[1])), pts)
            self._cache[(i, j)] = np.array(vals).reshape(self.A.shape)
        return self._cache[(i, j)]


def _stencil_weighted(sampler: _StencilSampler, alpha: int, beta: int) -> np.ndarray:
    """evaluator 로 재샘플링한 |δ|^α(1+a)^β|∂_δ^α ∂_a^β L|

    δ 방향은 u = log δ 차분: δ∂_δ = ∂_u, δ²∂_δ² = ∂_u² - ∂_u.
    """
    beta_sten = _STENCILS[beta]

    def du(order):
        acc = 0j
        for j, wj in _STENCILS[order].items():
            for i, wi in beta_sten.items():
                acc = acc + wi * wj * sampler.at(i, j)
        return acc / sampler.hu**order

    d = du(2) - du(1) if alpha == 2 else du(alpha)
    d = d / sampler.ha**beta
    return (1.0 + np.abs(sampler.A)) ** beta * np.abs(d)


def _gradient_weighted(field: SampledField, alpha: int, beta: int, stride: int = 1) -> tuple:
    """격자 데이터만으로 np.gradient 차분 (stride 2 는 2배 성긴 격자)"""
    a = field.axis_x[::stride]
    u = np.log(field.axis_y[::stride])
    vals = field.values[::stride, ::stride]
    need = max(alpha, beta) * 2 + 1
    if a.size < need or u.size < need:
        raise ConfigurationError(f"grid too coarse for order ({alpha},{beta}) differences")
    d = vals
    for _ in range(beta):
        d = np.gradient(d, a, axis=0)
    if alpha >= 1:
        du1 = np.gradient(d, u, axis=1)
        d = du1 if alpha == 1 else np.gradient(du1, u, axis=1) - du1
    A = a[:, None] * np.ones_like(u)[None, :]
    return (1.0 + np.abs(A)) ** beta * np.abs(d), a, np.exp(u)


def _slope(x: np.ndarray, y: np.ndarray) -> float:
    keep = (x > 0) & (y > 0) & np.isfinite(y)
    if keep.sum() < 2:
        return float("nan")
    return float(np.polyfit(np.log(x[keep]), np.log(y[keep]), 1)[0])


def _slope_check(report: EstimateReport, name: str, slope: float, target: float, orders: tuple, upper_only: bool = False):
    """기울기와 목표값의 차이 (upper_only 면 목표를 넘는 만큼만)"""
    excess = slope - target if upper_only else abs(slope - target)
    bound = f"≤ {target:+g} + {SLOPE_SLACK:g}" if upper_only else f"{target:+g} ± {SLOPE_SLACK:g}"
    report.check(name, excess, scaled(SLOPE_SLACK), orders=orders, expected=bound, message=f"slope={slope:.4g}")


def flag_multiplier_check(field: SampledField, orders: Sequence[tuple] = FLAG_ORDERS) -> EstimateReport:
    """포물선 극좌표 위 flag multiplier 부등식

    차수마다 2× 해상도 drift, a-감쇠 기울기 (β ≥ 1 이면 −β, β = 0 이면 ≤ 0),
    δ-스케일 기울기 (−α) 를 검사한다. 도함수가 격자 전체에서 수치적으로 0 이면
    drift 는 0 으로 두고 기울기 검사는 생략.
    """
    orders = _validate_orders(orders, 4)
    if field.axis_tags != ("parabolic-a", "parabolic-delta"):
        raise ArgumentError("flag_multiplier_check expects a field on (a, δ) axes")
    part = field.meta.get("part", "L")
    report = EstimateReport(suite="flag_multiplier")
    if field.evaluator is not None:
        fine, coarse = _StencilSampler(field, 1.0), _StencilSampler(field, 0.5)
    # 이 아래의 sup 은 수치적으로 0
    floor = VANISH_RTOL * float(np.max(np.abs(field.values)))

    for alpha, beta in orders:
        if field.evaluator is not None:
            w = _stencil_weighted(fine, alpha, beta)
            w_ref = _stencil_weighted(coarse, alpha, beta)
            a_axis, d_axis = field.axis_x, field.axis_y
        else:
            w, a_axis, d_axis = _gradient_weighted(field, alpha, beta)
            w_ref, _, _ = _gradient_weighted(field, alpha, beta, stride=2)
        sup, sup_ref = float(np.max(w)), float(np.max(w_ref))
        drift = abs(sup - sup_ref) / sup if sup > floor else 0.0
        label = f"{part} (α,β)=({alpha},{beta})"
        report.check(
            f"{label} refinement drift",
            drift,
            scaled(REFINE_TOL),
            orders=(alpha, beta),
            weight="|δ|^α (1+a)^β",
            message=f"sup={sup:.6g}",
        )
        report.fitted[f"{part}_sup_{alpha}{beta}"] = sup

        # 기울기: a 방향은 δ 에 대한 sup, δ 방향은 a 에 대한 sup
        raw = w / (1.0 + np.abs(a_axis[:, None])) ** beta
        a_slope = _slope(1.0 + np.abs(a_axis), raw.max(axis=1))
        unweighted_d = raw / np.maximum(d_axis[None, :], 1e-300) ** alpha
        d_slope = _slope(d_axis, unweighted_d.max(axis=0))
        report.fitted[f"{part}_a_slope_{alpha}{beta}"] = a_slope
        report.fitted[f"{part}_delta_slope_{alpha}{beta}"] = d_slope
        report.series[f"{part}_{alpha}{beta}"] = {"a": a_axis.tolist(), "sup_over_delta": raw.max(axis=1).tolist()}
        if sup > floor:
            _slope_check(report, f"{label} a-decay slope", a_slope, -float(beta), (alpha, beta), upper_only=beta == 0)
            _slope_check(report, f"{label} δ-scaling slope", d_slope, -float(alpha), (alpha, beta))
    return report


def dyadic_extension_check(
    base: DecompositionResult,
    extended: DecompositionResult,
    orders: Sequence[tuple] = ((0, 0),),
) -> EstimateReport:
    """dyadic 범위를 넓혀 다시 뽑은 L₁, L₂ 의 가중 sup 증가율 (< 5%)"""
    orders = _validate_orders(orders, 4)
    report = EstimateReport(suite="flag_multiplier")
    for name in ("l1", "l2"):
        f0, f1 = getattr(base, name), getattr(extended, name)
        if f0.shape != f1.shape:
            raise ArgumentError("extended decomposition must use the same (a, δ) grid")
        for alpha, beta in orders:
            s0 = float(np.max(_gradient_weighted(f0, alpha, beta)[0]))
            s1 = float(np.max(_gradient_weighted(f1, alpha, beta)[0]))
            if s0 > 0:
                growth = abs(s1 - s0) / s0
            else:
                growth = 0.0 if s1 == 0 else math.inf
            report.check(
                f"{name.upper()} (α,β)=({alpha},{beta}) dyadic extension growth",
                growth,
                scaled(EXTENSION_TOL),
                orders=(alpha, beta),
                weight="|δ|^α (1+a)^β",
                message=f"sup {s0:.6g} → {s1:.6g}",
            )
            report.fitted[f"{name.upper()}_extended_sup_{alpha}{beta}"] = s1
    return report


def _mikhlin_weighted(spec: FlagKernelSpec, points: np.ndarray, orders) -> np.ndarray:
    """각 점의 (|ξ|+|η|^{1/2})^{α+2β}|∂_ξ^α∂_η^β m|, shape (P, len(orders))"""
    def one(p):
        xi, eta = p
        rho = abs(xi) + math.sqrt(abs(eta))
        hx, he = MIKHLIN_REL_STEP * rho, MIKHLIN_REL_STEP * rho * rho
        vals = {(i, j): multiplier_value(spec, xi + i * hx, eta + j * he) for i in (-1, 0, 1) for j in (-1, 0, 1)}
        out = []
        for alpha, beta in orders:
            acc = 0j
            for i, wi in _STENCILS[alpha].items():
                for j, wj in _STENCILS[beta].items():
                    acc += wi * wj * vals[(i, j)]
            out.append(rho ** (alpha + 2 * beta) * abs(acc / (hx**alpha * he**beta)))
        return out

    return np.array(parallel_map(one, [tuple(p) for p in points], desc="Mikhlin stencil"))


def default_mikhlin_grid(n: int = 4) -> np.ndarray:
    """|η| > 4ξ² 영역: η ∈ [2^-2, 2^2], ξ = ±t·η^{1/2}/2, t ∈ (0, 1)"""
    etas = 2.0 ** np.linspace(-2, 2, n)
    fracs = np.array([0.2, 0.6, 0.9])
    pts = [(s * f * math.sqrt(e) / 2.0, e) for e in etas for f in fracs for s in (-1.0, 1.0)]
    return np.array(pts)


def default_overlap_grid(slope_c: float = 1.0, n: int = 4) -> np.ndarray:
    """겹침 띠 c|η|^{1/2} ≤ |ξ| ≤ 2c|η|^{1/2}, η ∈ [2^-2, 2^2]"""
    if slope_c <= 0:
        raise ArgumentError(f"slope_c must be positive, got {slope_c}")
    etas = 2.0 ** np.linspace(-2, 2, n)
    fracs = np.array([1.0, 1.5, 2.0])
    pts = [(s * f * slope_c * math.sqrt(e), e) for e in etas for f in fracs for s in (-1.0, 1.0)]
    return np.array(pts)


def mikhlin_check(
    spec: FlagKernelSpec,
    region_grid=None,
    orders: Sequence[tuple] = ALL_ORDERS,
    lambdas: Sequence[float] = DEFAULT_LAMBDAS,
    overlap_grid=None,
) -> EstimateReport:
    """포물선 위쪽 영역의 비등방 Mikhlin 부등식과 포물선 확대 안정성"""
    orders = _validate_orders(orders, 2)
    pts = np.asarray(region_grid if region_grid is not None else default_mikhlin_grid(), dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] == 0:
        raise ArgumentError("region_grid must be a list of (ξ, η) points")
    if np.any(np.abs(pts[:, 1]) <= 4.0 * pts[:, 0] ** 2) or np.any(pts[:, 1] == 0):
        raise ArgumentError("region_grid must lie inside |η| > 4ξ² with η ≠ 0")
    band = None
    if overlap_grid is not None:
        band = np.asarray(overlap_grid, dtype=float)
        if band.ndim != 2 or band.shape[1] != 2 or band.shape[0] == 0 or np.any(band[:, 1] == 0):
            raise ArgumentError("overlap_grid must be a list of (ξ, η) points with η ≠ 0")

    print(f"🧮 [Decomposition] Mikhlin 검사: 점 {len(pts)}개, λ {len(lambdas)}개")
    sups = []
    for lam in lambdas:
        scaled_pts = np.column_stack([lam * pts[:, 0], lam * lam * pts[:, 1]])
        sups.append(_mikhlin_weighted(spec, scaled_pts, orders).max(axis=0))
    sups = np.array(sups)

    report = EstimateReport(suite="mikhlin")
    for k, (alpha, beta) in enumerate(orders):
        col = sups[:, k]
        drift = float((col.max() - col.min()) / col.max()) if col.max() > 0 else 0.0
        report.check(
            f"(α,β)=({alpha},{beta}) parabolic dilation drift",
            drift,
            scaled(DILATION_TOL),
            orders=(alpha, beta),
            weight="(|ξ|+|η|^{1/2})^{α+2β}",
            message=f"sup={col[0]:.6g}",
        )
        report.fitted[f"mikhlin_sup_{alpha}{beta}"] = float(col[0])
        report.series[f"dilation_{alpha}{beta}"] = {"lambda": list(map(float, lambdas)), "sup": col.tolist()}

    if band is not None:
        band_sups = _mikhlin_weighted(spec, band, orders).max(axis=0)
        for k, (alpha, beta) in enumerate(orders):
            if sups[0, k] > 0:
                ratio = band_sups[k] / sups[0, k]
            else:
                ratio = 0.0 if band_sups[k] == 0 else math.inf
            report.check(
                f"(α,β)=({alpha},{beta}) overlap band consistency",
                float(ratio),
                scaled(2.0),
                orders=(alpha, beta),
                expected="band sup ≤ 2 × region sup",
            )
            report.fitted[f"overlap_sup_{alpha}{beta}"] = float(band_sups[k])
    return report


def _transform_l2(result: DecompositionResult, delta: float, a_grid: np.ndarray, a_max: float) -> np.ndarray:
    """T(a) = ∫ e^{-2πiau} (1/u) Φ(u) L₂(u, δ) du  (끝단은 η₀(u/a_max) 로 감쇠)"""
    c = result.phi.slope_c
    octaves = math.log2(a_max / c)
    pos = np.geomspace(c, a_max, int(octaves * 32) + 1)
    knots_u = np.concatenate([-pos[::-1], np.linspace(-0.5 * c, 0.5 * c, 5), pos])
    samples = np.zeros(knots_u.size, dtype=complex)
    active = np.abs(knots_u) >= c
    vals = parallel_map(lambda u: result.l2_eval(float(u), delta), knots_u[active], desc=f"L2 table δ={delta:.3g}")
    samples[active] = np.array(vals)
    with np.errstate(divide="ignore", invalid="ignore"):
        g = np.where(active, result.phi.of_a(knots_u) * samples / knots_u, 0.0)
    k = Kernel1D(
        family=KernelFamily.TABULATED,
        epsilon=0.0,
        big_n=math.inf,
        table_t=knots_u,
        table_k=g,
        window=CutoffWindow(radius=a_max, part="near"),
    )
    return np.array([evaluate_fast_with_info(OscIntegralSpec(k, (float(a), 0.0))).value for a in a_grid])


def asymptotic_relation_check(
    result: DecompositionResult,
    r_max: int = 1,
    a_grid: Sequence[float] = None,
    deltas: Sequence[float] = None,
) -> EstimateReport:
    """L₁ ∼ FT{(1/x)L₂(ηx,η)}(ξ): 비례 상수 λ 적합 후 차이의 a-감쇠"""
    if not 0 <= r_max <= 1:
        raise ArgumentError(f"r_max must be 0 or 1, got {r_max}")
    if result.l1_eval is None or result.l2_eval is None:
        raise ArgumentError("decomposition result carries no evaluators")
    a = np.asarray(a_grid if a_grid is not None else np.geomspace(8.0, 256.0, 12), dtype=float)
    if a.min() < 8.0 or a.max() > 256.0:
        raise ArgumentError("a-grid must lie in [8, 256]")
    deltas = np.asarray(deltas if deltas is not None else result.l1.axis_y, dtype=float)
    if deltas.size < 3:
        raise ConfigurationError("δ-uniformity needs ≥ 3 values of δ")

    print(f"🧮 [Decomposition] 점근 관계 검사: δ {deltas.size}개, r ≤ {r_max}")
    slopes = {r: [] for r in range(r_max + 1)}
    lambdas = []
    for delta in deltas:
        t = _transform_l2(result, float(delta), a, a_max=2.0 * a.max())
        l1 = np.array([result.l1_eval(float(v), float(delta)) for v in a])
        denom = float(np.vdot(t, t).real)
        lam = complex(np.vdot(t, l1) / denom) if denom > 0 else 0j
        lambdas.append(lam)
        diff = l1 - lam * t
        for r in range(r_max + 1):
            d = diff if r == 0 else np.gradient(diff, a)
            slopes[r].append(_slope(1.0 + a, np.abs(d)))

    report = EstimateReport(suite="asymptotic_relation")
    for r in range(r_max + 1):
        s = np.array(slopes[r])
        report.check(
            f"decay slope r={r}",
            float(np.nanmax(s)),
            -(r + 1) + SLOPE_SLACK,
            orders=(r,),
            weight="(1+|a|)^{r+1}",
            expected=f"≤ {-(r + 1) + SLOPE_SLACK:g}",
        )
        report.check(
            f"slope spread across δ r={r}",
            float(np.nanmax(s) - np.nanmin(s)),
            scaled(SLOPE_SPREAD_TOL),
            orders=(r,),
        )
        report.series[f"slopes_r{r}"] = {"delta": deltas.tolist(), "slope": s.tolist()}
    report.fitted["lambda_abs_mean"] = float(np.mean(np.abs(lambdas)))
    return report
