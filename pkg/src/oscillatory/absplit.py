# src/oscillatory/absplit.py
"""I_k(x) 의 A/B 분해와 점근 관계 검사

A(x) = I_{k·η₀}(x)            (원점 근방 부분, A ~ k̂)
B(x) = e^{-iπx²} I_{k·η∞}(x)  (원방 부분의 위상 보정, B ~ e^{-iπ/4} k(-x))
I_k(x) = A(x) + e^{iπx²} B(x)

e^{-iπt²} 의 푸리에 변환은 e^{-iπ/4} e^{iπx²} (주 가지) 이므로
2π 정규화 규약에서 원방 부분의 진동 인자는 e^{+iπx²} 이다.
"""

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from common import ArgumentError, parallel_map, scaled
from evaluation.report import EstimateReport
from kernels1d import BumpSpec, CutoffWindow, Kernel1D, KernelFamily, Profile
from .evaluators import Method, OscIntegralSpec, evaluate_fast_with_info, evaluate_oracle_with_info

FRESNEL_BRANCH = complex(np.exp(-1j * np.pi / 4))     # (i)^{-1/2}
ASYMPTOTIC_MIN_X = 4.0
DECAY_X_RANGE = (4.0, 256.0)
FD_REL_STEP = 2e-2
DRIFT_TOL = 0.10
FAMILY_GROWTH_TOL = 1.0     # 족 확장 시 상수 증가 허용 (2배 미만)


@dataclass
class ABSplit:
    x_grid: np.ndarray
    a_values: np.ndarray
    b_values: np.ndarray
    cutoff: BumpSpec = field(default_factory=BumpSpec)
    method: str = "oracle"

    def reconstruct(self) -> np.ndarray:
        """A(x) + e^{iπx²} B(x)"""
        return self.a_values + np.exp(1j * np.pi * self.x_grid**2) * self.b_values


def _parts(k: Kernel1D, cutoff: BumpSpec) -> tuple:
    near = k.with_(window=CutoffWindow(radius=1.0, part="near", profile=cutoff.profile))
    # 점질량은 η₀(0)=1 이므로 A 쪽에만 들어간다
    far = k.with_(window=CutoffWindow(radius=1.0, part="far", profile=cutoff.profile), delta_mass=0j)
    return near, far


def _fresnel_value(k: Kernel1D, x: float, method: Method) -> complex:
    spec = OscIntegralSpec(k, (x, 0.5), method)
    if method == Method.ORACLE:
        return evaluate_oracle_with_info(spec).value
    return evaluate_fast_with_info(spec).value


def _ab_at(near: Kernel1D, far: Kernel1D, x: np.ndarray, method: Method) -> tuple:
    a = np.array([_fresnel_value(near, float(v), method) for v in x])
    far_part = np.array([_fresnel_value(far, float(v), method) for v in x])
    return a, np.exp(-1j * np.pi * x**2) * far_part


def ab_split(
    k: Kernel1D,
    x_grid: Sequence[float],
    cutoff: BumpSpec = None,
    method: Method | str = Method.ORACLE,
) -> ABSplit:
    """I_k 의 A/B 분해

    Args:
        k: 커널 (점질량은 A 에 상수로 들어간다)
        x_grid: 평가 위치
        cutoff: η₀ 의 프로파일을 정하는 bump (η₀ 는 |t|≤1/2 에서 1, |t|≥1 에서 0)
        method: oracle (유한 N 필요) 또는 fast (N=∞ 허용)
    """
    x = np.asarray(x_grid, dtype=float)
    if x.ndim != 1 or x.size == 0:
        raise ArgumentError("x_grid must be a non-empty 1-D list")
    cutoff = cutoff or BumpSpec(Profile.MOLLIFIER)
    method = Method(method)
    near, far = _parts(k, cutoff)

    chunks = np.array_split(x, max(1, min(x.size, 16)))
    pieces = parallel_map(lambda c: _ab_at(near, far, c, method), chunks, desc="A/B split")
    a = np.concatenate([p[0] for p in pieces])
    b = np.concatenate([p[1] for p in pieces])
    return ABSplit(x_grid=x, a_values=a, b_values=b, cutoff=cutoff, method=method.value)


def ab_leading_order_check(
    k: Kernel1D,
    cutoff: BumpSpec = None,
    method: Method | str = Method.ORACLE,
    x_range: tuple = (8.0, 256.0),
    points: int = 12,
    a_point: float = 64.0,
) -> EstimateReport:
    """x·B(x) 의 상수 수렴과 A(x) → k̂(x) 검사 (1/t 계열)

    기준값: k = c/t 이면 x·B(x) → -c·e^{-iπ/4}, A(x) → -iπc·sgn(x).
    """
    if min(x_range[0], a_point) < ASYMPTOTIC_MIN_X:
        raise ArgumentError(f"asymptotic checks need |x| ≥ {ASYMPTOTIC_MIN_X:g}")
    x = np.geomspace(x_range[0], x_range[1], points)
    grid = np.concatenate([x, [a_point, -a_point]])
    split = ab_split(k, grid, cutoff, method)

    xb = x * split.b_values[:points]
    drift = float(np.max(np.abs(xb - xb[-1])) / max(abs(xb[-1]), 1e-300))

    report = EstimateReport(suite="ab_split")
    report.check(
        "x·B(x) relative drift",
        drift,
        scaled(DRIFT_TOL),
        orders=(0,),
        weight="|x|",
        message=f"limit≈{xb[-1]:.6g}, Fresnel reference {-k.coefficient * FRESNEL_BRANCH:.6g}",
    )

    a_ref = -1j * np.pi * k.coefficient * np.sign([a_point, -a_point])
    a_err = float(np.max(np.abs(split.a_values[points:] - a_ref)) / abs(a_ref[0]))
    report.check(
        f"A(±{a_point:g}) vs -iπ·sgn(x)",
        a_err,
        scaled(DRIFT_TOL),
        orders=(0,),
        message=f"A({a_point:g})={split.a_values[points]:.6g}",
    )

    recon = split.reconstruct()
    report.fitted["x_b_limit_re"] = float(xb[-1].real)
    report.fitted["x_b_limit_im"] = float(xb[-1].imag)
    report.series["x_b"] = {"x": x.tolist(), "re": xb.real.tolist(), "im": xb.imag.tolist()}
    report.series["reconstruction"] = {"x": grid.tolist(), "abs": np.abs(recon).tolist()}
    return report


def _fd_weighted_sups(near: Kernel1D, far: Kernel1D, x: np.ndarray, j_max: int, method: Method) -> dict:
    """|x|^j |∂^j A|, |x|^{1+j} |∂^j B| (x 상대 스텝 중앙 차분)"""
    h = FD_REL_STEP * np.abs(x)
    cols = {o: _ab_at(near, far, x + o * h, method) for o in (-1.0, 0.0, 1.0)}
    out = {}
    for part, idx, extra in (("A", 0, 0), ("B", 1, 1)):
        f_m, f_0, f_p = cols[-1.0][idx], cols[0.0][idx], cols[1.0][idx]
        derivs = [f_0, (f_p - f_m) / (2 * h), (f_p - 2 * f_0 + f_m) / h**2]
        for j in range(j_max + 1):
            out[(part, j)] = np.abs(x) ** (j + extra) * np.abs(derivs[j])
    return out


def _midpoints(x: np.ndarray) -> np.ndarray:
    """같은 부호 이웃 사이 기하 중점 (2× 격자 세분)"""
    s = np.sort(x)
    same = s[:-1] * s[1:] > 0
    return (np.sign(s[:-1]) * np.sqrt(s[:-1] * s[1:]))[same]


def default_decay_family() -> list[Kernel1D]:
    """{1/t, sgn(t)/|t|, e^{iθ log|t|}/t} (N=∞, fast path)"""
    base = Kernel1D(big_n=math.inf, epsilon=2.0**-16)
    return [
        base,
        base.with_(family=KernelFamily.SIGNED_POWER),
        base.with_(family=KernelFamily.OSCILLATING, log_frequency=1.0),
    ]


def ab_decay_check(
    family: Sequence[Kernel1D],
    j_max: int = 2,
    x_grid: Sequence[float] = None,
    cutoff: BumpSpec = None,
    method: Method | str = Method.FAST,
) -> EstimateReport:
    """family 전체에서 sup |x|^j|∂_j A|, |x|^{1+j}|∂_j B|, 족 확장 안정성과 2× x-격자 세분 안정성

    점질량 원소는 함수 부분이 없어 제외하고 정보 항목으로만 남긴다.
    """
    if not 0 <= j_max <= 2:
        raise ArgumentError(f"j_max must lie in [0, 2], got {j_max}")
    if not family:
        raise ArgumentError("family must not be empty")
    x = np.asarray(x_grid if x_grid is not None else np.geomspace(*DECAY_X_RANGE, 9), dtype=float)
    if np.any(np.abs(x) < DECAY_X_RANGE[0]) or np.any(np.abs(x) > DECAY_X_RANGE[1]):
        raise ArgumentError(f"decay x-grid must lie in ±[{DECAY_X_RANGE[0]:g}, {DECAY_X_RANGE[1]:g}]")
    cutoff = cutoff or BumpSpec(Profile.MOLLIFIER)
    method = Method(method)

    report = EstimateReport(suite="ab_decay")
    members = []
    for idx, k in enumerate(family):
        if not k.has_function_part:
            report.note(
                f"member #{idx} point-mass excluded",
                abs(k.delta_mass),
                message="delta mass has no CZ function part; handled symbolically",
            )
            continue
        members.append((idx, k))
    if not members:
        raise ArgumentError("family holds no kernel with a function part")

    mid = _midpoints(x)
    print(f"🧮 [Oscillatory] A/B 감쇠 검사: 커널 {len(members)}개, j ≤ {j_max}, 세분 점 {mid.size}개")
    per_member = parallel_map(
        lambda item: _fd_weighted_sups(*_parts(item[1], cutoff), x, j_max, method),
        members,
        desc="A/B decay",
    )
    per_member_mid = parallel_map(
        lambda item: _fd_weighted_sups(*_parts(item[1], cutoff), mid, j_max, method),
        members,
        desc="A/B decay (refined)",
    ) if mid.size else []

    for part, extra in (("A", 0), ("B", 1)):
        for j in range(j_max + 1):
            sups = np.array([float(np.max(m[(part, j)])) for m in per_member])
            running = np.maximum.accumulate(sups)
            growth = (running[-1] - running[-2]) / max(running[-2], 1e-300) if running.size > 1 else 0.0
            report.check(
                f"sup |x|^{j + extra}|∂^{j}{part}| family stability",
                float(growth),
                scaled(FAMILY_GROWTH_TOL) if running.size > 1 else math.inf,
                orders=(j,),
                weight=f"|x|^{j + extra}",
                message=f"uniform constant={running[-1]:.6g}",
            )
            report.fitted[f"C_{part}{j}"] = float(running[-1])
            if per_member_mid:
                dense = np.maximum(sups, [float(np.max(m[(part, j)])) for m in per_member_mid])
                drift = float(np.max((dense - sups) / np.maximum(dense, 1e-300)))
                report.check(
                    f"sup |x|^{j + extra}|∂^{j}{part}| grid refinement drift",
                    drift,
                    scaled(DRIFT_TOL),
                    orders=(j,),
                    weight=f"|x|^{j + extra}",
                    expected=f"< {DRIFT_TOL:g} under 2× x-grid",
                )
                report.fitted[f"refine_drift_{part}{j}"] = drift
            report.series[f"{part}{j}"] = {
                "member": [float(i) for i, _ in members],
                "sup": sups.tolist(),
            }
    return report
