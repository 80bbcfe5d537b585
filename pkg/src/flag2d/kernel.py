# src/flag2d/kernel.py
"""평탄 flag 커널 합성과 포물선 shear

M(x,y) = Σ_{m,n} φ^{(m,m+n)}(x,y),
φ^{(j,k)}(x,y) = 2^{-j-k} φ(2^{-j}x, 2^{-k}y),  φ(x,y) = b_x(x)·b_y(y)

즉 각 항은 2^{-2m-n} b_x(2^{-m}x) b_y(2^{-m-n}y).
"""

import dataclasses
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from common import ArgumentError, SampledField
from kernels1d import BumpSpec, Profile

DEFAULT_RANGE = (-8, 8, 0, 8)


class Flag(str, Enum):
    F1 = "F1"   # x 축(y=0) 특이
    F2 = "F2"   # y 축(x=0) 특이


def _default_bumps() -> tuple:
    b = BumpSpec(Profile.MOLLIFIER, cancellative=True)
    return (b, b)


@dataclass(frozen=True)
class FlagKernelSpec:
    """평탄 flag 커널 명세

    Attributes:
        bumps: (x 변수 bump, y 변수 bump), 둘 다 평균 0
        dyadic_range: (m_min, m_max, n_min, n_max), n ≥ 0
        flag: 미분 부등식의 가중 종류
        curvature_c0: K(x,y) = M(x, y - c₀x²) 의 c₀
    """
    bumps: tuple = field(default_factory=_default_bumps)
    dyadic_range: tuple = DEFAULT_RANGE
    flag: Flag = Flag.F1
    curvature_c0: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "flag", Flag(self.flag))
        if len(self.bumps) != 2:
            raise ArgumentError("bumps must be a (x, y) pair")
        if not all(b.cancellative for b in self.bumps):
            raise ArgumentError("flag kernel bumps must both be cancellative")
        m_min, m_max, n_min, n_max = (int(v) for v in self.dyadic_range)
        if n_min < 0:
            raise ArgumentError("n_min must be non-negative")
        if m_min > m_max or n_min > n_max:
            raise ArgumentError(f"empty dyadic range {self.dyadic_range}")
        object.__setattr__(self, "dyadic_range", (m_min, m_max, n_min, n_max))

    def with_(self, **changes) -> "FlagKernelSpec":
        return dataclasses.replace(self, **changes)

    def extended(self, octaves: int) -> "FlagKernelSpec":
        """각 방향으로 octaves 만큼 넓힌 범위 (n_min 은 0 아래로 내려가지 않음)"""
        m_min, m_max, n_min, n_max = self.dyadic_range
        return self.with_(dyadic_range=(m_min - octaves, m_max + octaves, max(0, n_min - octaves), n_max + octaves))

    def terms(self) -> list[tuple]:
        m_min, m_max, n_min, n_max = self.dyadic_range
        return [(m, n) for m in range(m_min, m_max + 1) for n in range(n_min, n_max + 1)]


def _term(spec: FlagKernelSpec, m: int, n: int, x, y) -> np.ndarray:
    bx, by = spec.bumps
    return 2.0 ** (-2 * m - n) * bx.values(x * 2.0**-m) * by.values(y * 2.0 ** (-m - n))


def contributing_terms(spec: FlagKernelSpec, x: float, y: float) -> list[tuple]:
    """(x,y) 를 지지 구간에 포함하는 (m,n) 항"""
    bx, by = spec.bumps
    m_min, m_max, n_min, n_max = spec.dyadic_range
    out = []
    for m in range(m_min, m_max + 1):
        if abs(x) >= bx.scale * 2.0**m:
            continue
        for n in range(n_min, n_max + 1):
            if abs(y) < by.scale * 2.0 ** (m + n):
                out.append((m, n))
    return out


def eval_flag_kernel(spec: FlagKernelSpec, x: float, y: float) -> float:
    """절단 합 M(x,y) (지지 구간이 (x,y) 를 포함하는 항만 합산)"""
    xs, ys = np.array([float(x)]), np.array([float(y)])
    return float(sum(_term(spec, m, n, xs, ys)[0] for m, n in contributing_terms(spec, float(x), float(y))))


def flag_kernel_values(spec: FlagKernelSpec, x, y) -> np.ndarray:
    """M(x,y) 벡터화 (x, y 는 브로드캐스트 가능)"""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    out = np.zeros(x.shape, dtype=float)
    if x.size == 0:
        return out
    bx, by = spec.bumps
    ax_min, ay_min = float(np.min(np.abs(x))), float(np.min(np.abs(y)))
    for m, n in spec.terms():
        if ax_min >= bx.scale * 2.0**m or ay_min >= by.scale * 2.0 ** (m + n):
            continue
        # 큰 스케일 항도 모든 점에서 기여하므로 상한으로 거르지 않는다
        out += _term(spec, m, n, x, y)
    return out


def shear(spec: FlagKernelSpec) -> Callable:
    """(x,y) ↦ M(x, y - c₀x²)"""
    c0 = spec.curvature_c0

    def evaluator(x, y):
        x = np.asarray(x, dtype=float)
        return flag_kernel_values(spec, x, np.asarray(y, dtype=float) - c0 * x * x)

    return evaluator


def sample_curved_kernel(spec: FlagKernelSpec, axis_x, axis_y) -> SampledField:
    """K(x,y) = M(x, y - c₀x²) 를 직사각 격자에 샘플링"""
    ax = np.asarray(axis_x, dtype=float)
    ay = np.asarray(axis_y, dtype=float)
    evaluator = shear(spec)
    values = evaluator(ax[:, None], ay[None, :])
    return SampledField(
        axis_x=ax,
        axis_y=ay,
        values=values,
        axis_tags=("uniform", "uniform"),
        quad_weight="riemann",
        names=("x", "y"),
        evaluator=evaluator,
        meta={"curvature_c0": spec.curvature_c0, "dyadic_range": list(spec.dyadic_range), "flag": spec.flag.value},
    )
