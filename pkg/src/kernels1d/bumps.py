# src/kernels1d/bumps.py
"""정규화 bump 함수와 plateau cutoff

- mollifier: exp(-1/(1-t²)) (|t|<1), 그 외 0
- cosine-squared: cos²(πt/2) (|t|<1), 그 외 0
- cancellative=True 이면 프로파일의 도함수를 bump 로 사용 (평균 0)
- 정규화: 스케일 적용 후 C^0, C^1 노름이 모두 1 이하
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from common import ArgumentError

# 정규화 상수 계산용 표본 수
_NORM_SAMPLES = 20001


class Profile(str, Enum):
    MOLLIFIER = "mollifier"
    COSINE_SQUARED = "cosine-squared"


def _mollifier(t: np.ndarray, derivative: int) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    inside = np.abs(t) < 1.0
    s = t[inside]
    q = 1.0 - s * s
    f = np.exp(-1.0 / q)
    if derivative == 0:
        out[inside] = f
    elif derivative == 1:
        out[inside] = f * (-2.0 * s / q**2)
    elif derivative == 2:
        out[inside] = f * (4.0 * s * s / q**4 - 2.0 / q**2 - 8.0 * s * s / q**3)
    else:
        raise ArgumentError(f"mollifier derivative order {derivative} not available")
    return out


def _cosine_squared(t: np.ndarray, derivative: int) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    inside = np.abs(t) < 1.0
    s = t[inside]
    if derivative == 0:
        out[inside] = np.cos(np.pi * s / 2.0) ** 2
    elif derivative == 1:
        out[inside] = -(np.pi / 2.0) * np.sin(np.pi * s)
    elif derivative == 2:
        out[inside] = -(np.pi**2 / 2.0) * np.cos(np.pi * s)
    else:
        raise ArgumentError(f"cosine-squared derivative order {derivative} not available")
    return out


_PROFILES = {
    Profile.MOLLIFIER: _mollifier,
    Profile.COSINE_SQUARED: _cosine_squared,
}


def profile_values(profile: Profile, t, derivative: int = 0) -> np.ndarray:
    """프로파일 함수(또는 그 도함수) 값"""
    return _PROFILES[Profile(profile)](t, derivative)


@lru_cache(maxsize=None)
def _raw_sups(profile: Profile, cancellative: bool) -> tuple:
    """스케일 1 기준 (sup|g|, sup|g'|)"""
    t = np.linspace(-1.0, 1.0, _NORM_SAMPLES)
    offset = 1 if cancellative else 0
    g = profile_values(profile, t, offset)
    dg = profile_values(profile, t, offset + 1)
    return float(np.max(np.abs(g))), float(np.max(np.abs(dg)))


@dataclass(frozen=True)
class BumpSpec:
    """정규화된 bump 함수 명세"""
    profile: Profile = Profile.MOLLIFIER
    scale: float = 1.0
    cancellative: bool = False

    def __post_init__(self):
        object.__setattr__(self, "profile", Profile(self.profile))
        if not (0.0 < self.scale <= 1.0):
            raise ArgumentError(f"bump scale must lie in (0, 1], got {self.scale}")

    @property
    def normalization(self) -> float:
        sup0, sup1 = _raw_sups(self.profile, self.cancellative)
        return max(sup0, sup1 / self.scale)

    def values(self, t) -> np.ndarray:
        """φ(t) (정규화 포함)"""
        u = np.asarray(t, dtype=float) / self.scale
        offset = 1 if self.cancellative else 0
        return profile_values(self.profile, u, offset) / self.normalization

    def derivative(self, t) -> np.ndarray:
        """φ'(t)"""
        u = np.asarray(t, dtype=float) / self.scale
        offset = 1 if self.cancellative else 0
        return profile_values(self.profile, u, offset + 1) / (self.normalization * self.scale)


def bump_values(bump: BumpSpec, t) -> np.ndarray:
    return bump.values(t)


def plateau_cutoff(profile: Profile, t) -> np.ndarray:
    """|t| ≤ 1/2 에서 1, |t| ≥ 1 에서 0 인 매끄러운 cutoff η₀"""
    s = np.clip(2.0 * np.abs(np.asarray(t, dtype=float)) - 1.0, 0.0, 1.0)
    if Profile(profile) == Profile.COSINE_SQUARED:
        return np.cos(np.pi * s / 2.0) ** 2

    def f(u):
        safe = np.where(u > 0, u, 1.0)
        return np.where(u > 0, np.exp(-1.0 / safe), 0.0)

    a, b = f(1.0 - s), f(s)
    return a / (a + b)


@dataclass(frozen=True)
class CutoffWindow:
    """커널에 곱하는 근방/원방 cutoff

    part="near": η₀(t/R), part="far": 1 - η₀(t/R)
    """
    radius: float = 1.0
    part: str = "near"
    profile: Profile = Profile.MOLLIFIER

    def __post_init__(self):
        object.__setattr__(self, "profile", Profile(self.profile))
        if self.part not in ("near", "far"):
            raise ArgumentError(f"window part must be 'near' or 'far', got {self.part!r}")
        if self.radius <= 0:
            raise ArgumentError("window radius must be positive")

    def values(self, t) -> np.ndarray:
        eta0 = plateau_cutoff(self.profile, np.asarray(t, dtype=float) / self.radius)
        return eta0 if self.part == "near" else 1.0 - eta0

    @property
    def transition(self) -> tuple:
        """cutoff 가 상수가 아닌 |t| 구간"""
        return 0.5 * self.radius, self.radius
