# src/decomposition/coords.py
"""포물선 극좌표 (a, δ) 와 cutoff Φ

ξ = aδ,  η = δ²  (η > 0 반평면; η < 0 은 켤레 반사로 처리)
"""

import math
from dataclasses import dataclass, field

import numpy as np

from common import ArgumentError, ConfigurationError
from kernels1d import Profile, plateau_cutoff


@dataclass(frozen=True)
class ParabolicPoint:
    a: float
    delta: float

    def __post_init__(self):
        if not self.delta > 0:
            raise ArgumentError("parabolic radius δ must be positive")

    @property
    def xi(self) -> float:
        return self.a * self.delta

    @property
    def eta(self) -> float:
        return self.delta * self.delta

    @classmethod
    def from_xi_eta(cls, xi: float, eta: float) -> "ParabolicPoint":
        if not eta > 0:
            raise ArgumentError("parabolic coordinates need η > 0")
        delta = math.sqrt(eta)
        return cls(a=xi / delta, delta=delta)


@dataclass(frozen=True)
class CutoffPhi:
    """Φ(ξ,η): |ξ| ≤ c|η|^{1/2} 에서 0, |ξ| ≥ c·2^w |η|^{1/2} 에서 1

    전이는 log2(|a|/c)/w 위의 mollifier 계단.
    """
    slope_c: float = 1.0
    transition_width: float = 1.0
    profile: Profile = Profile.MOLLIFIER

    def __post_init__(self):
        if self.slope_c <= 0 or self.transition_width <= 0:
            raise ArgumentError("slope_c and transition_width must be positive")

    def of_a(self, a) -> np.ndarray:
        """a = ξ/η^{1/2} 의 함수로서 Φ"""
        aa = np.abs(np.asarray(a, dtype=float))
        with np.errstate(divide="ignore"):
            s = np.clip(np.log2(np.where(aa > 0, aa, 1e-300) / self.slope_c) / self.transition_width, 0.0, 1.0)
        # plateau_cutoff 의 내부 변수 2|t|-1 이 s 가 되도록 t = (1+s)/2
        return 1.0 - plateau_cutoff(self.profile, 0.5 * (1.0 + s))

    def __call__(self, xi, eta) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        eta = np.abs(np.asarray(eta, dtype=float))
        with np.errstate(divide="ignore", invalid="ignore"):
            a = np.where(eta > 0, xi / np.sqrt(np.where(eta > 0, eta, 1.0)), np.inf)
        return self.of_a(a)

    @property
    def full_from(self) -> float:
        """Φ ≡ 1 이 시작되는 |a|"""
        return self.slope_c * 2.0**self.transition_width


@dataclass
class ParabolicGrid:
    """a × δ 직사각 격자 (a 는 burst 단위로 묶여 있음)"""
    a_values: np.ndarray
    delta_values: np.ndarray
    burst_ids: np.ndarray = field(default=None)

    def __post_init__(self):
        self.a_values = np.asarray(self.a_values, dtype=float)
        self.delta_values = np.asarray(self.delta_values, dtype=float)
        if self.burst_ids is None:
            self.burst_ids = np.zeros(self.a_values.size, dtype=int)
        self.burst_ids = np.asarray(self.burst_ids, dtype=int)
        if self.a_values.size == 0 or self.delta_values.size == 0:
            raise ArgumentError("parabolic grid must not be empty")
        if np.any(self.delta_values <= 0):
            raise ArgumentError("δ values must be positive")
        if not (np.all(np.diff(self.a_values) > 0) and np.all(np.diff(self.delta_values) > 0)):
            raise ArgumentError("grid axes must be strictly increasing")

    def points(self) -> list[ParabolicPoint]:
        return [ParabolicPoint(float(a), float(d)) for a in self.a_values for d in self.delta_values]


def burst_grid(
    delta_values,
    a_centers=(8.0, 16.0, 24.0, 32.0, 48.0),
    burst_len: int = 8,
    ds: float = 0.25,
) -> ParabolicGrid:
    """s = a² 에서 간격 ds 로 균등한 burst 들의 합집합

    같은 burst 안에서는 위상이 ds·c′ < π 만큼씩만 변하므로 풀기가 가능하다.
    """
    if burst_len < 3:
        raise ConfigurationError("bursts need at least 3 points")
    a_list, ids = [], []
    for b, center in enumerate(sorted(a_centers)):
        s = center**2 + ds * np.arange(burst_len)
        a_list.append(np.sqrt(s))
        ids.append(np.full(burst_len, b))
    a = np.concatenate(a_list)
    order = np.argsort(a)
    a, ids = a[order], np.concatenate(ids)[order]
    if np.any(np.diff(a) <= 0):
        raise ConfigurationError("bursts overlap; spread the burst centers")
    return ParabolicGrid(a_values=a, delta_values=np.asarray(delta_values, dtype=float), burst_ids=ids)


def default_delta_values(lo_exp: int = -12, hi_exp: int = -8) -> np.ndarray:
    return 2.0 ** np.arange(lo_exp, hi_exp + 1, dtype=float)
