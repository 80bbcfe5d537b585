# src/kernels1d/kernels.py
"""1차원 Calderón–Zygmund 커널: 절단 k_{ε,N}, 확대 k^δ, 점질량

k^δ(t) = δ^{-1} k_{ε,N}(t/δ) 이므로 절단 shell 도 [δε, δN] 으로 함께 확대된다.
"""

import dataclasses
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Optional

import numpy as np
from scipy.interpolate import CubicSpline

from common import ArgumentError, KernelDomainError
from .bumps import CutoffWindow

DEFAULT_EPSILON = 2.0**-12
DEFAULT_BIG_N = 2.0**12


class KernelFamily(str, Enum):
    RECIPROCAL = "principal-value-reciprocal"   # 1/t
    SIGNED_POWER = "signed-power"               # sgn(t)|t|^{-1}
    OSCILLATING = "oscillating-homogeneous"     # e^{iθ log|t|}/t
    TABULATED = "custom-tabulated"
    POINT_MASS = "point-mass"                   # 함수 부분 없음, delta_mass 만

    @property
    def homogeneous(self) -> bool:
        return self in (KernelFamily.RECIPROCAL, KernelFamily.SIGNED_POWER, KernelFamily.OSCILLATING)


@dataclass(frozen=True)
class Kernel1D:
    """1차원 CZ 커널 명세 (생성 후 불변)"""
    family: KernelFamily = KernelFamily.RECIPROCAL
    epsilon: float = DEFAULT_EPSILON
    big_n: float = DEFAULT_BIG_N
    delta: float = 1.0
    delta_mass: complex = 0j
    coefficient: complex = 1.0
    log_frequency: float = 1.0
    modulation: float = 0.0
    table_t: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
    table_k: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
    window: Optional[CutoffWindow] = None

    def __post_init__(self):
        object.__setattr__(self, "family", KernelFamily(self.family))
        object.__setattr__(self, "delta_mass", complex(self.delta_mass))
        object.__setattr__(self, "coefficient", complex(self.coefficient))
        if self.epsilon < 0:
            raise ArgumentError("epsilon must be non-negative")
        if not self.epsilon < self.big_n:
            raise ArgumentError(f"epsilon ({self.epsilon}) must be smaller than big_n ({self.big_n})")
        if self.delta <= 0:
            raise ArgumentError("delta must be positive")

        if self.family == KernelFamily.TABULATED:
            if self.table_t is None or self.table_k is None:
                raise ArgumentError("custom-tabulated kernel needs table_t and table_k")
            t = np.asarray(self.table_t, dtype=float)
            k = np.asarray(self.table_k, dtype=complex)
            if t.ndim != 1 or t.shape != k.shape or t.size < 4:
                raise ArgumentError("table_t and table_k must be 1-D arrays of equal length ≥ 4")
            if not np.all(np.diff(t) > 0):
                raise ArgumentError("table_t must be strictly increasing")
            object.__setattr__(self, "table_t", t)
            object.__setattr__(self, "table_k", k)

    def with_(self, **changes) -> "Kernel1D":
        return dataclasses.replace(self, **changes)

    @property
    def has_function_part(self) -> bool:
        return self.family != KernelFamily.POINT_MASS

    @property
    def theta(self) -> float:
        """|t|^{iθ} 의 θ (1/t, sgn 계열은 0)"""
        return self.log_frequency if self.family == KernelFamily.OSCILLATING else 0.0

    @property
    def shell(self) -> tuple:
        """확대 후 절단 shell [δε, δN]"""
        return self.delta * self.epsilon, self.delta * self.big_n

    def support(self) -> tuple:
        """(lo, hi_plus, hi_minus): |t| 기준 함수 부분의 지지 구간"""
        lo, hi = self.shell
        hi_plus = hi_minus = hi
        if self.family == KernelFamily.TABULATED:
            hi_plus = min(hi_plus, self.delta * max(self.table_t[-1], 0.0))
            hi_minus = min(hi_minus, self.delta * max(-self.table_t[0], 0.0))
        if self.window is not None and self.window.part == "near":
            hi_plus = min(hi_plus, self.window.radius)
            hi_minus = min(hi_minus, self.window.radius)
        return lo, hi_plus, hi_minus

    @cached_property
    def _splines(self) -> tuple:
        t = self.table_t
        return CubicSpline(t, self.table_k.real), CubicSpline(t, self.table_k.imag)

    def _core(self, u: np.ndarray) -> np.ndarray:
        """확대/계수 적용 전 기본 커널 값 (절단 무시)"""
        if self.family in (KernelFamily.RECIPROCAL, KernelFamily.SIGNED_POWER):
            with np.errstate(divide="ignore"):
                if self.family == KernelFamily.RECIPROCAL:
                    return (1.0 / u).astype(complex)
                return (np.sign(u) / np.abs(u)).astype(complex)
        if self.family == KernelFamily.OSCILLATING:
            with np.errstate(divide="ignore", invalid="ignore"):
                return np.exp(1j * self.log_frequency * np.log(np.abs(u))) / u
        if self.family == KernelFamily.TABULATED:
            re, im = self._splines
            inside = (u >= self.table_t[0]) & (u <= self.table_t[-1])
            return np.where(inside, re(u) + 1j * im(u), 0.0)
        return np.zeros_like(u, dtype=complex)


def kernel_values(k: Kernel1D, t) -> np.ndarray:
    """함수 부분 k_{ε,N}^δ(t) (벡터화, 점질량 제외)"""
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape, dtype=complex)
    if not k.has_function_part:
        return out

    u = t / k.delta
    au = np.abs(u)
    mask = (au >= k.epsilon) & (au <= k.big_n) & (au > 0)
    if not np.any(mask):
        return out

    tm = t[mask]
    vals = k.coefficient * k._core(u[mask]) / k.delta
    if k.modulation:
        vals = vals * np.exp(-2j * np.pi * k.modulation * tm)
    if k.window is not None:
        vals = vals * k.window.values(tm)
    out[mask] = vals
    return out


def eval_kernel(k: Kernel1D, t: float) -> complex:
    """단일 점 평가

    Raises:
        KernelDomainError: 내부 절단이 없는 주값 커널을 t=0 에서 평가한 경우
    """
    if t == 0 and k.epsilon == 0 and k.family.homogeneous:
        raise KernelDomainError("principal-value kernel is not defined at t=0 without inner truncation")
    return complex(kernel_values(k, np.array([t], dtype=float))[0])


def _homogeneous_factors(theta: float, order: int) -> np.ndarray:
    """c_n = Π_{j<n} (iθ - 1 - j),  n = 0..order"""
    c = np.ones(order + 1, dtype=complex)
    for n in range(1, order + 1):
        c[n] = c[n - 1] * (1j * theta - 1 - (n - 1))
    return c


def kernel_derivatives(k: Kernel1D, t, order: int) -> np.ndarray:
    """매끄러운 연장의 도함수 k^{(n)}(t), n = 0..order

    절단 shell 은 무시한다 (적분 구간 끝점에서의 안쪽 극한).
    window 가 있으면 전이 구간 밖에서만 호출해야 한다.

    Returns:
        shape (order+1, len(t)) 복소 배열
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.zeros((order + 1, t.size), dtype=complex)
    if not k.has_function_part:
        return out

    u = t / k.delta
    if k.family.homogeneous:
        core = k._core(u)
        c = _homogeneous_factors(k.theta, order)
        for n in range(order + 1):
            out[n] = c[n] * core / u**n
    else:
        re, im = k._splines
        inside = (u >= k.table_t[0]) & (u <= k.table_t[-1])
        for n in range(min(order, 3) + 1):
            out[n] = np.where(inside, re(u, n) + 1j * im(u, n), 0.0)

    # 확대: d^n/dt^n δ^{-1}g(t/δ) = δ^{-1-n} g^{(n)}(t/δ)
    for n in range(order + 1):
        out[n] *= k.coefficient / k.delta ** (1 + n)

    if k.modulation:
        w = -2j * np.pi * k.modulation
        e = np.exp(w * t)
        base = out.copy()
        for n in range(order + 1):
            out[n] = sum(math.comb(n, j) * base[n - j] * w**j for j in range(n + 1)) * e

    if k.window is not None:
        lo, hi = k.window.transition
        at = np.abs(t)
        if np.any((at > lo) & (at < hi)):
            raise ArgumentError("kernel_derivatives called inside the cutoff transition band")
        out *= k.window.values(t)[None, :]
    return out


def closed_form_decay_constant(k: Kernel1D, alpha: int) -> float:
    """동차 계열의 sup |t|^{1+α}|∂^α k(t)| 닫힌 형태 (= |Π (iθ-1-j)|)"""
    if not k.family.homogeneous or k.modulation or k.window is not None:
        raise ArgumentError("closed-form constants exist only for unmodulated homogeneous families")
    return float(abs(k.coefficient) * abs(_homogeneous_factors(k.theta, alpha)[alpha]))


def reflect_conjugate(k: Kernel1D) -> Kernel1D:
    """k̃(t) = conj(k(-t))"""
    changes = {"delta_mass": k.delta_mass.conjugate()}
    if k.family.homogeneous:
        changes["coefficient"] = -k.coefficient.conjugate()
        if k.family == KernelFamily.OSCILLATING:
            changes["log_frequency"] = -k.log_frequency
    elif k.family == KernelFamily.TABULATED:
        changes["table_t"] = -k.table_t[::-1].copy()
        changes["table_k"] = np.conj(k.table_k[::-1]).copy()
        changes["coefficient"] = k.coefficient.conjugate()
    return k.with_(**changes)


def point_mass(c: complex = 1.0) -> Kernel1D:
    """점질량만 있는 커널 c·δ₀"""
    return Kernel1D(family=KernelFamily.POINT_MASS, delta_mass=c)
