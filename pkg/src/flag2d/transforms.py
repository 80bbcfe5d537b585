# src/flag2d/transforms.py
"""bump 의 푸리에 변환 표, y 방향 부분 변환 M_η(x), 평탄 multiplier

b̂(ζ) = ∫ b(t) e^{-2πitζ} dt 를 FFT 로 한 번 계산해 3차 스플라인 표로 보관한다.
"""

from functools import lru_cache

import numpy as np
from scipy.interpolate import CubicSpline

from common import ArgumentError
from kernels1d import BumpSpec, Kernel1D, KernelFamily
from .kernel import FlagKernelSpec

FFT_WINDOW = 256.0          # 영 채움 구간 길이 L (dζ = 1/L)
FFT_STEP = 1.0 / 2048.0     # 표본 간격 dt
TABLE_LIMIT = 256.0         # |ζ| > 256 이면 b̂ = 0 (mollifier 잘림 < 1e-8)
KNOTS_PER_OCTAVE = 32


class BumpTransform:
    """b̂ 표 (실부/허부 CubicSpline)"""

    def __init__(self, bump: BumpSpec):
        self.bump = bump
        n = int(round(FFT_WINDOW / FFT_STEP))
        t = (np.arange(n) - n // 2) * FFT_STEP
        samples = bump.values(t)
        spectrum = FFT_STEP * np.fft.fft(np.fft.ifftshift(samples))
        zeta = np.fft.fftshift(np.fft.fftfreq(n, d=FFT_STEP))
        spectrum = np.fft.fftshift(spectrum)
        keep = np.abs(zeta) <= TABLE_LIMIT
        self.zeta = zeta[keep]
        self.table = spectrum[keep]
        self._re = CubicSpline(self.zeta, self.table.real)
        self._im = CubicSpline(self.zeta, self.table.imag)

    def __call__(self, zeta, derivative: int = 0) -> np.ndarray:
        z = np.asarray(zeta, dtype=float)
        inside = np.abs(z) <= TABLE_LIMIT
        return np.where(inside, self._re(z, derivative) + 1j * self._im(z, derivative), 0.0)


@lru_cache(maxsize=16)
def bump_transform(bump: BumpSpec) -> BumpTransform:
    return BumpTransform(bump)


def partial_ft_y(spec: FlagKernelSpec, x, eta) -> np.ndarray:
    """M_η(x) = ∫ e^{-2πiyη} M(x,y) dy = Σ 2^{-m} b_x(2^{-m}x) b̂_y(2^{m+n}η)"""
    bx, by = spec.bumps
    hat = bump_transform(by)
    x, eta = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(eta, dtype=float))
    out = np.zeros(x.shape, dtype=complex)
    m_min, m_max, n_min, n_max = spec.dyadic_range
    for m in range(m_min, m_max + 1):
        bxm = bx.values(x * 2.0**-m)
        if not np.any(bxm):
            continue
        acc = np.zeros(x.shape, dtype=complex)
        for n in range(n_min, n_max + 1):
            acc += hat(eta * 2.0 ** (m + n))
        out += 2.0**-m * bxm * acc
    return out


def m_eta_knots(spec: FlagKernelSpec, knots_per_octave: int = KNOTS_PER_OCTAVE) -> np.ndarray:
    """M_η 표용 대칭 log 격자 (0 포함)"""
    m_min, m_max, _, _ = spec.dyadic_range
    bx = spec.bumps[0]
    lo, hi = 2.0 ** (m_min - 4), bx.scale * 2.0**m_max
    pos = np.geomspace(lo, hi, int(np.ceil(np.log2(hi / lo) * knots_per_octave)) + 1)
    return np.concatenate([-pos[::-1], [0.0], pos])


def m_eta_kernel(
    spec: FlagKernelSpec,
    eta: float,
    alpha: int = 0,
    knots_per_octave: int = KNOTS_PER_OCTAVE,
    rel_step: float = 1e-3,
) -> Kernel1D:
    """x ↦ η^α ∂_η^α M_η(x) 를 표 커널로

    α=1 은 η 방향 중앙 차분 (상대 스텝 rel_step).
    """
    if eta == 0:
        raise ArgumentError("η = 0 is excluded (M_0 vanishes identically)")
    if alpha not in (0, 1):
        raise ArgumentError(f"alpha must be 0 or 1, got {alpha}")
    t = m_eta_knots(spec, knots_per_octave)
    if alpha == 0:
        values = partial_ft_y(spec, t, eta)
    else:
        h = rel_step * abs(eta)
        values = eta * (partial_ft_y(spec, t, eta + h) - partial_ft_y(spec, t, eta - h)) / (2 * h)
    return Kernel1D(family=KernelFamily.TABULATED, epsilon=0.0, big_n=np.inf, table_t=t, table_k=values)


def flat_multiplier(spec: FlagKernelSpec, xi, eta) -> np.ndarray:
    """평탄 커널의 2차원 변환 M̂(ξ,η) = Σ b̂_x(2^m ξ) b̂_y(2^{m+n} η)"""
    bx, by = spec.bumps
    hx, hy = bump_transform(bx), bump_transform(by)
    xi, eta = np.broadcast_arrays(np.asarray(xi, dtype=float), np.asarray(eta, dtype=float))
    out = np.zeros(xi.shape, dtype=complex)
    m_min, m_max, n_min, n_max = spec.dyadic_range
    for m in range(m_min, m_max + 1):
        fx = hx(xi * 2.0**m)
        if not np.any(fx):
            continue
        acc = np.zeros(xi.shape, dtype=complex)
        for n in range(n_min, n_max + 1):
            acc += hy(eta * 2.0 ** (m + n))
        out += fx * acc
    return out
