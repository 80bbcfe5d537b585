# src/lp_operator/apply.py
"""FFT 로 multiplier 적용: Tf = F⁻¹[m · F f]"""

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from common import ArgumentError, DataError, SampledField
from decomposition import CutoffPhi
from flag2d import FlagKernelSpec, flat_multiplier, sample_curved_kernel
from .torus import TorusGrid

LATTICE_RTOL = 1e-9
MIN_RESOLVED_CELLS = 2.0


def _zero_row(axis: np.ndarray) -> int:
    hits = np.flatnonzero(np.abs(axis) <= 1e-12 * max(1.0, float(np.abs(axis).max())))
    return int(hits[0]) if hits.size else -1


def _fill_eta0(values: np.ndarray, eta_axis: np.ndarray) -> tuple:
    """η=0 행을 양옆 두 행의 평균으로 (연속 확장)"""
    j = _zero_row(eta_axis)
    if j <= 0 or j >= eta_axis.size - 1:
        return values, False
    values = values.copy()
    values[:, j] = 0.5 * (values[:, j - 1] + values[:, j + 1])
    return values, True


def _on_lattice(m: SampledField, grid: TorusGrid) -> tuple:
    """m 을 f 의 주파수 격자로 옮긴다 (같은 격자면 그대로)"""
    lattice = grid.frequencies
    same = (
        m.axis_x.size == lattice.size
        and m.axis_y.size == lattice.size
        and np.allclose(m.axis_x, lattice, rtol=LATTICE_RTOL, atol=LATTICE_RTOL / grid.side)
        and np.allclose(m.axis_y, lattice, rtol=LATTICE_RTOL, atol=LATTICE_RTOL / grid.side)
    )
    values, filled = _fill_eta0(m.values, m.axis_y)
    if same:
        return values, filled, "exact"

    for name, axis in zip(("xi", "eta"), (m.axis_x, m.axis_y)):
        if axis.size < 2 or axis[0] > lattice[0] or axis[-1] < lattice[-1]:
            raise ArgumentError(f"multiplier axis '{name}' does not cover the frequency lattice of f")
    pts = np.stack(np.meshgrid(lattice, lattice, indexing="ij"), axis=-1)
    re = RegularGridInterpolator((m.axis_x, m.axis_y), values.real)(pts)
    im = RegularGridInterpolator((m.axis_x, m.axis_y), values.imag)(pts)
    out = re + 1j * im
    out, filled_lattice = _fill_eta0(out, lattice)
    return out, filled or filled_lattice, "linear"


def prepare_multiplier(m: SampledField, grid: TorusGrid) -> SampledField:
    """m 을 grid 의 주파수 격자 위 값으로 (η=0 행은 연속 확장)

    Raises:
        ArgumentError: m 이 격자를 덮지 못함
        DataError: η=0 밖에서 m 이 비유한
    """
    j0 = _zero_row(m.axis_y)
    off_axis = np.ones(m.values.shape, dtype=bool)
    if j0 >= 0:
        off_axis[:, j0] = False
    bad = np.argwhere(~np.isfinite(m.values) & off_axis)
    if bad.size:
        i, j = bad[0]
        raise DataError("non-finite multiplier value", key=(float(m.axis_x[i]), float(m.axis_y[j])))

    values, filled, mode = _on_lattice(m, grid)
    return SampledField(
        axis_x=grid.frequencies,
        axis_y=grid.frequencies,
        values=values,
        names=("xi", "eta"),
        meta={**m.meta, "eta0_row": "neighbour-average" if filled else "sampled", "lattice": mode},
    )


def apply_multiplier(m: SampledField, f: SampledField) -> SampledField:
    """Tf = F⁻¹[m · F f] (f 의 격자가 주파수 격자를 정한다)

    Raises:
        ArgumentError: f 격자가 균일 정사각이 아니거나 m 이 격자를 덮지 못함
        DataError: η=0 밖에서 m 이 비유한
    """
    lattice = prepare_multiplier(m, TorusGrid.of(f))
    # 격자는 원점이 index n/2 인 fftshift 순서
    spectrum = np.fft.fft2(np.fft.ifftshift(f.values))
    out = np.fft.fftshift(np.fft.ifft2(np.fft.ifftshift(lattice.values) * spectrum))
    return f.with_values(out, eta0_row=lattice.meta["eta0_row"], lattice=lattice.meta["lattice"])


def _scale_warning(spec: FlagKernelSpec, grid: TorusGrid):
    bx, by = spec.bumps
    m_min, m_max, _, n_max = spec.dyadic_range
    if bx.scale * 2.0**m_min < MIN_RESOLVED_CELLS * grid.step:
        print(f"⚠️ [Operator] 최소 스케일 2^{m_min} 이 격자 간격 {grid.step:g} 보다 작아 분해되지 않음")
    if by.scale * 2.0 ** (m_max + n_max) > grid.side / 2:
        print(f"⚠️ [Operator] 최대 y 스케일 2^{m_max + n_max} 이 torus 절반을 넘음 (주기 겹침)")


def lattice_multiplier(spec: FlagKernelSpec, grid: TorusGrid = None, part: str = "full", phi: CutoffPhi = None) -> SampledField:
    """torus 위 휜 커널 K(x,y) = M(x, y - c₀x²) 의 이산 푸리에 변환

    part="mikhlin" 이면 (1-Φ)·m 만 남긴다.
    c₀ = 0 이면 평탄 multiplier 의 닫힌 형태를 쓴다.
    """
    if part not in ("full", "mikhlin"):
        raise ArgumentError(f"unknown multiplier part {part!r}")
    grid = grid or TorusGrid()
    freq = grid.frequencies
    XI, ETA = np.meshgrid(freq, freq, indexing="ij")

    if spec.curvature_c0 == 0:
        values = flat_multiplier(spec, XI, ETA)
        source = "closed-form"
    else:
        _scale_warning(spec, grid)
        k = sample_curved_kernel(spec, grid.axis, grid.axis).values
        values = np.fft.fftshift(np.fft.fft2(np.fft.ifftshift(k))) * grid.step**2
        source = "sampled-kernel"

    if part == "mikhlin":
        values = values * (1.0 - (phi or CutoffPhi())(XI, ETA))

    return SampledField(
        axis_x=freq,
        axis_y=freq,
        values=values,
        names=("xi", "eta"),
        meta={
            "part": part,
            "source": source,
            "dyadic_range": list(spec.dyadic_range),
            "curvature_c0": spec.curvature_c0,
        },
    )
