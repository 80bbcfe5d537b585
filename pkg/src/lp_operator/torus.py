# src/lp_operator/torus.py
"""주기 격자 (torus) 와 시험 함수 族"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterator

import numpy as np

from common import ArgumentError, SampledField

DEFAULT_SIDE = 2.0**8
DEFAULT_POINTS = 2**10
TRIG_MODES = 16


@dataclass(frozen=True)
class TorusGrid:
    """한 변 side, 한 축 points 개 격자 (원점은 index points/2)"""
    side: float = DEFAULT_SIDE
    points: int = DEFAULT_POINTS

    def __post_init__(self):
        if self.side <= 0:
            raise ArgumentError("torus side must be positive")
        if self.points < 8 or self.points % 2:
            raise ArgumentError("torus needs an even number (≥ 8) of points per axis")

    @property
    def step(self) -> float:
        return self.side / self.points

    @property
    def axis(self) -> np.ndarray:
        return (np.arange(self.points) - self.points // 2) * self.step

    @property
    def frequencies(self) -> np.ndarray:
        """격자에 대응하는 주파수 격자 (간격 1/side)"""
        return (np.arange(self.points) - self.points // 2) / self.side

    def field(self, values: np.ndarray, **meta) -> SampledField:
        return SampledField(axis_x=self.axis, axis_y=self.axis, values=values, names=("x", "y"), meta=meta)

    @classmethod
    def of(cls, f: SampledField) -> "TorusGrid":
        """f 의 공간 격자를 torus 로 해석"""
        n = f.axis_x.size
        if f.axis_y.size != n:
            raise ArgumentError("test functions must live on a square grid")
        d = np.diff(f.axis_x)
        if n < 8 or n % 2 or not np.allclose(d, d[0], rtol=1e-9) or not np.allclose(np.diff(f.axis_y), d[0], rtol=1e-9):
            raise ArgumentError("function grid must be uniform with an even number of points")
        return cls(side=float(d[0]) * n, points=n)


class FunctionKind(str, Enum):
    GAUSSIANS = "gaussians"
    INDICATOR_SMOOTHED = "indicator-smoothed"
    RANDOM_TRIGONOMETRIC = "random-trigonometric"


@dataclass(frozen=True)
class TestFunctionFamily:
    __test__ = False  # pytest 수집 대상 아님

    family: FunctionKind = FunctionKind.GAUSSIANS
    count: int = 50
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "family", FunctionKind(self.family))
        if self.count < 1:
            raise ArgumentError("test function count must be ≥ 1")


def _gaussian(grid: TorusGrid, rng: np.random.Generator) -> np.ndarray:
    """비등방 가우시안 (중심은 안쪽 절반, 폭은 2칸 ~ side/16)"""
    x = grid.axis
    cx, cy = rng.uniform(-grid.side / 4, grid.side / 4, size=2)
    lo, hi = np.log2(2 * grid.step), np.log2(grid.side / 16)
    sx, sy = 2.0 ** rng.uniform(lo, hi, size=2)
    return np.exp(-0.5 * ((x[:, None] - cx) / sx) ** 2 - 0.5 * ((x[None, :] - cy) / sy) ** 2).astype(complex)


def _smoothed_indicator(grid: TorusGrid, rng: np.random.Generator) -> np.ndarray:
    """직사각형 지시함수를 폭 2칸 가우시안으로 mollify"""
    x = grid.axis
    corners = np.sort(rng.uniform(-grid.side / 4, grid.side / 4, size=(2, 2)), axis=1)
    width = max(corners[0, 1] - corners[0, 0], 4 * grid.step), max(corners[1, 1] - corners[1, 0], 4 * grid.step)
    ind = ((x[:, None] >= corners[0, 0]) & (x[:, None] <= corners[0, 0] + width[0])
           & (x[None, :] >= corners[1, 0]) & (x[None, :] <= corners[1, 0] + width[1])).astype(float)
    k = np.fft.fftfreq(grid.points, d=grid.step)
    sigma = 2 * grid.step
    mollifier = np.exp(-2 * np.pi**2 * sigma**2 * (k[:, None] ** 2 + k[None, :] ** 2))
    return np.fft.ifft2(np.fft.fft2(ind) * mollifier)


def _random_trig(grid: TorusGrid, rng: np.random.Generator) -> np.ndarray:
    """격자 주파수 |k| ≤ n/8 안의 무작위 위상 파동 합"""
    band = grid.points // 8
    x = grid.axis
    out = np.zeros((grid.points, grid.points), dtype=complex)
    for kx, ky in rng.integers(-band, band + 1, size=(TRIG_MODES, 2)):
        phase = rng.uniform(0, 2 * np.pi)
        amp = rng.normal()
        out += amp * np.exp(1j * (2 * np.pi * (kx * x[:, None] + ky * x[None, :]) / grid.side + phase))
    return out


_BUILDERS = {
    FunctionKind.GAUSSIANS: _gaussian,
    FunctionKind.INDICATOR_SMOOTHED: _smoothed_indicator,
    FunctionKind.RANDOM_TRIGONOMETRIC: _random_trig,
}


def sample_test_function(family: TestFunctionFamily, index: int, grid: TorusGrid = None) -> SampledField:
    """(seed, index) 로 결정되는 index 번째 시험 함수"""
    grid = grid or TorusGrid()
    rng = np.random.default_rng([family.seed, index])
    build = _BUILDERS[family.family]
    values = build(grid, rng)
    # 영 함수는 비율이 정의되지 않으므로 다시 뽑는다
    while not np.any(np.abs(values) > 1e-12):
        values = build(grid, rng)
    return grid.field(values, family=family.family.value, index=index, seed=family.seed)


def iter_test_functions(family: TestFunctionFamily, grid: TorusGrid = None) -> Iterator[SampledField]:
    """하나씩 생성 (메모리 절약)"""
    for i in range(family.count):
        yield sample_test_function(family, i, grid)


def make_test_functions(family: TestFunctionFamily, grid: TorusGrid = None) -> list[SampledField]:
    return list(iter_test_functions(family, grid))


def plane_wave(grid: TorusGrid, xi: float, eta: float) -> SampledField:
    """격자 주파수 (ξ,η) 의 평면파 (주기 multiplier 의 고유함수)"""
    x = grid.axis
    values = np.exp(2j * np.pi * (xi * x[:, None] + eta * x[None, :]))
    return grid.field(values, family="plane-wave", xi=float(xi), eta=float(eta))


def lp_norm(f: SampledField, p: float) -> float:
    """Riemann 합 (Σ|f|^p dx dy)^{1/p}"""
    dx = float(f.axis_x[1] - f.axis_x[0])
    dy = float(f.axis_y[1] - f.axis_y[0])
    a = np.abs(f.values)
    scale = float(a.max())
    if scale == 0:
        return 0.0
    return scale * float(np.sum((a / scale) ** p) * dx * dy) ** (1.0 / p)
