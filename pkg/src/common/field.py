# src/common/field.py
"""격자 위의 복소 샘플 (SampledField)"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import ArgumentError

# 축 종류 태그 (격자 파일 헤더와 공유)
AXIS_TAGS = {
    "uniform": 0,
    "log": 1,
    "dyadic-log": 2,
    "parabolic-a": 3,
    "parabolic-delta": 4,
    "other": 9,
}

# 선언적 구적 규칙 id
QUAD_RULES = {
    "riemann": 0,
    "trapezoid": 1,
    "none": 9,
}


@dataclass
class SampledField:
    """직사각 격자 위 복소값

    values[i, j] 는 (axis_x[i], axis_y[j]) 의 값 (row-major).
    evaluator 가 있으면 임의 점에서 재샘플링 가능 (스텐실 차분용).
    """
    axis_x: np.ndarray
    axis_y: np.ndarray
    values: np.ndarray
    axis_tags: tuple = ("uniform", "uniform")
    quad_weight: str = "riemann"
    names: tuple = ("x", "y")
    units: tuple = ("1", "1")
    evaluator: Optional[Callable] = field(default=None, repr=False, compare=False)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.axis_x = np.asarray(self.axis_x, dtype=float)
        self.axis_y = np.asarray(self.axis_y, dtype=float)
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.axis_x.size, self.axis_y.size):
            raise ArgumentError(
                f"value shape {self.values.shape} does not match axes "
                f"({self.axis_x.size}, {self.axis_y.size})"
            )
        for name, axis in zip(self.names, (self.axis_x, self.axis_y)):
            if axis.size > 1 and not np.all(np.diff(axis) > 0):
                raise ArgumentError(f"axis '{name}' must be strictly increasing")
        for tag in self.axis_tags:
            if tag not in AXIS_TAGS:
                raise ArgumentError(f"unknown axis tag '{tag}'")
        if self.quad_weight not in QUAD_RULES:
            raise ArgumentError(f"unknown quadrature rule '{self.quad_weight}'")

    @property
    def shape(self) -> tuple:
        return self.values.shape

    def sup_abs(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0

    def with_values(self, values: np.ndarray, **meta) -> "SampledField":
        """같은 축, 새 값"""
        return SampledField(
            axis_x=self.axis_x,
            axis_y=self.axis_y,
            values=values,
            axis_tags=self.axis_tags,
            quad_weight=self.quad_weight,
            names=self.names,
            units=self.units,
            meta={**self.meta, **meta},
        )
