# src/common/settings.py
"""실행 전역 설정 (--threads, --tolerance-scale)

오케스트레이터(run.py)가 시작 시 한 번만 configure() 를 호출한다.
계산 모듈은 값을 읽기만 한다.
"""

import os
from dataclasses import dataclass

from .errors import ArgumentError


@dataclass
class RuntimeSettings:
    threads: int = 1
    tolerance_scale: float = 1.0
    verbose: bool = True


settings = RuntimeSettings()


def configure(threads: int = None, tolerance_scale: float = None, verbose: bool = None) -> RuntimeSettings:
    """전역 설정 갱신 (threads=0 → CPU 수)"""
    if threads is not None:
        settings.threads = (os.cpu_count() or 1) if threads == 0 else max(1, int(threads))
    if tolerance_scale is not None:
        if tolerance_scale <= 0:
            raise ArgumentError("tolerance_scale must be positive")
        settings.tolerance_scale = float(tolerance_scale)
    if verbose is not None:
        settings.verbose = bool(verbose)
    return settings


def scaled(threshold: float) -> float:
    """허용 오차/임계값에 --tolerance-scale 적용"""
    return threshold * settings.tolerance_scale
