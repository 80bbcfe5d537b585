# src/schemas/report.py
"""검증 리포트 스키마 (report.json)"""

import json
import math
import platform
from datetime import datetime
from typing import Any, Dict, List

from pydantic import BaseModel, Field, model_validator

from .config import SCHEMA_VERSION


class Provenance(BaseModel):
    """재현 정보 (timestamp 와 wall_time 만 실행마다 달라진다)"""
    seed: int = Field(..., description="난수 seed")
    threads: int = Field(1, description="작업 스레드 수")
    tolerance_scale: float = Field(1.0, description="임계값 배율")
    versions: Dict[str, str] = Field(default_factory=dict, description="python/numpy/scipy/pydantic 버전")
    wall_time: Dict[str, float] = Field(default_factory=dict, description="스위트별 소요 시간 (초)")
    timestamp: str = Field("", description="실행 시작 시각 (ISO 8601)")


class VerificationReport(BaseModel):
    """스위트별 EstimateReport 모음 + 통과 여부 집계"""
    schema_version: int = Field(SCHEMA_VERSION, description="리포트 스키마 버전")
    config: Dict[str, Any] = Field(default_factory=dict, description="설정 echo")
    suites: List[Dict[str, Any]] = Field(default_factory=list, description="스위트별 결과 (EstimateReport.to_dict)")
    fitted: Dict[str, Any] = Field(default_factory=dict, description="스위트 이름이 붙은 적합 상수")
    artifacts: List[str] = Field(default_factory=list, description="기록한 격자/데이터 파일")
    passed: bool = Field(True, description="모든 스위트 통과 여부")
    provenance: Provenance

    @model_validator(mode="after")
    def _consistent(self):
        names = [s.get("suite") for s in self.suites]
        if len(set(names)) != len(names):
            raise ValueError("each suite may appear only once")
        self.passed = all(bool(s.get("passed")) for s in self.suites)
        return self

    def to_json(self) -> str:
        """정렬된 키, 들여쓰기 2, 비유한 실수는 null"""
        return json.dumps(_nan_to_none(self.model_dump(mode="json")), sort_keys=True, indent=2, ensure_ascii=False)


def _nan_to_none(value):
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, dict):
        return {k: _nan_to_none(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_nan_to_none(v) for v in value]
    return value


def collect_versions() -> dict:
    import numpy
    import pydantic
    import scipy

    return {
        "python": platform.python_version(),
        "numpy": numpy.__version__,
        "scipy": scipy.__version__,
        "pydantic": pydantic.__version__,
    }


def build_report(config: dict, suite_reports: list, timings: dict, seed: int, threads: int, tolerance_scale: float, artifacts=None) -> VerificationReport:
    """EstimateReport 목록 → VerificationReport"""
    suites = [r.to_dict() for r in suite_reports]
    fitted = {f"{s['suite']}.{k}": v for s in suites for k, v in s["fitted"].items()}
    return VerificationReport(
        config=config,
        suites=suites,
        fitted=fitted,
        artifacts=sorted(artifacts or []),
        provenance=Provenance(
            seed=seed,
            threads=threads,
            tolerance_scale=tolerance_scale,
            versions=collect_versions(),
            wall_time={k: round(v, 3) for k, v in timings.items()},
            timestamp=datetime.now().isoformat(timespec="seconds"),
        ),
    )
