# src/evaluation/report.py
"""추정식 검증 결과 기록 모듈

각 검증 스위트는 EstimateReport 하나를 돌려준다.
레코드 하나 = (미분 차수, 가중 함수, 측정된 가중 sup, 임계값, 통과 여부).
"""

import math
from dataclasses import dataclass, field
from typing import Optional


def _finite(value) -> bool:
    try:
        return math.isfinite(float(value))
    except (TypeError, ValueError):
        return False


def _json_float(value):
    """NaN/inf 는 JSON null 로"""
    if value is None:
        return None
    value = float(value)
    return value if math.isfinite(value) else None


@dataclass
class EstimateRecord:
    """단일 추정식 검증 결과"""
    name: str
    measured: float
    threshold: float
    passed: bool
    orders: tuple = ()
    weight: str = ""
    expected: str = ""
    message: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "orders": list(self.orders),
            "weight": self.weight,
            "measured": _json_float(self.measured),
            "threshold": _json_float(self.threshold),
            "passed": bool(self.passed),
            "expected": self.expected,
            "message": self.message,
        }


@dataclass
class EstimateReport:
    """검증 스위트 결과 모음"""
    suite: str
    records: list[EstimateRecord] = field(default_factory=list)
    fitted: dict = field(default_factory=dict)
    series: dict = field(default_factory=dict)

    def add(self, record: EstimateRecord):
        self.records.append(record)

    def check(
        self,
        name: str,
        measured: float,
        threshold: float,
        orders: tuple = (),
        weight: str = "",
        expected: Optional[str] = None,
        message: str = "",
    ) -> EstimateRecord:
        """measured ≤ threshold 이고 유한하면 통과"""
        passed = _finite(measured) and float(measured) <= threshold
        record = EstimateRecord(
            name=name,
            measured=float(measured) if _finite(measured) else float("nan"),
            threshold=float(threshold),
            passed=passed,
            orders=tuple(orders),
            weight=weight,
            expected=expected if expected is not None else f"≤ {threshold:.4g}",
            message=message,
        )
        self.add(record)
        return record

    def note(self, name: str, measured: float, message: str = "", orders: tuple = (), weight: str = "") -> EstimateRecord:
        """유한성만 요구하는 기록용 항목"""
        return self.check(name, measured, math.inf, orders=orders, weight=weight, expected="finite", message=message)

    def extend(self, other: "EstimateReport", prefix: str = ""):
        for r in other.records:
            self.add(EstimateRecord(**{**r.__dict__, "name": f"{prefix}{r.name}"}))
        self.fitted.update({f"{prefix}{k}": v for k, v in other.fitted.items()})
        self.series.update({f"{prefix}{k}": v for k, v in other.series.items()})

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def pass_count(self) -> int:
        return sum(1 for r in self.records if r.passed)

    @property
    def total_count(self) -> int:
        return len(self.records)

    def by_name(self, name: str) -> EstimateRecord:
        for r in self.records:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.all_passed,
            "records": [r.to_dict() for r in self.records],
            "fitted": {k: _json_float(v) for k, v in sorted(self.fitted.items())},
            "series": {k: {c: [_json_float(x) for x in col] for c, col in v.items()} for k, v in sorted(self.series.items())},
        }

    def print_summary(self):
        print("\n" + "=" * 70)
        print(f"🔍 [{self.suite}] 추정식 검증 결과")
        print("=" * 70)

        for r in self.records:
            status = "✅ PASS" if r.passed else "❌ FAIL"
            print(f"\n[{status}] {r.name}")
            print(f"   기대값: {r.expected}")
            print(f"   실제값: {r.measured:.6g}")
            if r.message:
                print(f"   비고: {r.message}")

        if self.fitted:
            print("\n📐 적합 상수:")
            for k, v in sorted(self.fitted.items()):
                print(f"   - {k}: {v:.6g}")

        print("\n" + "-" * 70)
        print(f"📊 종합: {self.pass_count}/{self.total_count} 항목 통과")
        if self.all_passed:
            print("✅ 모든 추정식 검증 통과")
        else:
            print("⚠️ 일부 항목 미통과 - 추가 검토 필요")
        print("=" * 70)
