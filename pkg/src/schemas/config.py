# src/schemas/config.py
"""실험 설정 스키마 (YAML → ExperimentConfig)"""

from enum import Enum
from pathlib import Path
from typing import List, Optional, Tuple

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from common import SchemaError

SCHEMA_VERSION = 1


class Suite(str, Enum):
    """verify 가 실행할 수 있는 검사 스위트 (의존 순서대로 나열)"""
    UNIFORM_BOUND = "uniform_bound"
    ORACLE_EQUIVALENCE = "oracle_equivalence"
    SEMINORMS = "seminorms"
    AB_LEADING_ORDER = "ab_leading_order"
    AB_DECAY = "ab_decay"
    FLAG_INEQUALITIES = "flag_inequalities"
    SHEAR_INVARIANCE = "shear_invariance"
    M_ETA_FAMILY = "m_eta_family"
    FLAG_PAIRING = "flag_pairing"
    DECOMPOSITION = "decomposition"
    PHASE_INVARIANCE = "phase_invariance"
    FLAG_MULTIPLIER = "flag_multiplier"
    MIKHLIN = "mikhlin"
    ASYMPTOTIC_RELATION = "asymptotic_relation"
    INVERSE_DIRECTION = "inverse_direction"
    LP_SWEEP = "lp_sweep"


SUITE_ORDER = list(Suite)


class _Block(BaseModel):
    model_config = ConfigDict(extra="forbid")


class KernelBlock(_Block):
    """flag 커널 명세"""
    bump_profile: str = Field("mollifier", pattern="^(mollifier|cosine-squared)$", description="bump 프로파일")
    dyadic_range: Tuple[int, int, int, int] = Field((-8, 8, 0, 8), description="(m_min, m_max, n_min, n_max)")
    flag: str = Field("F1", pattern="^F[12]$", description="flag 종류")
    curvature_c0: float = Field(1.0, description="K(x,y) = M(x, y - c₀x²) 의 c₀")

    @field_validator("dyadic_range")
    @classmethod
    def _range(cls, v):
        m_min, m_max, n_min, n_max = v
        if n_min < 0 or m_min > m_max or n_min > n_max:
            raise ValueError("dyadic range must satisfy m_min ≤ m_max, 0 ≤ n_min ≤ n_max")
        return v


class OneDimBlock(_Block):
    """1차원 커널 검사 (균일 유계, seminorm, A/B 분할)"""
    families: List[str] = Field(
        default_factory=lambda: ["principal-value-reciprocal", "signed-power", "oscillating-homogeneous"],
        min_length=1,
        description="커널 族 이름",
    )
    phase_grid_points: int = Field(32, ge=2, description="위상 격자 한 축 점 수")
    phase_span: float = Field(256.0, gt=0, description="위상 격자 최대 |ξ|, |η|")
    ladder_exponents: Tuple[int, int] = Field((4, 12), description="(ε, N) = (2^-j, 2^j), j 범위")
    equivalence_cases: int = Field(200, ge=1, description="oracle 비교 무작위 사례 수")
    ab_points: int = Field(12, ge=2, description="A/B 선행 차수 검사 점 수")
    ab_big_n_exponent: int = Field(6, ge=1, le=12, description="A/B 분할 커널의 N = 2^j")

    @field_validator("families")
    @classmethod
    def _families(cls, v):
        allowed = {"principal-value-reciprocal", "signed-power", "oscillating-homogeneous"}
        unknown = [f for f in v if f not in allowed]
        if unknown:
            raise ValueError(f"unknown kernel families {unknown}; choose from {sorted(allowed)}")
        return v


class FrequencyGridBlock(_Block):
    """역방향 검사용 FFT 주파수 격자"""
    points: int = Field(256, ge=8, description="한 축 점 수 (짝수)")
    d_freq: float = Field(1.0 / 64.0, gt=0, description="주파수 간격 (공간 주기 1/d_freq)")
    dyadic_range: Tuple[int, int, int, int] = Field((1, 3, 0, 2), description="ℓ 을 만드는 평탄 커널 범위 (격자 안에 들어오도록)")

    @field_validator("points")
    @classmethod
    def _even(cls, v):
        if v % 2:
            raise ValueError("points must be even")
        return v


class SpaceGridBlock(_Block):
    """torus 공간 격자"""
    side: float = Field(256.0, gt=0, description="torus 한 변")
    points: int = Field(1024, ge=8, description="한 축 점 수 (짝수)")

    @field_validator("points")
    @classmethod
    def _even(cls, v):
        if v % 2:
            raise ValueError("points must be even")
        return v


class ParabolicGridBlock(_Block):
    """포물선 극좌표 격자 (a 는 burst 묶음, δ 는 2의 거듭제곱)"""
    delta_exponents: Tuple[int, int] = Field((-12, -8), description="δ = 2^lo ... 2^hi")
    a_centers: List[float] = Field(default_factory=lambda: [8.0, 16.0, 24.0, 32.0, 48.0], min_length=2)
    burst_len: int = Field(8, ge=3)
    ds: float = Field(0.25, gt=0, description="burst 안 s = a² 간격")
    m_max: int = Field(20, description="분해용 커널의 m_max (정류점이 지지 안에 있도록)")

    @model_validator(mode="after")
    def _order(self):
        lo, hi = self.delta_exponents
        if lo >= hi:
            raise ValueError("delta_exponents must be increasing")
        return self


class CutoffBlock(_Block):
    slope_c: float = Field(1.0, gt=0, description="Φ 기울기 c")
    transition_width: float = Field(1.0, gt=0, description="전이 폭 (옥타브)")


class OperatorBlock(_Block):
    """L^p 스윕"""
    family: str = Field("gaussians", pattern="^(gaussians|indicator-smoothed|random-trigonometric)$")
    count: int = Field(50, ge=1)
    p_values: List[float] = Field(default_factory=lambda: [4.0 / 3.0, 2.0, 4.0], min_length=1)
    levels: List[int] = Field(default_factory=lambda: [0, 1, 2], min_length=3)
    multiplier_part: str = Field("full", pattern="^(full|mikhlin)$")
    dyadic_range: Tuple[int, int, int, int] = Field((0, 2, 0, 2), description="수준 0 의 절단 범위")

    @field_validator("p_values")
    @classmethod
    def _p(cls, v):
        if any(not 1.0 < p < float("inf") for p in v):
            raise ValueError("p values must lie in (1, ∞)")
        return v


class ToleranceBlock(_Block):
    scale: float = Field(1.0, gt=0, description="모든 임계값에 곱하는 배율")
    oracle_abs_tol: float = Field(1e-9, ge=1e-10, description="oracle 절대 허용 오차")


class ExperimentConfig(_Block):
    """실험 설정 최상위"""
    schema_version: int = Field(..., description="스키마 버전 (현재 1)")
    suites: List[Suite] = Field(..., min_length=1, description="실행할 검사 스위트")
    kernel: KernelBlock = Field(default_factory=KernelBlock)
    one_dim: OneDimBlock = Field(default_factory=OneDimBlock)
    frequency_grid: FrequencyGridBlock = Field(default_factory=FrequencyGridBlock)
    space_grid: SpaceGridBlock = Field(default_factory=SpaceGridBlock)
    parabolic_grid: ParabolicGridBlock = Field(default_factory=ParabolicGridBlock)
    cutoff: CutoffBlock = Field(default_factory=CutoffBlock)
    operator: OperatorBlock = Field(default_factory=OperatorBlock)
    tolerances: ToleranceBlock = Field(default_factory=ToleranceBlock)
    output_dir: str = Field("outputs", description="결과 저장 경로")
    seed: int = Field(0, ge=0)
    threads: int = Field(1, ge=0, description="0 = CPU 수")

    @field_validator("schema_version")
    @classmethod
    def _version(cls, v):
        if v != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {v}; expected {SCHEMA_VERSION}")
        return v

    @field_validator("suites")
    @classmethod
    def _unique(cls, v):
        if len(set(v)) != len(v):
            raise ValueError("suites must not repeat")
        return v

    def ordered_suites(self) -> list[Suite]:
        return [s for s in SUITE_ORDER if s in self.suites]


def _diagnostics(err: ValidationError) -> list[str]:
    return [f"{'.'.join(str(p) for p in e['loc']) or '<root>'}: {e['msg']}" for e in err.errors()]


def parse_config(data: dict) -> ExperimentConfig:
    """dict → ExperimentConfig (실패 시 SchemaError)"""
    if not isinstance(data, dict):
        raise SchemaError("config root must be a mapping")
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        diags = _diagnostics(e)
        raise SchemaError(f"invalid config ({len(diags)} error(s))", diagnostics=diags) from e


def load_config(path: Optional[str]) -> ExperimentConfig:
    """YAML 설정 파일 읽기

    Raises:
        SchemaError: 파일 없음, YAML 문법 오류, 스키마 위반
    """
    if path is None:
        raise SchemaError("no config file given (use --config)")
    p = Path(path)
    if not p.exists():
        raise SchemaError(f"config file not found: {p}")
    try:
        with open(p, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise SchemaError(f"config is not valid YAML: {e}") from e
    return parse_config(data if data is not None else {})
