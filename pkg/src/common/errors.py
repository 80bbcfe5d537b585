# src/common/errors.py
"""공통 예외 계층 (CLI 종료 코드 포함)"""

from typing import Optional


class CurvedFlagError(Exception):
    """모든 라이브러리 예외의 기반 클래스"""
    exit_code = 1


class ArgumentError(CurvedFlagError, ValueError):
    """잘못된 인자 (빈 격자, η=0 포함, 알 수 없는 kind 등)"""
    exit_code = 2


class KernelDomainError(CurvedFlagError, ValueError):
    """절단되지 않은 주값 커널을 t=0 에서 평가"""
    exit_code = 2


class ConfigurationError(CurvedFlagError):
    """격자/스텝 설정이 검증에 부적합"""
    exit_code = 2


class SchemaError(CurvedFlagError):
    """설정 파일 파싱 또는 스키마 검증 실패"""
    exit_code = 2

    def __init__(self, message: str, diagnostics: Optional[list] = None):
        super().__init__(message)
        self.diagnostics = diagnostics or []


class AccuracyError(CurvedFlagError):
    """요구 정확도 미달 (달성한 오차 추정치 포함)"""
    exit_code = 3

    def __init__(self, message: str, achieved_error: float = float("nan")):
        super().__init__(f"{message} (achieved error ≈ {achieved_error:.3e})")
        self.achieved_error = achieved_error


class AliasingError(AccuracyError):
    """Nyquist 경계 근처 에너지가 허용치 초과"""


class DataError(CurvedFlagError):
    """비유한 값 발견"""
    exit_code = 3

    def __init__(self, message: str, key: Optional[tuple] = None):
        super().__init__(message if key is None else f"{message} at {key}")
        self.key = key
