# src/common/__init__.py
from .errors import (
    CurvedFlagError,
    ArgumentError,
    KernelDomainError,
    ConfigurationError,
    SchemaError,
    AccuracyError,
    AliasingError,
    DataError,
)
from .settings import RuntimeSettings, settings, configure, scaled
from .parallel import parallel_map
from .field import SampledField, AXIS_TAGS, QUAD_RULES

__all__ = [
    # errors
    "CurvedFlagError",
    "ArgumentError",
    "KernelDomainError",
    "ConfigurationError",
    "SchemaError",
    "AccuracyError",
    "AliasingError",
    "DataError",
    # settings
    "RuntimeSettings",
    "settings",
    "configure",
    "scaled",
    # parallel
    "parallel_map",
    # field
    "SampledField",
    "AXIS_TAGS",
    "QUAD_RULES",
]
