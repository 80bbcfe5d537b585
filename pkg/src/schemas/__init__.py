from .config import (
    SCHEMA_VERSION,
    Suite,
    SUITE_ORDER,
    KernelBlock,
    OneDimBlock,
    FrequencyGridBlock,
    SpaceGridBlock,
    ParabolicGridBlock,
    CutoffBlock,
    OperatorBlock,
    ToleranceBlock,
    ExperimentConfig,
    parse_config,
    load_config,
)
from .report import Provenance, VerificationReport, build_report, collect_versions

__all__ = [
    # config
    "SCHEMA_VERSION",
    "Suite",
    "SUITE_ORDER",
    "KernelBlock",
    "OneDimBlock",
    "FrequencyGridBlock",
    "SpaceGridBlock",
    "ParabolicGridBlock",
    "CutoffBlock",
    "OperatorBlock",
    "ToleranceBlock",
    "ExperimentConfig",
    "parse_config",
    "load_config",
    # report
    "Provenance",
    "VerificationReport",
    "build_report",
    "collect_versions",
]
