# src/oscillatory/__init__.py
"""m_k(ξ,η), I_k(x) 진동 적분 평가와 A/B 분해"""

from .evaluators import (
    Method,
    OscIntegralSpec,
    OscResult,
    evaluate,
    evaluate_oracle,
    evaluate_oracle_with_info,
    evaluate_fast,
    evaluate_fast_with_info,
    multiplier_value,
    fresnel_integral,
)
from .sweeps import (
    default_phase_grid,
    dyadic_ladder,
    uniform_bound_sweep,
    oracle_equivalence_check,
)
from .absplit import (
    FRESNEL_BRANCH,
    ABSplit,
    ab_split,
    ab_leading_order_check,
    ab_decay_check,
    default_decay_family,
)

__all__ = [
    # evaluators
    "Method",
    "OscIntegralSpec",
    "OscResult",
    "evaluate",
    "evaluate_oracle",
    "evaluate_oracle_with_info",
    "evaluate_fast",
    "evaluate_fast_with_info",
    "multiplier_value",
    "fresnel_integral",
    # sweeps
    "default_phase_grid",
    "dyadic_ladder",
    "uniform_bound_sweep",
    "oracle_equivalence_check",
    # absplit
    "FRESNEL_BRANCH",
    "ABSplit",
    "ab_split",
    "ab_leading_order_check",
    "ab_decay_check",
    "default_decay_family",
]
