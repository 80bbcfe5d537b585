"""휜 커널 multiplier 와 L₁ + Φ·e^{ic′ξ²/η}·(η^{1/2}/ξ)·L₂ 분해"""

from .coords import (
    ParabolicPoint,
    CutoffPhi,
    ParabolicGrid,
    burst_grid,
    default_delta_values,
)
from .multiplier import near_radius, multiplier_value, multiplier_at, curved_multiplier, parabolic_multiplier
from .phase import PhaseFit, fit_phase_constant
from .extract import (
    DecompositionResult,
    theoretical_c_prime,
    extract_decomposition,
    decomposition_report,
    phase_fit_invariance_check,
)
from .checks import (
    EXTENSION_OCTAVES,
    flag_multiplier_check,
    dyadic_extension_check,
    default_mikhlin_grid,
    default_overlap_grid,
    mikhlin_check,
    asymptotic_relation_check,
)
from .inverse import (
    frequency_axis,
    flat_flag_field,
    nyquist_energy_fraction,
    sheared_kernel,
    inverse_direction_check,
)

__all__ = [
    # coords
    "ParabolicPoint",
    "CutoffPhi",
    "ParabolicGrid",
    "burst_grid",
    "default_delta_values",
    # multiplier
    "near_radius",
    "multiplier_value",
    "multiplier_at",
    "curved_multiplier",
    "parabolic_multiplier",
    # phase
    "PhaseFit",
    "fit_phase_constant",
    # extract
    "DecompositionResult",
    "theoretical_c_prime",
    "extract_decomposition",
    "decomposition_report",
    "phase_fit_invariance_check",
    # checks
    "EXTENSION_OCTAVES",
    "flag_multiplier_check",
    "dyadic_extension_check",
    "default_mikhlin_grid",
    "default_overlap_grid",
    "mikhlin_check",
    "asymptotic_relation_check",
    # inverse
    "frequency_axis",
    "flat_flag_field",
    "nyquist_energy_fraction",
    "sheared_kernel",
    "inverse_direction_check",
]
