# src/flag2d/__init__.py
"""2차원 평탄 flag 커널, 포물선 shear, 부분 푸리에 변환"""

from common import SampledField
from .kernel import (
    DEFAULT_RANGE,
    Flag,
    FlagKernelSpec,
    contributing_terms,
    eval_flag_kernel,
    flag_kernel_values,
    shear,
    sample_curved_kernel,
)
from .transforms import (
    BumpTransform,
    bump_transform,
    partial_ft_y,
    m_eta_knots,
    m_eta_kernel,
    flat_multiplier,
)
from .checks import (
    check_grid,
    fd_mixed,
    flag_weight,
    product_weight,
    check_flag_inequalities,
    shear_invariance_check,
    m_eta_family_check,
    pairing_convergence_check,
)

__all__ = [
    "SampledField",
    # kernel
    "DEFAULT_RANGE",
    "Flag",
    "FlagKernelSpec",
    "contributing_terms",
    "eval_flag_kernel",
    "flag_kernel_values",
    "shear",
    "sample_curved_kernel",
    # transforms
    "BumpTransform",
    "bump_transform",
    "partial_ft_y",
    "m_eta_knots",
    "m_eta_kernel",
    "flat_multiplier",
    # checks
    "check_grid",
    "fd_mixed",
    "flag_weight",
    "product_weight",
    "check_flag_inequalities",
    "shear_invariance_check",
    "m_eta_family_check",
    "pairing_convergence_check",
]
