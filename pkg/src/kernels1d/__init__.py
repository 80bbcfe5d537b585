# src/kernels1d/__init__.py
"""1차원 CZ 커널, 절단/확대, 정규화 bump, seminorm 추정"""

from .bumps import (
    Profile,
    BumpSpec,
    CutoffWindow,
    bump_values,
    plateau_cutoff,
    profile_values,
)
from .kernels import (
    DEFAULT_EPSILON,
    DEFAULT_BIG_N,
    KernelFamily,
    Kernel1D,
    kernel_values,
    eval_kernel,
    kernel_derivatives,
    closed_form_decay_constant,
    reflect_conjugate,
    point_mass,
)
from .seminorms import (
    SeminormEstimate,
    default_bump_set,
    default_delta_grid,
    fd_derivative,
    paired_integral,
    seminorms_of,
    estimate_seminorms,
    dilation_family_check,
)

__all__ = [
    # bumps
    "Profile",
    "BumpSpec",
    "CutoffWindow",
    "bump_values",
    "plateau_cutoff",
    "profile_values",
    # kernels
    "DEFAULT_EPSILON",
    "DEFAULT_BIG_N",
    "KernelFamily",
    "Kernel1D",
    "kernel_values",
    "eval_kernel",
    "kernel_derivatives",
    "closed_form_decay_constant",
    "reflect_conjugate",
    "point_mass",
    # seminorms
    "SeminormEstimate",
    "default_bump_set",
    "default_delta_grid",
    "fd_derivative",
    "paired_integral",
    "seminorms_of",
    "estimate_seminorms",
    "dilation_family_check",
]
