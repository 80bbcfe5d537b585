"""torus 위 multiplier 적용과 L^p 스윕"""

from .torus import (
    TorusGrid,
    FunctionKind,
    TestFunctionFamily,
    sample_test_function,
    iter_test_functions,
    make_test_functions,
    plane_wave,
    lp_norm,
)
from .apply import prepare_multiplier, apply_multiplier, lattice_multiplier
from .sweep import LpSweepResult, truncation_ladder, lattice_builder, lp_sweep

__all__ = [
    # torus
    "TorusGrid",
    "FunctionKind",
    "TestFunctionFamily",
    "sample_test_function",
    "iter_test_functions",
    "make_test_functions",
    "plane_wave",
    "lp_norm",
    # apply
    "prepare_multiplier",
    "apply_multiplier",
    "lattice_multiplier",
    # sweep
    "LpSweepResult",
    "truncation_ladder",
    "lattice_builder",
    "lp_sweep",
]
