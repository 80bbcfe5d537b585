# src/oscillatory/sweeps.py
"""m_{ε,N} 의 (ε,N) 균일 유계성 스윕과 fast/oracle 동치성 검사"""

from typing import Sequence

import numpy as np

from common import ConfigurationError, ArgumentError, parallel_map, scaled
from evaluation.report import EstimateReport
from kernels1d import Kernel1D, KernelFamily
from .evaluators import (
    Method,
    OscIntegralSpec,
    evaluate_fast_with_info,
    evaluate_oracle_with_info,
)

PLATEAU_TOL = 0.01
MIN_LADDER_STEPS = 5
EQUIVALENCE_TOL = 1e-6


def default_phase_grid(n: int = 32, span: float = 2.0**8) -> list[tuple]:
    """ξ, η ∈ ±[2^-4, span] 로그 격자 (n×n)"""
    half = n // 2
    mags = np.geomspace(2.0**-4, span, half)
    axis = np.concatenate([-mags[::-1], mags])
    return [(float(xi), float(eta)) for xi in axis for eta in axis]


def dyadic_ladder(eps_exponents: Sequence[int] = range(4, 13)) -> list[tuple]:
    """ε = 2^-j, N = 2^j"""
    return [(2.0**-j, 2.0**j) for j in eps_exponents]


def _ladder_octaves(values: np.ndarray) -> float:
    return float(np.log2(values.max() / values.min()))


def _sup_for_truncation(kernel: Kernel1D, phase_grid, eps: float, big_n: float) -> float:
    k = kernel.with_(epsilon=eps, big_n=big_n)
    if not k.has_function_part:
        return abs(k.delta_mass)
    values = [evaluate_fast_with_info(OscIntegralSpec(k, p, Method.FAST)).value for p in phase_grid]
    return float(np.max(np.abs(values)))


def uniform_bound_sweep(
    kernel_family: Sequence[Kernel1D],
    phase_grid: Sequence[tuple],
    truncation_ladder: Sequence[tuple],
) -> EstimateReport:
    """절단 사다리 전체에서 sup |m_{ε,N}(ξ,η)| 의 plateau 검사

    사다리의 마지막 두 단계에서 누적 sup 증가가 1% 미만이면 통과.
    """
    if not kernel_family:
        raise ArgumentError("kernel_family must not be empty")
    if not phase_grid:
        raise ArgumentError("phase_grid must not be empty")
    ladder = np.asarray(truncation_ladder, dtype=float)
    if ladder.ndim != 2 or ladder.shape[0] < MIN_LADDER_STEPS:
        raise ConfigurationError(f"truncation ladder needs ≥ {MIN_LADDER_STEPS} (ε, N) steps")
    if _ladder_octaves(ladder[:, 0]) < MIN_LADDER_STEPS - 1 or _ladder_octaves(ladder[:, 1]) < MIN_LADDER_STEPS - 1:
        raise ConfigurationError(f"truncation ladder must span ≥ {MIN_LADDER_STEPS} dyadic steps in ε and N")

    report = EstimateReport(suite="uniform_bound")
    print(f"🧮 [Oscillatory] 균일 유계 스윕: 커널 {len(kernel_family)}개 × 위상 {len(phase_grid)}개 × 사다리 {len(ladder)}단")

    for idx, kernel in enumerate(kernel_family):
        label = f"{kernel.family.value}#{idx}"
        sups = parallel_map(
            lambda step: _sup_for_truncation(kernel, phase_grid, float(step[0]), float(step[1])),
            list(ladder),
            desc=f"ladder {label}",
        )
        running = np.maximum.accumulate(np.array(sups))
        growth = (running[-1] - running[-3]) / max(running[-3], 1e-300)

        report.check(
            f"plateau {label}",
            float(growth),
            scaled(PLATEAU_TOL),
            weight="sup|m_{ε,N}|",
            message=f"sup={running[-1]:.6g}",
        )
        report.fitted[f"sup_{label}"] = float(running[-1])
        report.series[f"ladder_{label}"] = {
            "epsilon": ladder[:, 0].tolist(),
            "big_n": ladder[:, 1].tolist(),
            "sup": list(map(float, sups)),
            "running_sup": running.tolist(),
        }
    return report


def _random_kernel(rng: np.random.Generator) -> Kernel1D:
    families = (KernelFamily.RECIPROCAL, KernelFamily.SIGNED_POWER, KernelFamily.OSCILLATING)
    family = families[int(rng.integers(len(families)))]
    return Kernel1D(
        family=family,
        epsilon=2.0 ** -rng.uniform(3, 8),
        big_n=2.0 ** rng.uniform(2, 5),
        coefficient=complex(rng.normal(), rng.normal()),
        log_frequency=float(rng.uniform(-2, 2)),
    )


def oracle_equivalence_check(n: int = 200, seed: int = 0, span: float = 2.0**8, oracle_tol: float = 1e-9) -> EstimateReport:
    """무작위 (커널, 위상) 표본에서 |fast - oracle| ≤ 10⁻⁶(1+|oracle|)"""
    if n <= 0:
        raise ArgumentError("n must be positive")
    rng = np.random.default_rng(seed)
    samples = []
    for _ in range(n):
        k = _random_kernel(rng)
        xi, eta = rng.uniform(-span, span, size=2)
        samples.append(OscIntegralSpec(k, (float(xi), float(eta))))

    def compare(spec: OscIntegralSpec) -> tuple:
        fast = evaluate_fast_with_info(spec)
        oracle = evaluate_oracle_with_info(spec, abs_tol=oracle_tol)
        return abs(fast.value - oracle.value) / (1.0 + abs(oracle.value)), fast.fallback

    results = parallel_map(compare, samples, desc="fast vs oracle")
    rel = np.array([r[0] for r in results])
    fallbacks = sum(1 for r in results if r[1])

    report = EstimateReport(suite="oracle_equivalence")
    report.check(
        "max |fast - oracle| / (1 + |oracle|)",
        float(rel.max()),
        scaled(EQUIVALENCE_TOL),
        message=f"samples={n}, seed={seed}, oracle fallbacks={fallbacks}",
    )
    report.fitted["median_relative_error"] = float(np.median(rel))
    report.fitted["fallback_count"] = float(fallbacks)
    report.series["samples"] = {
        "linear": [s.linear for s in samples],
        "quadratic": [s.quadratic for s in samples],
        "relative_error": rel.tolist(),
    }
    return report
