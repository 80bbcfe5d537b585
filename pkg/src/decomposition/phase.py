# src/decomposition/phase.py
"""burst 단위 위상 회귀: arg z ≈ c′·s + d_burst"""

from dataclasses import dataclass, field

import numpy as np

from common import ConfigurationError

MIN_BURSTS = 2
MIN_BURST_POINTS = 3


@dataclass
class PhaseFit:
    c_prime: float
    r2: float
    bursts: int
    intercepts: list = field(default_factory=list)
    s_values: list = field(default_factory=list)
    phases: list = field(default_factory=list)
    point_bursts: list = field(default_factory=list)


def fit_phase_constant(s, z, burst_ids) -> PhaseFit:
    """공통 기울기 + burst 별 절편 최소제곱

    Args:
        s: 회귀 변수 ξ²/η (= a²)
        z: 복소 표본 (위상만 사용)
        burst_ids: 각 표본의 burst 번호 (burst 안에서 s 가 증가 순)

    Raises:
        ConfigurationError: 사용 가능한 burst 가 부족하거나 s 분산이 0
    """
    s = np.asarray(s, dtype=float)
    z = np.asarray(z, dtype=complex)
    ids = np.asarray(burst_ids)

    s_dm, p_dm, intercept_parts, kept = [], [], [], []
    all_s, all_p, all_b = [], [], []
    for b in np.unique(ids):
        sel = (ids == b) & (np.abs(z) > 0) & np.isfinite(z)
        if sel.sum() < MIN_BURST_POINTS:
            continue
        order = np.argsort(s[sel])
        sb = s[sel][order]
        pb = np.unwrap(np.angle(z[sel][order]))
        s_dm.append(sb - sb.mean())
        p_dm.append(pb - pb.mean())
        intercept_parts.append((sb.mean(), pb.mean()))
        kept.append(b)
        all_s.extend(sb.tolist())
        all_p.extend(pb.tolist())
        all_b.extend([len(kept) - 1] * sb.size)

    if len(kept) < MIN_BURSTS:
        raise ConfigurationError(f"phase regression needs ≥ {MIN_BURSTS} bursts with ≥ {MIN_BURST_POINTS} points")
    x = np.concatenate(s_dm)
    y = np.concatenate(p_dm)
    sxx = float(x @ x)
    if sxx <= 1e-12:
        raise ConfigurationError("phase regression ill-conditioned: bursts too short in a²")

    slope = float(x @ y) / sxx
    ss_tot = float(y @ y)
    ss_res = float(np.sum((y - slope * x) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    intercepts = [pm - slope * sm for sm, pm in intercept_parts]
    return PhaseFit(c_prime=slope, r2=r2, bursts=len(kept), intercepts=intercepts, s_values=all_s, phases=all_p, point_bursts=all_b)
