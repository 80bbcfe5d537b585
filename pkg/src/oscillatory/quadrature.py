# src/oscillatory/quadrature.py
"""진동 적분용 수치 적분 도구

1. 합성 Gauss–Legendre 패널: 기하 분할(원점 근방 1/t 특이성) ∪ 위상 분할(주기당 20 노드 이상)
2. 꼬리 구간 L회 부분적분: 테일러 급수 산술로 경계항 계산

위상 규약: Φ(t) = -2π(ξ t + η t²)
"""

import math

import numpy as np

from common import AccuracyError

GL_HIGH = 16
GL_LOW = 12
NODES_PER_PERIOD = 20
GEOMETRIC_RATIO = 1.5
CHUNK_PANELS = 32768
DEFAULT_NODE_BUDGET = 50_000_000
IBP_DEPTH = 4
REMAINDER_SAMPLES = 33
REMAINDER_OCTAVES = 30

_X_HIGH, _W_HIGH = np.polynomial.legendre.leggauss(GL_HIGH)
_X_LOW, _W_LOW = np.polynomial.legendre.leggauss(GL_LOW)


def phase(t, xi: float, eta: float):
    return -2.0 * np.pi * (xi * t + eta * t * t)


def phase_prime(t, xi: float, eta: float):
    return -2.0 * np.pi * (xi + 2.0 * eta * t)


def _cycles(t, lin: float, quad: float):
    return lin * t + quad * t * t


def panel_count(a: float, b: float, lin: float, quad: float, refine: int = 1) -> int:
    """[a,b] 분할에 필요한 패널 수 추정"""
    geo = math.ceil(math.log(b / a) / math.log(GEOMETRIC_RATIO)) * refine
    per_panel = GL_HIGH / NODES_PER_PERIOD / refine
    osc = (_cycles(b, lin, quad) - _cycles(a, lin, quad)) / per_panel
    return int(geo + osc) + 1


def panel_edges(a: float, b: float, lin: float, quad: float, refine: int = 1) -> np.ndarray:
    """0 < a < b 구간의 패널 경계

    Args:
        lin, quad: 주기 수 P(t) = lin·t + quad·t² 의 계수 (|ξ|, |η|)
        refine: 1, 2, 4 ... 세분 배율
    """
    n_geo = max(1, math.ceil(math.log(b / a) / math.log(GEOMETRIC_RATIO))) * refine
    edges = np.geomspace(a, b, n_geo + 1)

    if lin > 0 or quad > 0:
        per_panel = GL_HIGH / NODES_PER_PERIOD / refine
        j0 = math.floor(_cycles(a, lin, quad) / per_panel) + 1
        j1 = math.ceil(_cycles(b, lin, quad) / per_panel) - 1
        if j1 >= j0:
            c = np.arange(j0, j1 + 1, dtype=float) * per_panel
            t = 2.0 * c / (lin + np.sqrt(lin * lin + 4.0 * quad * c))
            edges = np.union1d(edges, t[(t > a) & (t < b)])
    return edges


def gauss_panels(fn, edges: np.ndarray) -> tuple:
    """패널별 GL16 합과 |GL16 - GL12| 오차 추정의 합"""
    total = 0j
    error = 0.0
    for start in range(0, edges.size - 1, CHUNK_PANELS):
        e = edges[start:start + CHUNK_PANELS + 1]
        mid = 0.5 * (e[1:] + e[:-1])
        half = 0.5 * (e[1:] - e[:-1])

        nodes = mid[:, None] + half[:, None] * _X_HIGH[None, :]
        q_high = (fn(nodes.ravel()).reshape(nodes.shape) @ _W_HIGH) * half

        nodes = mid[:, None] + half[:, None] * _X_LOW[None, :]
        q_low = (fn(nodes.ravel()).reshape(nodes.shape) @ _W_LOW) * half

        total += q_high.sum()
        error += float(np.abs(q_high - q_low).sum())
    return complex(total), error


def integrate_segment(fn, a: float, b: float, lin: float, quad: float, abs_tol: float, node_budget: int) -> tuple:
    """∫_a^b fn(s) ds (0 < a < b), 오차가 abs_tol 이하가 될 때까지 세분

    Returns:
        (value, error_estimate, nodes_used)

    Raises:
        AccuracyError: 노드 예산 초과 전에 허용 오차 미달
    """
    if not b > a:
        return 0j, 0.0, 0
    refine = 1
    best_err = math.inf
    used = 0
    while True:
        n_nodes = panel_count(a, b, lin, quad, refine) * (GL_HIGH + GL_LOW)
        if used + n_nodes > node_budget:
            raise AccuracyError(
                f"node budget {node_budget} exhausted on [{a:.3g}, {b:.3g}]",
                achieved_error=best_err,
            )
        value, err = gauss_panels(fn, panel_edges(a, b, lin, quad, refine))
        used += n_nodes
        best_err = min(best_err, err)
        if err <= abs_tol:
            return value, err, used
        refine *= 2


# ----------------------------------------------------------------------
# 부분적분 (테일러 급수 산술)
# ----------------------------------------------------------------------

def _series_div_linear(f: np.ndarray, p0: np.ndarray, p1: float) -> np.ndarray:
    """f / (p0 + p1 τ) 의 테일러 계수"""
    q = np.empty_like(f)
    q[0] = f[0] / p0
    for n in range(1, f.shape[0]):
        q[n] = (f[n] - p1 * q[n - 1]) / p0
    return q


def _series_deriv(f: np.ndarray) -> np.ndarray:
    n = np.arange(1, f.shape[0], dtype=float)[:, None]
    return f[1:] * n


def ibp_boundary(derivs: np.ndarray, t: np.ndarray, xi: float, eta: float) -> tuple:
    """경계 함수 F(t) 와 나머지 밀도 |Φ'·D^L h|

    ∫_a^b e^{iΦ} g dt = F(b) - F(a) + R,
    F = e^{iΦ} Σ_{j<L} i^{j-1} D^j h,  h = g/Φ',  D = (1/Φ') d/dt

    Args:
        derivs: g^{(n)}(t), shape (L+1, P)
    """
    depth = derivs.shape[0] - 1
    fact = np.array([math.factorial(n) for n in range(depth + 1)], dtype=float)[:, None]
    g = derivs / fact
    p0 = phase_prime(t, xi, eta)
    p1 = -4.0 * np.pi * eta

    cur = _series_div_linear(g, p0, p1)
    acc = np.zeros(t.shape, dtype=complex)
    for j in range(depth):
        acc += (1j ** (j - 1)) * cur[0]
        cur = _series_div_linear(_series_deriv(cur), p0, p1)
    boundary = np.exp(1j * phase(t, xi, eta)) * acc
    density = np.abs(p0 * cur[0])
    return boundary, density


def remainder_bound(derivative_fn, a: float, b: float, xi: float, eta: float) -> float:
    """∫_a^b |Φ' D^L h| dt 의 표본 추정 (a, b 는 같은 부호, |a| < |b|)"""
    sign = 1.0 if a > 0 else -1.0
    lo = abs(a)
    hi = min(abs(b), lo * 2.0**REMAINDER_OCTAVES)
    if not hi > lo:
        return 0.0
    s = np.geomspace(lo, hi, REMAINDER_SAMPLES)
    t = sign * s
    _, density = ibp_boundary(derivative_fn(t), t, xi, eta)
    return float(np.trapezoid(density, s))
