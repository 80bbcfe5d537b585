# src/decomposition/inverse.py
"""역방향: Φ·e^{ic′ξ²/η}·(η^{1/2}/ξ)·ℓ 의 역변환 K 를 shear 하면 product 커널

P(x,y) = K(x, y + c₀x²),  c₀ = π/(2c′)
|x|^{1+α}|y|^{1+β}|∂_x^α ∂_y^β P| 의 sup 이 유한하고 해상도에 안정한지 본다.
정류점 x₀ = -ξ/(2c₀η) 에서 P 의 y 부분 변환과 m 의 위상차로 c′ 를 다시 적합한다.
"""

import math

import numpy as np

from common import AliasingError, ArgumentError, ConfigurationError, SampledField, scaled
from evaluation.report import EstimateReport
from flag2d import FlagKernelSpec, flat_multiplier
from .coords import CutoffPhi
from .phase import fit_phase_constant

NYQUIST_BAND = 2
ALIASING_TOL = 0.01
RESOLUTION_TOL = 0.10
ROUND_TRIP_TOL = 0.05
ROUND_TRIP_MIN_A = 3.0
AXIS_GAP_CELLS = 4
PRODUCT_ORDERS = ((0, 0), (1, 0), (0, 1))


def frequency_axis(n: int, d_freq: float) -> np.ndarray:
    """-n/2·d ... (n/2-1)·d"""
    return (np.arange(n) - n // 2) * d_freq


def flat_flag_field(spec: FlagKernelSpec, n: int = 256, d_freq: float = 1.0 / 64.0) -> SampledField:
    """평탄 flag multiplier ℓ = M̂ 을 FFT 격자 위에 샘플링"""
    if n % 2 or n < 8:
        raise ArgumentError("FFT grid size must be even and ≥ 8")
    axis = frequency_axis(n, d_freq)
    XI, ETA = np.meshgrid(axis, axis, indexing="ij")
    return SampledField(
        axis_x=axis,
        axis_y=axis,
        values=flat_multiplier(spec, XI, ETA),
        names=("xi", "eta"),
        evaluator=lambda x, e: flat_multiplier(spec, x, e),
        meta={"part": "flat flag multiplier", "d_freq": d_freq},
    )


def _uniform_step(axis: np.ndarray, name: str) -> float:
    if axis.size < 8 or axis.size % 2:
        raise ArgumentError(f"axis '{name}' needs an even number (≥ 8) of samples")
    d = np.diff(axis)
    if not np.allclose(d, d[0], rtol=1e-9):
        raise ArgumentError(f"axis '{name}' must be uniform for the inverse FFT")
    if abs(axis[axis.size // 2]) > 1e-12 * abs(d[0]):
        raise ArgumentError(f"axis '{name}' must carry 0 at index n/2")
    return float(d[0])


def _symbol(ell: np.ndarray, xi: np.ndarray, eta: np.ndarray, phi: CutoffPhi, c_prime: float) -> np.ndarray:
    """G = Φ·e^{ic′ξ²/η}·sgn(η)|η|^{1/2}/ξ·ℓ

    η < 0 쪽 부호는 ℓ(-ξ,-η) = conj ℓ(ξ,η) 일 때 G 도 같은 대칭을 갖도록 한다.
    """
    XI, ETA = np.meshgrid(xi, eta, indexing="ij")
    weight = phi(XI, ETA)
    on = (weight > 0) & (ETA != 0)
    safe_xi = np.where(on, XI, 1.0)
    safe_eta = np.where(on, ETA, 1.0)
    factor = np.exp(1j * c_prime * safe_xi**2 / safe_eta) * np.sign(safe_eta) * np.sqrt(np.abs(safe_eta)) / safe_xi
    return np.where(on, weight * factor * ell, 0.0)


def nyquist_energy_fraction(g: np.ndarray, band: int = NYQUIST_BAND) -> float:
    """Nyquist 경계에서 band 칸 이내 에너지 비율 (0/0 → 0)"""
    e = np.abs(g) ** 2
    total = float(e.sum())
    if total == 0:
        return 0.0
    mask = np.zeros(g.shape, dtype=bool)
    mask[:band, :] = mask[-band:, :] = True
    mask[:, :band] = mask[:, -band:] = True
    return float(e[mask].sum()) / total


def sheared_kernel(g: np.ndarray, d_xi: float, d_eta: float, c0: float) -> tuple:
    """G (fftshift 순서) → P(x,y) = K(x, y + c₀x²)

    y 방향 이동은 부분 변환 K̂(x,η) 에 e^{2πiηc₀x²} 를 곱해 정확히 처리한다.
    """
    nx, ny = g.shape
    x = frequency_axis(nx, 1.0 / (nx * d_xi))
    y = frequency_axis(ny, 1.0 / (ny * d_eta))
    eta = frequency_axis(ny, d_eta)

    g = g.copy()
    g[0, :] = 0.0
    g[:, 0] = 0.0
    g[:, ny // 2] = 0.0

    # ξ → x (η 유지)
    partial = np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(g, axes=0), axis=0), axes=0) * nx * d_xi
    partial = partial * np.exp(2j * np.pi * np.outer(c0 * x * x, eta))
    p = np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(partial, axes=1), axis=1), axes=1) * ny * d_eta
    return x, y, p


def _product_sups(x: np.ndarray, y: np.ndarray, p: np.ndarray, box: tuple) -> dict:
    """축에서 떨어진 내부 영역의 |x|^{1+α}|y|^{1+β}|∂^α_x ∂^β_y P| sup"""
    dx, dy = x[1] - x[0], y[1] - y[0]
    lx, ly = box
    gx = np.gradient(p, dx, axis=0)
    gy = np.gradient(p, dy, axis=1)
    derivs = {(0, 0): p, (1, 0): gx, (0, 1): gy}
    X, Y = np.meshgrid(x, y, indexing="ij")
    gap_x = max(AXIS_GAP_CELLS * abs(dx), 0.0)
    gap_y = max(AXIS_GAP_CELLS * abs(dy), 0.0)
    region = (np.abs(X) >= gap_x) & (np.abs(Y) >= gap_y) & (np.abs(X) <= lx) & (np.abs(Y) <= ly)
    sups = {}
    for (alpha, beta), d in derivs.items():
        w = np.abs(X) ** (1 + alpha) * np.abs(Y) ** (1 + beta) * np.abs(d)
        sups[(alpha, beta)] = float(w[region].max()) if region.any() else 0.0
    return sups


def _resampled(ell: SampledField, n_x: int, n_y: int, d_xi: float, d_eta: float) -> tuple:
    xi = frequency_axis(n_x, d_xi)
    eta = frequency_axis(n_y, d_eta)
    XI, ETA = np.meshgrid(xi, eta, indexing="ij")
    try:
        vals = np.asarray(ell.evaluator(XI, ETA), dtype=complex)
    except (TypeError, ValueError):
        vals = None
    if vals is None or vals.shape != XI.shape:
        vals = np.vectorize(lambda a, b: complex(ell.evaluator(a, b)) if b != 0 else 0j, otypes=[complex])(XI, ETA)
    return xi, eta, vals


def _round_trip_phase(g: np.ndarray, p: np.ndarray, c0: float, d_eta: float, xi, eta, phi: CutoffPhi, c_prime: float):
    """m(ξ,η)·conj(P̂(x₀,η)) 의 위상을 행별 burst 로 c′ 회귀

    P̂ 는 P 의 y 부분 변환, x₀ = -ξ/(2c₀η) 는 정류점. shear 상수가 c′ 와 맞으면
    P̂ 에는 처프가 남지 않고 위상차는 c′ξ²/η + 상수가 된다.
    """
    nx, ny = p.shape
    x = frequency_axis(nx, 1.0 / (nx * (xi[1] - xi[0])))
    p_hat = np.fft.fftshift(np.fft.fft(np.fft.ifftshift(p, axes=1), axis=1), axes=1) / (ny * d_eta)
    x_reach = 0.5 * np.abs(x).max()

    s_all, z_all, ids = [], [], []
    burst = 0
    for j, e in enumerate(eta):
        if e <= 0:
            continue
        a = xi / math.sqrt(e)
        x0 = -xi / (2.0 * c0 * e)
        usable = (xi > 0) & (phi(xi, e) >= 1.0) & (np.abs(g[:, j]) > 0)
        usable &= (a >= ROUND_TRIP_MIN_A * abs(c0)) & (np.abs(x0) <= x_reach)
        cols = np.flatnonzero(usable)
        if cols.size < 3:
            continue
        s = a[cols] ** 2
        keep = np.concatenate([[True], np.cumsum(np.abs(c_prime) * np.diff(s) >= 0.5 * math.pi) == 0])
        cols, s = cols[keep], s[keep]
        if cols.size < 3:
            continue
        kernel_at = np.interp(x0[cols], x, p_hat[:, j].real) + 1j * np.interp(x0[cols], x, p_hat[:, j].imag)
        s_all.append(s)
        z_all.append(g[cols, j] * np.conj(kernel_at))
        ids.append(np.full(s.size, burst))
        burst += 1
    if burst < 2:
        return None
    try:
        return fit_phase_constant(np.concatenate(s_all), np.concatenate(z_all), np.concatenate(ids))
    except ConfigurationError:
        return None


def inverse_direction_check(ell: SampledField, phi: CutoffPhi = None, c_prime: float = math.pi / 2.0) -> EstimateReport:
    """Φ·e^{ic′ξ²/η}·(η^{1/2}/ξ)·ℓ 의 역변환이 shear 후 product 커널인지 검사

    Raises:
        ArgumentError: FFT 격자가 아닌 ℓ
        AliasingError: Nyquist 근처 에너지가 1% 초과
    """
    phi = phi or CutoffPhi()
    if c_prime == 0 or not math.isfinite(c_prime):
        raise ArgumentError("c′ must be finite and non-zero")
    c0 = math.pi / (2.0 * c_prime)
    d_xi = _uniform_step(ell.axis_x, "xi")
    d_eta = _uniform_step(ell.axis_y, "eta")
    if not np.all(np.isfinite(ell.values)):
        raise ArgumentError("ℓ contains non-finite samples")

    g = _symbol(ell.values, ell.axis_x, ell.axis_y, phi, c_prime)
    frac = nyquist_energy_fraction(g)
    if frac > ALIASING_TOL:
        raise AliasingError(f"{frac:.2%} of the symbol energy sits within {NYQUIST_BAND} cells of Nyquist", frac)

    print(f"🧮 [Decomposition] 역방향 검사: {g.shape[0]}×{g.shape[1]} 격자, c′={c_prime:.6g} (c₀={c0:.6g})")
    x, y, p = sheared_kernel(g, d_xi, d_eta, c0)
    box = (0.25 * abs(x[-1] - x[0]), 0.25 * abs(y[-1] - y[0]))
    sups = _product_sups(x, y, p, box)

    # 해상도 변화: evaluator 가 있으면 주파수 범위 2배, 없으면 중앙 절반
    nx, ny = ell.values.shape
    if ell.evaluator is not None:
        xi2, eta2, vals2 = _resampled(ell, 2 * nx, 2 * ny, d_xi, d_eta)
        mode = "2× frequency extent"
    else:
        sx, sy = slice(nx // 4, nx // 4 + nx // 2), slice(ny // 4, ny // 4 + ny // 2)
        xi2, eta2, vals2 = ell.axis_x[sx], ell.axis_y[sy], ell.values[sx, sy]
        mode = "central-half restriction"
    g2 = _symbol(vals2, xi2, eta2, phi, c_prime)
    x2, y2, p2 = sheared_kernel(g2, d_xi, d_eta, c0)
    sups2 = _product_sups(x2, y2, p2, box)

    report = EstimateReport(suite="inverse_direction")
    report.note("Nyquist energy fraction", frac)
    for order in PRODUCT_ORDERS:
        s1, s2 = sups[order], sups2[order]
        drift = abs(s1 - s2) / max(s1, s2) if max(s1, s2) > 0 else 0.0
        report.note(f"(α,β)={order} product sup", s1, orders=order, weight="|x|^{1+α}|y|^{1+β}")
        report.check(
            f"(α,β)={order} resolution drift",
            drift,
            scaled(RESOLUTION_TOL),
            orders=order,
            weight="|x|^{1+α}|y|^{1+β}",
            message=f"{mode}: {s1:.6g} vs {s2:.6g}",
        )
        report.fitted[f"product_sup_{order[0]}{order[1]}"] = s1

    peak = float(np.abs(p).max())
    report.fitted["imag_fraction"] = float(np.abs(p.imag).max()) / peak if peak > 0 else 0.0

    fit = _round_trip_phase(g, p, c0, d_eta, ell.axis_x, ell.axis_y, phi, c_prime)
    if fit is None:
        report.note("round-trip phase regression bursts", 0, message="no usable bursts on this grid")
    else:
        report.check(
            "round-trip c′ relative error",
            abs(fit.c_prime - c_prime) / abs(c_prime),
            scaled(ROUND_TRIP_TOL),
            message=f"c′_fit={fit.c_prime:.6g}, bursts={fit.bursts}",
        )
        report.fitted["round_trip_c_prime"] = fit.c_prime
    return report
