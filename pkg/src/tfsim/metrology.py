"""Two-photon phase estimation with frequency beam splitters.

The probe is a pair of photons carrying HG indices (n, m) with fixed total
k = n + m = N; the interferometer is beam splitter -> index phase
e^{i n phi} on arm a -> beam splitter, all inside the (N+1)-dimensional
sector. The angular-momentum picture maps the two arms onto a spin
j = N/2: J_z is half the index difference, J_x/J_y the exchange generators
(built in :func:`j_operators` so that [J_x, J_y] = i J_z and cyclic).

With the beam-splitter convention of :mod:`tfsim.twophoton` (the one fixed
by the (|2,0> - |0,2>)/sqrt2 image of |1,1>), the Heisenberg-picture
conjugation of J_z through the full interferometer is

    U(phi)^dagger Jz U(phi) = -cos(phi) Jz + sin(phi) Jy,

a pure rotation of the measurement axis (the test-suite asserts this matrix
identity). Three phase-precision estimators are provided: error propagation
on the rotated first moment of J_z (degenerate for twin inputs, where every
first moment vanishes), error propagation on <Jz^2>, and the Cramer-Rao
bound from the classical Fisher information of the index-difference
distribution, computed with analytic phi-derivatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .twophoton import sector_matrix

__all__ = [
    "JOperators",
    "TwoModeState",
    "JzStatistics",
    "PrecisionEstimate",
    "j_operators",
    "twin_state",
    "sector_vector",
    "from_sector_vector",
    "interferometer",
    "interferometer_unitary",
    "jz_statistics",
    "phase_precision",
    "quantum_fisher_information",
    "best_precision",
    "precision_sweep",
    "sweep_to_csv",
    "sweep_csv_text",
    "heisenberg_slope",
]

DEGENERACY_TOL = 1e-12
PROB_FLOOR = 1e-14
ESTIMATORS = ("jz", "jz_squared", "fisher")


@dataclass(frozen=True)
class JOperators:
    """J_x, J_y, J_z on the total-index-N sector ((N+1) x (N+1) Hermitian)."""

    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray
    n_total: int


def j_operators(n_total):
    """Angular-momentum matrices for two arms at fixed total index N.

    Sector basis is |n>_a |N-n>_b, n = 0..N; J_z = diag(n - N/2), and the
    raising operator moves an index quantum from arm b to arm a.
    """
    if n_total < 0:
        raise ValueError("total index must be >= 0")
    n = np.arange(n_total + 1)
    jz = np.diag(n - n_total / 2.0).astype(complex)
    jp = np.zeros((n_total + 1, n_total + 1), dtype=complex)
    for k in range(n_total):
        jp[k + 1, k] = math.sqrt((k + 1.0) * (n_total - k))
    jx = (jp + jp.conj().T) / 2.0
    jy = (jp - jp.conj().T) / 2.0j
    return JOperators(jx=jx, jy=jy, jz=jz, n_total=n_total)


@dataclass(frozen=True)
class TwoModeState:
    """Two-photon state supported on a single total-index sector.

    ``coeffs`` is a square matrix over HG index pairs (as a joint spectral
    amplitude) whose support lies on n + m = ``n_total``; norm must be 1.
    """

    coeffs: np.ndarray
    n_total: int

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if coeffs.ndim != 2 or coeffs.shape[0] != coeffs.shape[1]:
            raise ValueError("coeffs must be a square matrix")
        if coeffs.shape[0] < self.n_total + 1:
            raise ValueError("matrix too small for the stated total index")
        mask = np.add.outer(
            np.arange(coeffs.shape[0]), np.arange(coeffs.shape[1])
        ) != self.n_total
        leak = float(np.max(np.abs(coeffs[mask]))) if mask.any() else 0.0
        if leak > 1e-12:
            raise ValueError(f"support leaks off the n+m={self.n_total} sector ({leak:.3e})")
        norm = float(np.sum(np.abs(coeffs) ** 2))
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"state norm {norm} is not 1")
        object.__setattr__(self, "coeffs", coeffs)


def sector_vector(state):
    """Length-(N+1) amplitude vector chi[n] = C[n, N-n]."""
    n = np.arange(state.n_total + 1)
    return state.coeffs[n, state.n_total - n].copy()


def from_sector_vector(chi, n_total):
    """Build a TwoModeState from sector amplitudes (normalized input)."""
    chi = np.asarray(chi, dtype=complex)
    if chi.shape != (n_total + 1,):
        raise ValueError("sector vector length must be n_total + 1")
    coeffs = np.zeros((n_total + 1, n_total + 1), dtype=complex)
    n = np.arange(n_total + 1)
    coeffs[n, n_total - n] = chi
    return TwoModeState(coeffs=coeffs, n_total=n_total)


def twin_state(n_total):
    """Both photons in mode N/2: amplitude 1 on (N/2, N/2)."""
    if n_total < 2 or n_total % 2:
        raise ValueError("total index must be an even integer >= 2")
    chi = np.zeros(n_total + 1, dtype=complex)
    chi[n_total // 2] = 1.0
    return from_sector_vector(chi, n_total)


def interferometer_unitary(n_total, phi):
    """Sector matrix of beam splitter -> e^{i n phi} on arm a -> beam splitter."""
    b = sector_matrix(n_total).astype(complex)
    phases = np.exp(1j * phi * np.arange(n_total + 1))
    return b @ (phases[:, None] * b)


def interferometer(state, phi):
    """Run the state through the two-beam-splitter phase sequence."""
    chi = sector_vector(state)
    return from_sector_vector(interferometer_unitary(state.n_total, phi) @ chi, state.n_total)


@dataclass(frozen=True)
class JzStatistics:
    """Distribution of the half-index-difference m = (n_a - n_b)/2."""

    values: np.ndarray
    probabilities: np.ndarray
    mean: float
    variance: float


def jz_statistics(state):
    """Mean, variance, and full distribution of J_z for a sector state."""
    chi = sector_vector(state)
    p = np.abs(chi) ** 2
    m = np.arange(state.n_total + 1) - state.n_total / 2.0
    mean = float(m @ p)
    variance = float((m - mean) ** 2 @ p)
    return JzStatistics(values=m, probabilities=p, mean=mean, variance=variance)


class PrecisionEstimate(float):
    """Phase precision delta-phi; carries the signal derivative and a
    degeneracy flag (set when |d<signal>/dphi| fell below 1e-12, in which
    case the value is inf)."""

    def __new__(cls, value, derivative, degenerate, estimator, phi):
        obj = super().__new__(cls, value)
        obj.derivative = float(derivative)
        obj.degenerate = bool(degenerate)
        obj.estimator = estimator
        obj.phi = float(phi)
        return obj


def _expect(op, chi):
    return float(np.real(chi.conj() @ (op @ chi)))


def _amplitude_and_derivative(n_total, phi, chi_in):
    """Output amplitudes and their analytic phi-derivatives."""
    b = sector_matrix(n_total).astype(complex)
    n = np.arange(n_total + 1)
    inner = b @ chi_in
    phased = np.exp(1j * phi * n) * inner
    amp = b @ phased
    damp = b @ (1j * n * phased)
    return amp, damp


def _rotated_jz_estimate(state, phi):
    """Literal first-moment error propagation with the rotated-moment
    expressions <Jz>(phi) = cos(phi) <Jz>_in - sin(phi) <Jx>_in."""
    ops = j_operators(state.n_total)
    chi = sector_vector(state)
    mean_z = _expect(ops.jz, chi)
    mean_x = _expect(ops.jx, chi)
    var_z = _expect(ops.jz @ ops.jz, chi) - mean_z**2
    var_x = _expect(ops.jx @ ops.jx, chi) - mean_x**2
    cov_xz = (
        _expect(ops.jx @ ops.jz + ops.jz @ ops.jx, chi) / 2.0 - mean_x * mean_z
    )
    c, s = np.cos(phi), np.sin(phi)
    derivative = -s * mean_z - c * mean_x
    variance = c * c * var_z + s * s * var_x - 2.0 * s * c * cov_xz
    return max(variance, 0.0), derivative


def _jz_squared_estimate(state, phi):
    """Error propagation on the second moment <Jz^2>(phi)."""
    amp, damp = _amplitude_and_derivative(state.n_total, phi, sector_vector(state))
    p = np.abs(amp) ** 2
    dp = 2.0 * np.real(np.conj(amp) * damp)
    m = np.arange(state.n_total + 1) - state.n_total / 2.0
    m2 = m**2
    mean = float(m2 @ p)
    variance = float(m2**2 @ p) - mean**2
    derivative = float(m2 @ dp)
    return max(variance, 0.0), derivative


def _fisher_information(state, phi):
    amp, damp = _amplitude_and_derivative(state.n_total, phi, sector_vector(state))
    p = np.abs(amp) ** 2
    dp = 2.0 * np.real(np.conj(amp) * damp)
    keep = p > PROB_FLOOR
    return float(np.sum(dp[keep] ** 2 / p[keep]))


def phase_precision(n_total, phi, estimator, state=None):
    """Phase uncertainty delta-phi of one estimator at operating point phi.

    ``estimator`` is one of 'jz' (first-moment error propagation with the
    rotated-moment signal), 'jz_squared' (second-moment error propagation),
    or 'fisher' (inverse root of the classical Fisher information of the
    full index-difference distribution). The probe defaults to the twin
    state |N/2, N/2>. Degenerate estimators (vanishing signal derivative)
    return inf with the ``degenerate`` flag set.
    """
    if estimator not in ESTIMATORS:
        raise ValueError(f"estimator must be one of {ESTIMATORS}, got {estimator!r}")
    if state is None:
        state = twin_state(n_total)
    elif state.n_total != n_total:
        raise ValueError("state total index does not match n_total")
    if not 0.0 < phi < np.pi:
        raise ValueError("phi must lie in the open interval (0, pi)")
    if estimator == "fisher":
        info = _fisher_information(state, phi)
        if info < DEGENERACY_TOL**2:
            return PrecisionEstimate(np.inf, 0.0, True, estimator, phi)
        return PrecisionEstimate(info**-0.5, info, False, estimator, phi)
    if estimator == "jz":
        variance, derivative = _rotated_jz_estimate(state, phi)
    else:
        variance, derivative = _jz_squared_estimate(state, phi)
    if abs(derivative) < DEGENERACY_TOL:
        return PrecisionEstimate(np.inf, derivative, True, estimator, phi)
    return PrecisionEstimate(
        math.sqrt(variance) / abs(derivative), derivative, False, estimator, phi
    )


def quantum_fisher_information(n_total, state=None):
    """4 Var(n_a) of the post-beam-splitter state: the pure-state bound.

    The phase enters as e^{i phi n_a} between the beam splitters, so the
    quantum Fisher information is four times the index variance of B chi;
    for twin input it equals N(N+2)/2.
    """
    if state is None:
        state = twin_state(n_total)
    chi = sector_matrix(state.n_total).astype(complex) @ sector_vector(state)
    n = np.arange(state.n_total + 1)
    p = np.abs(chi) ** 2
    mean = float(n @ p)
    return 4.0 * (float(n**2 @ p) - mean**2)


def best_precision(n_total, estimator, state=None, grid_points=181):
    """Minimize delta-phi over an interior phi grid; returns (phi, estimate)."""
    phis = np.linspace(0.0, np.pi, grid_points + 2)[1:-1]
    best = None
    for phi in phis:
        est = phase_precision(n_total, phi, estimator, state=state)
        if best is None or est < best[1]:
            best = (float(phi), est)
    return best


def precision_sweep(n_values, estimator, phi=None):
    """Rows (N, phi, estimator, delta_phi); phi=None optimizes per N."""
    rows = []
    for n_total in n_values:
        if phi is None:
            phi_used, est = best_precision(n_total, estimator)
        else:
            phi_used, est = phi, phase_precision(n_total, phi, estimator)
        rows.append((n_total, phi_used, estimator, est))
    return rows


def sweep_to_csv(rows, path):
    """Write sweep rows as ``n_photons,phi,estimator,delta_phi``."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(sweep_csv_text(rows))


def sweep_csv_text(rows):
    lines = ["n_photons,phi,estimator,delta_phi"]
    for n_total, phi, estimator, value in rows:
        lines.append(f"{n_total},{phi:.17g},{estimator},{float(value):.17g}")
    return "\n".join(lines) + "\n"


def heisenberg_slope(n_values=tuple(range(2, 21, 2)), estimator="fisher"):
    """Fitted log-log slope of the optimized delta-phi against N."""
    rows = precision_sweep(n_values, estimator)
    n = np.array([r[0] for r in rows], dtype=float)
    dphi = np.array([float(r[3]) for r in rows])
    finite = np.isfinite(dphi)
    if finite.sum() < 2:
        raise ValueError("not enough finite precision values to fit a slope")
    slope = np.polyfit(np.log(n[finite]), np.log(dphi[finite]), 1)[0]
    return float(slope)
