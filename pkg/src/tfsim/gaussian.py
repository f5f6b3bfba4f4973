"""Gaussian states and symplectic gates on single-photon chronocyclic phase space.

Each spectral mode carries a conjugate pair (omega, t): the detuning from the
carrier and the arrival-time offset, with the commutator analog [omega, t] = i.
An N-mode Gaussian state is the pair (mean, Sigma) over the coordinate vector

    X = (omega_1, ..., omega_N, t_1, ..., t_N)

(block ordering). The single-photon vacuum reference -- a photon with the unit
Gaussian spectrum -- has mean 0 and covariance Sigma = I/2, and every gate is a
symplectic matrix S (S^T Omega S = Omega with Omega = [[0, I], [-I, 0]])
optionally followed by a mean displacement. Purity is det(2 Sigma) = 1.

Wigner and Husimi functions use the normalized conventions

    W(X) = exp(-(X-mu)^T Sigma^-1 (X-mu) / 2) / ((2 pi)^N sqrt(det Sigma)),
    Q(alpha) = exp(-d^T (Sigma + I/2)^-1 d / 2) / (pi^N sqrt(det(Sigma + I/2))),

with alpha_k = (omega_k + i t_k)/sqrt(2) and d the phase-space displacement, so
the vacuum peaks at 1/pi in both and integrates to one (d^2alpha = domega dt/2).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "GaussianTFState",
    "SymplecticOp",
    "DisplacementParams",
    "PhaseSpaceGrid",
    "vacuum_state",
    "symplectic_form",
    "fbs",
    "frft",
    "scale",
    "displace",
    "gate_symplectic",
    "apply",
    "reduce_to_mode",
    "purity_defect",
    "to_complex_covariance",
    "wigner_eval",
    "husimi_eval",
    "wigner_csv_text",
    "wigner_to_csv",
]

SYMPLECTIC_TOL = 1e-12
UNCERTAINTY_TOL = 1e-10


def symplectic_form(n_modes):
    """Omega = [[0, I], [-I, 0]] in block (omega..., t...) ordering."""
    eye = np.eye(n_modes)
    zero = np.zeros((n_modes, n_modes))
    return np.block([[zero, eye], [-eye, zero]])


@dataclass(frozen=True)
class GaussianTFState:
    """Gaussian state of N spectral modes: mean vector and covariance matrix.

    ``mean`` has length 2N and ``cov`` is 2N x 2N, symmetric, and satisfies the
    uncertainty relation Sigma + i Omega / 2 >= 0; both are validated.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float)
        cov = np.asarray(self.cov, dtype=float)
        if mean.ndim != 1 or mean.size % 2:
            raise ValueError("mean must be a 1-d vector of even length 2N")
        if cov.shape != (mean.size, mean.size):
            raise ValueError("cov must be square with the same 2N dimension as mean")
        if not np.allclose(cov, cov.T, rtol=0.0, atol=1e-10):
            raise ValueError("covariance must be symmetric")
        omega = symplectic_form(mean.size // 2)
        herm = cov + 0.5j * omega
        min_eig = float(np.linalg.eigvalsh((herm + herm.conj().T) / 2.0).min())
        if min_eig < -UNCERTAINTY_TOL:
            raise ValueError(
                f"covariance violates the uncertainty relation (min eig {min_eig:.3e})"
            )
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", (cov + cov.T) / 2.0)

    @property
    def n_modes(self):
        return self.mean.size // 2

    @property
    def modes(self):
        return self.n_modes


def vacuum_state(n_modes):
    """N unit-width Gaussian photons: mean 0, covariance I/2."""
    if n_modes < 1:
        raise ValueError("n_modes must be >= 1")
    return GaussianTFState(np.zeros(2 * n_modes), 0.5 * np.eye(2 * n_modes))


@dataclass(frozen=True)
class SymplecticOp:
    """A gate: symplectic matrix plus mean shift, with a descriptive label.

    ``matrix`` must satisfy S^T Omega S = Omega to 1e-12 (checked).
    """

    matrix: np.ndarray
    shift: np.ndarray = None
    label: str = ""

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] % 2:
            raise ValueError("matrix must be square of even dimension 2N")
        shift = self.shift
        if shift is None:
            shift = np.zeros(matrix.shape[0])
        shift = np.asarray(shift, dtype=float)
        if shift.shape != (matrix.shape[0],):
            raise ValueError("shift must be a vector of length 2N")
        omega = symplectic_form(matrix.shape[0] // 2)
        defect = np.max(np.abs(matrix.T @ omega @ matrix - omega))
        if defect > SYMPLECTIC_TOL:
            raise ValueError(f"matrix is not symplectic (defect {defect:.3e})")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "shift", shift)

    @property
    def n_modes(self):
        return self.matrix.shape[0] // 2


def _embed_block(block, modes, n_modes):
    """Place a per-mode-pair block acting on (omega_m..., t_m...) into 2N x 2N."""
    S = np.eye(2 * n_modes)
    idx = list(modes) + [n_modes + m for m in modes]
    for a, ia in enumerate(idx):
        for b, ib in enumerate(idx):
            S[ia, ib] = block[a, b]
    return S


def _check_mode(mode, n_modes):
    if not 0 <= mode < n_modes:
        raise ValueError(f"mode {mode} outside 0..{n_modes - 1}")


def fbs(mode_a, mode_b, n_modes):
    """Frequency beam splitter: sum/difference mixer of two modes.

    Maps (omega_a, omega_b) -> ((omega_a + omega_b)/sqrt2, (omega_a - omega_b)/sqrt2)
    and acts identically on (t_a, t_b).
    """
    _check_mode(mode_a, n_modes)
    _check_mode(mode_b, n_modes)
    if mode_a == mode_b:
        raise ValueError("fbs needs two distinct modes")
    h = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
    block = np.zeros((4, 4))
    block[:2, :2] = h
    block[2:, 2:] = h
    return SymplecticOp(
        _embed_block(block, (mode_a, mode_b), n_modes),
        label=f"fbs({mode_a},{mode_b})",
    )


def frft(mode, phi, n_modes):
    """Fractional Fourier gate: rotate one mode's (omega, t) plane by phi.

    ``frft(mode, 0)`` is the identity; the mode's Hermite-Gauss index n picks
    up the phase e^{i n phi} in the spectral-mode picture.
    """
    _check_mode(mode, n_modes)
    c, s = np.cos(phi), np.sin(phi)
    block = np.array([[c, -s], [s, c]])
    return SymplecticOp(_embed_block(block, (mode,), n_modes), label=f"frft({mode},{phi:g})")


def scale(mode, s, n_modes):
    """Spectral magnifier: omega -> s * omega, t -> t / s on one mode."""
    _check_mode(mode, n_modes)
    if s <= 0:
        raise ValueError("scale factor must be positive")
    block = np.diag([float(s), 1.0 / float(s)])
    return SymplecticOp(_embed_block(block, (mode,), n_modes), label=f"scale({mode},{s:g})")


@dataclass(frozen=True)
class DisplacementParams:
    """Mean shift (omega0, t0) for one mode; values must be finite."""

    omega0: float
    t0: float
    mode: int = 0

    def __post_init__(self):
        if not (np.isfinite(self.omega0) and np.isfinite(self.t0)):
            raise ValueError("displacement values must be finite")

    def op(self, n_modes):
        return displace(self.mode, self.omega0, self.t0, n_modes)


def displace(mode, omega0, t0, n_modes):
    """Shift one mode's mean by (omega0, t0); the covariance is untouched."""
    _check_mode(mode, n_modes)
    if not (np.isfinite(omega0) and np.isfinite(t0)):
        raise ValueError("displacement values must be finite")
    shift = np.zeros(2 * n_modes)
    shift[mode] = omega0
    shift[n_modes + mode] = t0
    return SymplecticOp(
        np.eye(2 * n_modes), shift=shift, label=f"displace({mode},{omega0:g},{t0:g})"
    )


def gate_symplectic(kind, n_modes, **params):
    """Build a gate by name: fbs, frft, scale, or displace.

    Keyword parameters per kind: fbs(mode_a, mode_b); frft(mode, phi);
    scale(mode, s); displace(mode, omega0, t0).
    """
    builders = {
        "fbs": lambda: fbs(params.pop("mode_a"), params.pop("mode_b"), n_modes),
        "frft": lambda: frft(params.pop("mode"), params.pop("phi"), n_modes),
        "scale": lambda: scale(params.pop("mode"), params.pop("s"), n_modes),
        "displace": lambda: displace(
            params.pop("mode"), params.pop("omega0"), params.pop("t0"), n_modes
        ),
    }
    if kind not in builders:
        raise ValueError(f"unknown gate kind {kind!r}; expected one of {sorted(builders)}")
    op = builders[kind]()
    if params:
        raise TypeError(f"unexpected parameters for {kind}: {sorted(params)}")
    return op


def apply(state, op):
    """Apply a gate: mean -> S mean + shift, Sigma -> S Sigma S^T."""
    if op.n_modes != state.n_modes:
        raise ValueError("operator and state mode counts differ")
    S = op.matrix
    return GaussianTFState(S @ state.mean + op.shift, S @ state.cov @ S.T)


def reduce_to_mode(state, mode):
    """Trace out all modes but one, returning the single-mode Gaussian state."""
    _check_mode(mode, state.n_modes)
    idx = [mode, state.n_modes + mode]
    return GaussianTFState(state.mean[idx], state.cov[np.ix_(idx, idx)])


def purity_defect(state):
    """|det(2 Sigma) - 1|; zero (to rounding) for pure states."""
    return abs(float(np.linalg.det(2.0 * state.cov)) - 1.0)


def to_complex_covariance(state):
    """Covariance of (alpha_1..N, conj(alpha)_1..N), alpha = (omega + i t)/sqrt2.

    Sigma_c = W Sigma W^dagger with W = [[I, iI], [I, -iI]]/sqrt2; Hermitian,
    vacuum value I/2. Evaluated blockwise in real arithmetic so exact
    cancellations (e.g. the vacuum off-diagonal) stay exact.
    """
    n = state.n_modes
    sww = state.cov[:n, :n]
    swt = state.cov[:n, n:]
    stt = state.cov[n:, n:]
    upper_left = ((sww + stt) + 1j * (swt.T - swt)) / 2.0
    upper_right = ((sww - stt) + 1j * (swt.T + swt)) / 2.0
    return np.block(
        [[upper_left, upper_right], [upper_right.conj(), upper_left.conj()]]
    )


@dataclass(frozen=True)
class PhaseSpaceGrid:
    """Rectangular evaluation grid for one mode's (omega, t) plane.

    ``origin`` is the carrier detuning that the omega axis is measured from;
    axis specs are (min, max, count) with count >= 2.
    """

    omega_min: float
    omega_max: float
    omega_count: int
    t_min: float
    t_max: float
    t_count: int
    origin: float = 0.0

    def __post_init__(self):
        if self.omega_count < 2 or self.t_count < 2:
            raise ValueError("axis counts must be >= 2")
        if not (self.omega_max > self.omega_min and self.t_max > self.t_min):
            raise ValueError("axis maxima must exceed minima")

    @property
    def omega_axis(self):
        return np.linspace(self.omega_min, self.omega_max, self.omega_count)

    @property
    def t_axis(self):
        return np.linspace(self.t_min, self.t_max, self.t_count)


def _gaussian_field(mean, cov, omega_axis, t_axis):
    inv = np.linalg.inv(cov)
    norm = (2.0 * np.pi) * np.sqrt(np.linalg.det(cov))
    dw = omega_axis[:, None] - mean[0]
    dt = t_axis[None, :] - mean[1]
    quad = inv[0, 0] * dw ** 2 + 2.0 * inv[0, 1] * dw * dt + inv[1, 1] * dt ** 2
    return np.exp(-0.5 * quad) / norm


def wigner_eval(state, grid, mode=0):
    """Wigner function of one mode on a :class:`PhaseSpaceGrid`.

    Returns an array of shape (omega_count, t_count), indexed [i_omega, i_t];
    the omega axis is shifted by ``grid.origin``.
    """
    single = reduce_to_mode(state, mode)
    omega_axis = grid.omega_axis - grid.origin
    return _gaussian_field(single.mean, single.cov, omega_axis, grid.t_axis)


def husimi_eval(state, point, mode=None):
    """Husimi function at complex point(s) alpha, alpha = (omega + i t)/sqrt2.

    ``point`` is a scalar for single-mode states (or with ``mode`` given) or a
    length-N complex vector; normalized so Int Q d^2alpha = 1.
    """
    if mode is not None:
        state = reduce_to_mode(state, mode)
    n = state.n_modes
    alpha = np.atleast_1d(np.asarray(point, dtype=complex))
    if alpha.shape != (n,):
        raise ValueError(f"point must supply {n} complex value(s)")
    x = np.sqrt(2.0) * np.concatenate([alpha.real, alpha.imag])
    sigma_q = state.cov + 0.5 * np.eye(2 * n)
    d = x - state.mean
    quad = float(d @ np.linalg.solve(sigma_q, d))
    return float(np.exp(-0.5 * quad) / (np.pi ** n * np.sqrt(np.linalg.det(sigma_q))))


def wigner_csv_text(state, grid, mode=0):
    """Wigner field as CSV text: ``omega,t,value`` rows, omega-major."""
    field = wigner_eval(state, grid, mode=mode)
    lines = ["omega,t,value"]
    for i, w in enumerate(grid.omega_axis):
        for j, t in enumerate(grid.t_axis):
            lines.append(f"{w:.17g},{t:.17g},{field[i, j]:.17g}")
    return "\n".join(lines) + "\n"


def wigner_to_csv(state, grid, path, mode=0):
    """Write the Wigner field as ``omega,t,value`` rows, omega-major."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(wigner_csv_text(state, grid, mode=mode))
    return wigner_eval(state, grid, mode=mode)
