"""Joint spectral amplitudes of photon pairs and the frequency beam splitter.

A photon pair with one photon in each spatial arm carries a joint spectral
amplitude F(omega_a, omega_b); over a shared Hermite-Gauss basis of width
sigma it becomes the coefficient matrix C[n, m] = <n, m|psi>. The frequency
beam splitter (FBS) maps the two frequencies to their normalized sum and
difference -- a pi/4 rotation of the (omega_a, omega_b) plane. On HG indices
this is exactly the balanced beam-splitter unitary: the total index k = n + m
is conserved and each k-sector transforms by the orthogonal matrix of
:func:`sector_matrix`, fixed by the ladder map a -> (a - b)/sqrt2,
b -> (a + b)/sqrt2 so that C[1][1] = 1 goes to (C[2][0] - C[0][2])/sqrt2.

Two evaluation paths are provided: the exact sector path (:func:`apply_fbs`)
and a brute-force grid path (:func:`apply_fbs_grid`) that samples F, rotates
the plane, and projects back onto the basis. They agree to quadrature
accuracy, which the test-suite checks on random inputs.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .hg import SpectralState, hermite_functions

__all__ = [
    "JointSpectralAmplitude",
    "TruncationWarning",
    "sector_matrix",
    "product_jsa",
    "apply_fbs",
    "apply_fbs_grid",
    "coincidence_probability",
    "mode_marginal",
    "hom_output",
    "jsa_to_csv",
]

NORM_TOL = 1e-8
TRUNCATION_TOL = 1e-6


class TruncationWarning(UserWarning):
    """A forced output cutoff discarded more than TRUNCATION_TOL of the norm."""


@lru_cache(maxsize=None)
def sector_matrix(k):
    """Unitary action of the FBS on the total-index-k sector.

    Returns the (k+1) x (k+1) real orthogonal matrix U with
    C_out[r, k-r] = sum_n U[r, n] C_in[n, k-n], derived from expanding
    (a - b)^n (a + b)^m / sqrt(2^k) in the ladder picture.
    """
    u = np.zeros((k + 1, k + 1))
    for n in range(k + 1):
        m = k - n
        for r in range(k + 1):
            acc = 0
            for q in range(max(0, r - n), min(m, r) + 1):
                acc += math.comb(n, r - q) * math.comb(m, q) * (-1) ** (n - r + q)
            if acc:
                amp = math.exp(
                    0.5
                    * (
                        math.lgamma(r + 1)
                        + math.lgamma(k - r + 1)
                        - math.lgamma(n + 1)
                        - math.lgamma(m + 1)
                    )
                )
                u[r, n] = amp * acc * 2.0 ** (-0.5 * k)
    u.setflags(write=False)
    return u


@dataclass(frozen=True)
class JointSpectralAmplitude:
    """Two-photon spectral state: square coefficient matrix over HG pairs.

    ``coeffs[n, m]`` is the amplitude on basis mode n in arm a and m in arm b;
    ``sigma`` is the shared basis width. The total weight may fall short of 1
    (truncation); the shortfall is exposed as ``deficit``, never renormalized.
    """

    coeffs: np.ndarray
    sigma: float = 1.0

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if coeffs.ndim != 2 or coeffs.shape[0] != coeffs.shape[1]:
            raise ValueError("coeffs must be a square matrix")
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")
        norm = float(np.sum(np.abs(coeffs) ** 2))
        if norm > 1.0 + NORM_TOL:
            raise ValueError(f"coefficient norm {norm} exceeds 1")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def cutoff(self):
        return self.coeffs.shape[0] - 1

    @property
    def norm_squared(self):
        return float(np.sum(np.abs(self.coeffs) ** 2))

    @property
    def deficit(self):
        return 1.0 - self.norm_squared


def product_jsa(a, b):
    """Separable pair: C[n, m] = a.coeffs[n] * b.coeffs[m].

    Both :class:`~tfsim.hg.SpectralState` inputs must share the basis width.
    """
    if not isinstance(a, SpectralState) or not isinstance(b, SpectralState):
        raise TypeError("product_jsa expects two SpectralState inputs")
    if a.sigma != b.sigma:
        raise ValueError(f"basis widths differ: {a.sigma} vs {b.sigma}")
    size = max(a.coeffs.size, b.coeffs.size)
    ca = np.zeros(size, dtype=complex)
    cb = np.zeros(size, dtype=complex)
    ca[: a.coeffs.size] = a.coeffs
    cb[: b.coeffs.size] = b.coeffs
    return JointSpectralAmplitude(np.outer(ca, cb), a.sigma)


def _populated_kmax(coeffs):
    rows, cols = np.nonzero(coeffs)
    if rows.size == 0:
        return 0
    return int(np.max(rows + cols))


def _resolve_cutoff(jsa, cutoff):
    natural = max(jsa.cutoff, _populated_kmax(jsa.coeffs))
    return natural if cutoff is None else int(cutoff)


def _warn_truncation(lost):
    if lost > TRUNCATION_TOL:
        warnings.warn(
            f"forced cutoff discarded {lost:.3e} of the squared norm",
            TruncationWarning,
            stacklevel=3,
        )


def apply_fbs(jsa, cutoff=None):
    """Frequency beam splitter on a JSA, exact sector-by-sector.

    The output matrix is enlarged so that every populated total-index sector
    fits (k = n + m is conserved, so the map is then exact). Passing an
    explicit smaller ``cutoff`` truncates and warns if the discarded squared
    norm exceeds 1e-6.
    """
    target = _resolve_cutoff(jsa, cutoff)
    cin = jsa.coeffs
    out = np.zeros((target + 1, target + 1), dtype=complex)
    kmax = _populated_kmax(cin)
    for k in range(kmax + 1):
        full = np.zeros(k + 1, dtype=complex)
        lo = max(0, k - jsa.cutoff)
        hi = min(k, jsa.cutoff)
        for n in range(lo, hi + 1):
            full[n] = cin[n, k - n]
        if not np.any(full):
            continue
        image = sector_matrix(k) @ full
        for r in range(k + 1):
            if r <= target and k - r <= target:
                out[r, k - r] += image[r]
    result = JointSpectralAmplitude(out, jsa.sigma)
    _warn_truncation(jsa.norm_squared - result.norm_squared)
    return result


def apply_fbs_grid(jsa, cutoff=None, points=512, extent=8.0):
    """Brute-force FBS: rotate sampled function values, project back.

    Samples F on a ``points`` x ``points`` grid over +-``extent`` (in units of
    sigma), evaluates F((x - y)/sqrt2, (x + y)/sqrt2), and recovers
    coefficients by Riemann-sum projection onto the basis. Independent of
    :func:`apply_fbs`; used as its oracle.
    """
    target = _resolve_cutoff(jsa, cutoff)
    x = np.linspace(-extent, extent, points)
    dx = x[1] - x[0]
    grid_x, grid_y = x[:, None], x[None, :]
    u = ((grid_x - grid_y) / np.sqrt(2.0)).ravel()
    v = ((grid_x + grid_y) / np.sqrt(2.0)).ravel()
    pu = hermite_functions(jsa.cutoff, u)
    pv = hermite_functions(jsa.cutoff, v)
    rotated = np.einsum("np,np->p", pu, jsa.coeffs @ pv).reshape(points, points)
    pout = hermite_functions(target, x)
    coeffs = (pout * dx) @ rotated @ (pout.T * dx)
    result = JointSpectralAmplitude(coeffs, jsa.sigma)
    _warn_truncation(jsa.norm_squared - result.norm_squared)
    return result


def coincidence_probability(jsa, n, m):
    """Probability |C[n, m]|^2 of detecting modes (n, m) in arms (a, b)."""
    if not (0 <= n <= jsa.cutoff and 0 <= m <= jsa.cutoff):
        raise ValueError(f"indices ({n},{m}) outside truncation 0..{jsa.cutoff}")
    return float(np.abs(jsa.coeffs[n, m]) ** 2)


def mode_marginal(jsa, arm):
    """Per-arm mode distribution: p[n] = sum_m |C[n, m]|^2 (arm 'a') or transpose."""
    weights = np.abs(jsa.coeffs) ** 2
    if arm == "a":
        return weights.sum(axis=1)
    if arm == "b":
        return weights.sum(axis=0)
    raise ValueError(f"arm must be 'a' or 'b', got {arm!r}")


def hom_output(n=1, sigma=1.0):
    """Two photons in basis mode n, one per arm, after the beam splitter."""
    if n < 0:
        raise ValueError("mode order must be >= 0")
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[n] = 1.0
    photon = SpectralState(coeffs=coeffs, sigma=sigma)
    return apply_fbs(product_jsa(photon, photon))


def jsa_to_csv(jsa, path):
    """Write coefficients as ``n,m,re,im`` rows, n-major."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("n,m,re,im\n")
        for n in range(jsa.cutoff + 1):
            for m in range(jsa.cutoff + 1):
                c = jsa.coeffs[n, m]
                fh.write(f"{n},{m},{c.real:.17g},{c.imag:.17g}\n")
