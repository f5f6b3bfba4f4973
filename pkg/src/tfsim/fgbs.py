"""Frequency-based Gaussian boson sampling over Hermite-Gauss mode patterns.

A zero-mean N-mode time-frequency Gaussian state assigns to every detection
pattern n = (n_1, ..., n_N) of HG mode orders the probability

    P(n) = |det Sigma_Q|^{-1/2} * haf(reduce(A, n)) / prod(n_i!),

where Sigma_Q = Sigma_c + I/2 in the (alpha, alpha*) basis, A is the
block-swapped matrix X (I - Sigma_Q^{-1}) with X = [[0, I], [I, 0]], and
``reduce`` repeats rows/columns i and N+i of A n_i times. The hafnian is
evaluated through the moment identity in :func:`tfsim.hafnian.reduced_hafnian`
whose cost scales with prod (n_i + 1)^2 rather than with the reduced
dimension's matching count.

Everything is cross-checked against :func:`oracle_probability`, which knows
nothing of hafnians: it reconstructs the pure-state frequency wavefunction
from the covariance matrix and projects it onto the HG product basis by
tensor-product Gauss-Hermite quadrature.

Cost guards protect the hafnian evaluation and the sampler's pattern
enumeration; the limit defaults to DEFAULT_MAX_COST cost units (one unit =
one term of the moment sum) and can be overridden per call or through the
TFSIM_MAX_COST environment variable.
"""

from __future__ import annotations

import itertools
import json
import math
import os
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_hermite

from .exceptions import CostGuardError, InsufficientMassError
from .gaussian import purity_defect, to_complex_covariance
from .hafnian import reduced_hafnian
from .hg import hermite_functions

__all__ = [
    "FgbsDistribution",
    "DEFAULT_MAX_COST",
    "MASS_REQUIREMENT",
    "build_distribution",
    "probability",
    "oracle_probability",
    "total_probability",
    "sample",
    "samples_to_jsonl",
    "probability_table_csv",
]

DEFAULT_MAX_COST = 1_000_000
MASS_REQUIREMENT = 0.999
IMAG_TOL = 1e-10
MEAN_TOL = 1e-12
PURITY_TOL = 1e-8


def _cost_limit(max_cost):
    if max_cost is not None:
        return int(max_cost)
    env = os.environ.get("TFSIM_MAX_COST")
    return int(env) if env else DEFAULT_MAX_COST


def _check_pattern(pattern, n_modes):
    arr = np.asarray(pattern)
    if arr.ndim != 1 or arr.size != n_modes:
        raise ValueError(f"pattern must list one mode order per mode ({n_modes})")
    if arr.dtype.kind not in "iu" or np.any(arr < 0):
        raise ValueError("pattern entries must be nonnegative integers")
    return tuple(int(v) for v in arr)


@dataclass(frozen=True)
class FgbsDistribution:
    """Sampling data derived from a zero-mean Gaussian state.

    ``sigma_q`` is the Husimi covariance Sigma_c + I/2, ``a_matrix`` the
    complex symmetric kernel entering the hafnian, ``prefactor`` the
    normalization |det Sigma_Q|^{-1/2}, and ``is_pure`` records whether the
    source state was pure (pure sources place zero mass on odd total index).
    """

    source: object
    sigma_q: np.ndarray
    a_matrix: np.ndarray
    prefactor: float
    is_pure: bool

    @property
    def n_modes(self):
        return self.a_matrix.shape[0] // 2


def build_distribution(state):
    """Derive (Sigma_Q, A, prefactor) from a zero-mean Gaussian state.

    Displaced states are rejected: their probabilities would need loop
    hafnians, which are out of scope.
    """
    if float(np.max(np.abs(state.mean))) > MEAN_TOL:
        raise ValueError("displaced states are not supported; mean must be zero")
    n = state.n_modes
    eye = np.eye(2 * n)
    sigma_q = to_complex_covariance(state) + 0.5 * eye
    swap = np.block([[np.zeros((n, n)), np.eye(n)], [np.eye(n), np.zeros((n, n))]])
    a = swap @ (eye - np.linalg.inv(sigma_q))
    asym = float(np.max(np.abs(a - a.T)))
    if asym > 1e-10:
        raise ArithmeticError(f"A matrix lost its symmetry (defect {asym:.3e})")
    a = (a + a.T) / 2.0
    radius = float(np.max(np.abs(np.linalg.eigvals(a))))
    if radius >= 1.0:
        raise ValueError(
            f"spectral radius of A is {radius:.6f} >= 1; distribution not normalizable"
        )
    prefactor = 1.0 / math.sqrt(abs(np.linalg.det(sigma_q)))
    return FgbsDistribution(
        source=state,
        sigma_q=sigma_q,
        a_matrix=a,
        prefactor=prefactor,
        is_pure=purity_defect(state) < 1e-10,
    )


def _pattern_cost(pattern):
    return math.prod((v + 1) ** 2 for v in pattern)


def probability(dist, pattern, max_cost=None):
    """Exact probability of one detection pattern.

    Pure sources short-circuit odd total index to exactly 0; mixed Gaussian
    sources can populate odd totals and take the full hafnian path.
    """
    pattern = _check_pattern(pattern, dist.n_modes)
    limit = _cost_limit(max_cost)
    cost = _pattern_cost(pattern)
    if cost > limit:
        raise CostGuardError(f"pattern cost {cost} exceeds the limit {limit}")
    if dist.is_pure and sum(pattern) % 2:
        return 0.0
    haf = reduced_hafnian(dist.a_matrix, pattern)
    value = dist.prefactor * haf / math.prod(math.factorial(v) for v in pattern)
    value = complex(value)
    if abs(value.imag) > IMAG_TOL:
        raise ArithmeticError(f"probability has imaginary residue {value.imag:.3e}")
    return float(value.real)


def _pure_wavefunction_params(state):
    """Quadratic form V + iU of the frequency wavefunction exp(-w(V+iU)w/2)."""
    n = state.n_modes
    sww = state.cov[:n, :n]
    swt = state.cov[:n, n:]
    stt = state.cov[n:, n:]
    inv_ww = np.linalg.inv(sww)
    v = 0.5 * inv_ww
    u = -inv_ww @ swt
    if float(np.max(np.abs(u - u.T))) > PURITY_TOL:
        raise ValueError("covariance is not that of a pure Gaussian state")
    u = (u + u.T) / 2.0
    predicted_tt = 0.5 * (v + u @ np.linalg.inv(v) @ u)
    if float(np.max(np.abs(stt - predicted_tt))) > PURITY_TOL:
        raise ValueError("covariance is not that of a pure Gaussian state")
    return v, u


def oracle_probability(state, pattern, rule_order=48):
    """Ground-truth pattern probability by direct quadrature, no hafnians.

    Reconstructs the pure-state wavefunction in the frequency representation
    from the covariance matrix and evaluates |<n|psi>|^2 with a
    tensor-product Gauss-Hermite rule. Limited to 3 modes and total index 8.
    """
    n_modes = state.n_modes
    pattern = _check_pattern(pattern, n_modes)
    if n_modes > 3:
        raise CostGuardError("quadrature oracle is limited to 3 modes")
    if sum(pattern) > 8:
        raise CostGuardError("quadrature oracle is limited to total index 8")
    if float(np.max(np.abs(state.mean))) > MEAN_TOL:
        raise ValueError("displaced states are not supported; mean must be zero")
    if purity_defect(state) > PURITY_TOL:
        raise ValueError("quadrature oracle handles pure states only")
    v, u = _pure_wavefunction_params(state)
    m = v + 1j * u
    nodes, weights = roots_hermite(rule_order)
    modified = np.exp(np.log(weights) + nodes**2)
    factors = [hermite_functions(k, nodes)[k] * modified for k in pattern]
    weight_tensor = factors[0]
    for f in factors[1:]:
        weight_tensor = np.multiply.outer(weight_tensor, f)
    grids = np.meshgrid(*([nodes] * n_modes), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=-1)
    quad = np.einsum("gi,ij,gj->g", pts, m, pts)
    pref = (np.linalg.det(v) / np.pi**n_modes) ** 0.25
    psi = pref * np.exp(-0.5 * quad)
    amp = weight_tensor.ravel() @ psi
    return float(np.abs(amp) ** 2)


def _enumeration_cost(cutoff, n_modes):
    return sum((j + 1) ** 2 for j in range(cutoff + 1)) ** n_modes


def _enumerate_probabilities(dist, cutoff, max_cost):
    limit = _cost_limit(max_cost)
    cost = _enumeration_cost(cutoff, dist.n_modes)
    if cost > limit:
        raise CostGuardError(
            f"enumerating patterns up to cutoff {cutoff} costs {cost} > limit {limit}"
        )
    patterns = list(itertools.product(range(cutoff + 1), repeat=dist.n_modes))
    probs = np.array([probability(dist, p, max_cost=limit) for p in patterns])
    if float(probs.min()) < -1e-9:
        raise ArithmeticError(f"negative probability {probs.min():.3e} encountered")
    return patterns, np.clip(probs, 0.0, None)


def total_probability(dist, cutoff, max_cost=None):
    """Total mass of all patterns with every entry <= cutoff."""
    _, probs = _enumerate_probabilities(dist, cutoff, max_cost)
    return float(probs.sum())


def sample(dist, shots, rng_seed, cutoff, max_cost=None):
    """Draw detection patterns by exact enumeration and CDF inversion.

    The truncation must capture at least MASS_REQUIREMENT of the
    distribution, else :class:`InsufficientMassError` reports the achieved
    mass. Identical seeds give identical sequences.
    """
    if shots < 0:
        raise ValueError("shots must be >= 0")
    patterns, probs = _enumerate_probabilities(dist, cutoff, max_cost)
    mass = float(probs.sum())
    if mass < MASS_REQUIREMENT:
        raise InsufficientMassError(mass, MASS_REQUIREMENT)
    cdf = np.cumsum(probs / mass)
    cdf[-1] = 1.0
    rng = np.random.default_rng(rng_seed)
    draws = rng.random(shots)
    idx = np.searchsorted(cdf, draws, side="right")
    return [patterns[i] for i in idx]


def samples_to_jsonl(samples, path=None):
    """Serialize samples as JSON lines {"shot": i, "pattern": [...]}."""
    lines = [
        json.dumps({"shot": i, "pattern": list(map(int, p))}, sort_keys=True)
        for i, p in enumerate(samples)
    ]
    text = "\n".join(lines) + ("\n" if lines else "")
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text


def probability_table_csv(dist, cutoff, path=None, max_cost=None):
    """Tabulate pattern probabilities as CSV (pattern entries ';'-joined)."""
    patterns, probs = _enumerate_probabilities(dist, cutoff, max_cost)
    lines = ["pattern,probability"]
    for pat, p in zip(patterns, probs):
        lines.append(f"{';'.join(map(str, pat))},{p:.17g}")
    text = "\n".join(lines) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text
