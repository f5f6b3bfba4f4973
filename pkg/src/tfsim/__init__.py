"""Time-frequency continuous-variable simulator for single-photon quantum optics.

Subpackages cover Hermite-Gauss spectral modes (:mod:`tfsim.hg`),
time-frequency Gaussian states and symplectic gates (:mod:`tfsim.gaussian`),
two-photon joint spectral amplitudes and the frequency beam splitter
(:mod:`tfsim.twophoton`), two-photon phase metrology (:mod:`tfsim.metrology`),
hafnian kernels (:mod:`tfsim.hafnian`), frequency-based Gaussian boson
sampling (:mod:`tfsim.fgbs`), circuit descriptions (:mod:`tfsim.circuit`),
and the command-line front end (:mod:`tfsim.cli`).
"""

from . import circuit, exceptions, fgbs, gaussian, hafnian, hg, metrology, twophoton
from .exceptions import (
    CostGuardError,
    InsufficientMassError,
    SchemaError,
    TfsimError,
    UnknownGateError,
)

__all__ = [
    "exceptions",
    "hg",
    "hafnian",
    "gaussian",
    "twophoton",
    "metrology",
    "fgbs",
    "circuit",
    "TfsimError",
    "SchemaError",
    "UnknownGateError",
    "CostGuardError",
    "InsufficientMassError",
    "__version__",
]

__version__ = "0.1.0"
