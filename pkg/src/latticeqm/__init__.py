"""Lattice models of the harmonic oscillator and the hydrogen atom.

Kravchuk functions give a finite-lattice oscillator tied to Wigner
d-functions and SU(2) ladder algebra; Meixner functions give a lattice
radial model of hydrogen whose limit is the Laguerre basis.
"""

from .errors import DomainError, RangeError
from .discrete_bases import BasisRow, KravchukParams, MeixnerParams
from .ladder import TridiagonalOperator
from .limits import ConvergenceReport, SweepSpec
from .wigner import AngularParams
from .oscillator_model import OscillatorConfig
from .hydrogen_model import HydrogenConfig, RadialQuantum

__all__ = [
    "AngularParams",
    "BasisRow",
    "ConvergenceReport",
    "DomainError",
    "HydrogenConfig",
    "KravchukParams",
    "MeixnerParams",
    "OscillatorConfig",
    "RadialQuantum",
    "RangeError",
    "SweepSpec",
    "TridiagonalOperator",
]

__version__ = "0.1.0"
