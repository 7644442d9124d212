"""Finite-lattice harmonic oscillator built on the SU(2) ladder matrices."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .ladder import BasisLabel, TridiagonalOperator
from .wigner import su2_anticommutator_spectrum, su2_ladder_matrices

__all__ = [
    "OscillatorConfig",
    "dispersion",
    "dispersion_from_matrices",
    "momentum_matrix",
    "position_matrix",
    "spectrum",
    "uncertainty_product",
]


@dataclass(frozen=True)
class OscillatorConfig:
    twice_j: int
    beta: float = math.pi / 2
    mass: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if int(self.twice_j) != self.twice_j or self.twice_j < 1:
            raise DomainError(f"twice_j must be a positive integer, got {self.twice_j}")
        if not (0.0 < self.beta < math.pi):
            raise DomainError(f"beta must lie strictly inside (0, pi), got {self.beta}")
        for name in ("mass", "omega", "hbar"):
            if not (getattr(self, name) > 0.0):
                raise DomainError(f"{name} must be positive")
        object.__setattr__(self, "twice_j", int(self.twice_j))

    @property
    def N(self) -> int:
        return self.twice_j

    @property
    def position_spacing(self) -> float:
        """Spacing of the lattice abscissa m'; not an eigenvalue gap of position_matrix."""
        return math.sqrt(self.hbar / (self.mass * self.omega))

    @property
    def level_spacing(self) -> float:
        return self.hbar * self.omega

    @property
    def x_scale(self) -> float:
        return math.sqrt(self.hbar / (2.0 * self.mass * self.omega))

    @property
    def p_scale(self) -> float:
        return math.sqrt(self.mass * self.hbar * self.omega / 2.0)


def position_matrix(config: OscillatorConfig) -> TridiagonalOperator:
    """sqrt(hbar/2M omega) (A + A_dag), stored Hermitian (the overall phase i is dropped)."""
    A, A_dag = su2_ladder_matrices(config.twice_j)
    c = config.x_scale
    return TridiagonalOperator(c * A_dag.lower, np.zeros(A.dim), c * A.upper, BasisLabel.DEGREE_N)


def momentum_matrix(config: OscillatorConfig) -> TridiagonalOperator:
    """sqrt(M hbar omega/2) (A - A_dag); real antisymmetric."""
    A, A_dag = su2_ladder_matrices(config.twice_j)
    c = config.p_scale
    return TridiagonalOperator(-c * A_dag.lower, np.zeros(A.dim), c * A.upper, BasisLabel.DEGREE_N)


def _check_n(config: OscillatorConfig, n: int) -> None:
    if int(n) != n or not 0 <= n <= config.twice_j:
        raise DomainError(f"n must be an integer in [0, {config.twice_j}], got {n}")


def dispersion(config: OscillatorConfig, n: int) -> tuple[float, float]:
    """(dX, dP) in state n from the anticommutator spectrum 2n + 1 - n^2/j."""
    _check_n(config, n)
    s = su2_anticommutator_spectrum(config.twice_j)[n]
    return config.x_scale * math.sqrt(s), config.p_scale * math.sqrt(s)


def dispersion_from_matrices(config: OscillatorConfig, n: int) -> tuple[float, float]:
    """(dX, dP) from <n|X^2|n> and <n|P^T P|n> by explicit matrix products."""
    _check_n(config, n)
    X = position_matrix(config).to_dense()
    P = momentum_matrix(config).to_dense()
    # P is real antisymmetric, so P^T P plays the role of the Hermitian square
    return math.sqrt((X @ X)[n, n]), math.sqrt((P.T @ P)[n, n])


def uncertainty_product(config: OscillatorConfig, n: int) -> float:
    """(hbar/2)(2n + 1 - n^2/j), evaluated so that n = 0 and n = 2j give hbar/2 exactly."""
    _check_n(config, n)
    tj = config.twice_j
    # 2n + 1 - 2n^2/(2j) = 1 + 2n(2j - n)/(2j): exact integers until the final division
    return 0.5 * config.hbar * (1.0 + (2 * n * (tj - n)) / tj)


def spectrum(config: OscillatorConfig) -> np.ndarray:
    """Levels hbar*omega*(n + 1/2) for n = 0..2j, i.e. m = j - n runs from j down to -j."""
    return config.level_spacing * (np.arange(config.twice_j + 1) + 0.5)
