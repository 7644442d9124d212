"""Hydrogen radial problem in atomic units and its Meixner lattice model."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .continuous_bases import laguerre_function
from .discrete_bases import MeixnerParams, meixner_mean_x
from .errors import DomainError

__all__ = [
    "HydrogenConfig",
    "RadialQuantum",
    "Units",
    "discrete_radial_mean",
    "discrete_radial_model",
    "energy",
    "radial_function",
    "sl_mapping",
]


class Units(str, enum.Enum):
    ATOMIC = "atomic"


@dataclass(frozen=True)
class HydrogenConfig:
    Z: int = 1
    units: Units = Units.ATOMIC

    def __post_init__(self):
        if int(self.Z) != self.Z or self.Z < 1:
            raise DomainError(f"Z must be a positive integer, got {self.Z}")
        object.__setattr__(self, "units", Units(self.units))


@dataclass(frozen=True)
class RadialQuantum:
    nu: int
    l: int

    def __post_init__(self):
        if int(self.nu) != self.nu or self.nu < 1:
            raise DomainError(f"principal number nu must be a positive integer, got {self.nu}")
        if int(self.l) != self.l or self.l < 0:
            raise DomainError(f"l must be a non-negative integer, got {self.l}")
        if self.l > self.nu - 1:
            raise DomainError(f"l = {self.l} not allowed for nu = {self.nu}: the degenerate levels need l <= nu - 1")

    @property
    def alpha(self) -> int:
        return 2 * self.l + 1

    @property
    def n(self) -> int:
        return self.nu - self.l - 1

    @property
    def gamma(self) -> int:
        return 2 * self.l + 2


def energy(config: HydrogenConfig, nu: int) -> float:
    """-Z^2 / (2 nu^2) hartree."""
    if int(nu) != nu or nu < 1:
        raise DomainError(f"nu must be a positive integer, got {nu}")
    return -(config.Z * config.Z) / (2.0 * nu * nu)


def radial_function(q: RadialQuantum, rho):
    """Radial eigenfunction in the scaled variable rho, unit norm under d(rho)/rho."""
    rho_arr = np.asarray(rho, dtype=float)
    if np.any(~(rho_arr > 0.0)):
        raise DomainError("rho must be positive")
    return laguerre_function(q.alpha, q.n, rho)


def sl_mapping(q: RadialQuantum) -> tuple[float, float]:
    """(alpha, lambda) of the Laguerre equation that the radial equation reduces to."""
    alpha = q.alpha
    if q.l * (q.l + 1) * 4 != alpha * alpha - 1:
        raise AssertionError("centrifugal term does not match (alpha^2 - 1)/4")
    lam = q.n + (alpha + 1) / 2
    return float(alpha), float(lam)


def discrete_radial_model(l: int, h: float) -> MeixnerParams:
    """Meixner parameters (gamma = 2l + 2, mu = 1 - h) for lattice step h in s = h x."""
    if int(l) != l or l < 0:
        raise DomainError(f"l must be a non-negative integer, got {l}")
    if not (0.0 < h < 1.0):
        raise DomainError(f"h must lie in (0, 1), got {h}")
    return MeixnerParams(2.0 * l + 2.0, 1.0 - h)


def discrete_radial_mean(l: int, n: int, h: float) -> float:
    """Lattice estimate h <x>_n of the mean radius <s>; tends to 2n + 2l + 2 as h -> 0."""
    if int(n) != n or n < 0:
        raise DomainError(f"n must be a non-negative integer, got {n}")
    return h * meixner_mean_x(discrete_radial_model(l, h), n)
