"""
Wigner d-functions through Kravchuk functions, and the normalized SU(2) ladder matrices.

Half-integer labels j, m, m' are passed as doubled integers (twice_j etc.).
With N = 2j, n = j - m, x = j - m' and p = sin^2(beta/2):

    d^j_{m m'}(beta) = (-1)^(m - m') K_n(x)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .discrete_bases import KravchukParams, kravchuk_function, kravchuk_rows
from .errors import DomainError
from .ladder import BasisLabel, TridiagonalOperator

__all__ = [
    "AngularParams",
    "DERIVATIVE_IDENTITIES",
    "DIFFERENCE_IDENTITIES",
    "su2_anticommutator_spectrum",
    "su2_commutator_spectrum",
    "su2_ladder_matrices",
    "wigner_d",
    "wigner_d_matrix",
    "wigner_derivative_residual",
    "wigner_difference_residual",
    "wigner_symmetry_residual",
]

DIFFERENCE_IDENTITIES = ("mp_three_point", "m_three_point", "mixed_raise_mp", "mixed_lower_mp")
DERIVATIVE_IDENTITIES = ("raise_m_derivative", "lower_m_derivative", "lower_mp_derivative")


@dataclass(frozen=True)
class AngularParams:
    twice_j: int
    beta: float

    def __post_init__(self):
        if int(self.twice_j) != self.twice_j or self.twice_j < 1:
            raise DomainError(f"twice_j must be a positive integer, got {self.twice_j}")
        if not (0.0 < self.beta < math.pi):
            raise DomainError(f"beta must lie strictly inside (0, pi), got {self.beta}")
        object.__setattr__(self, "twice_j", int(self.twice_j))
        object.__setattr__(self, "beta", float(self.beta))

    @property
    def j(self) -> float:
        return self.twice_j / 2

    @property
    def kravchuk(self) -> KravchukParams:
        return KravchukParams(self.twice_j, math.sin(self.beta / 2) ** 2)


def _check_index(params: AngularParams, twice_m: int, name: str) -> None:
    if int(twice_m) != twice_m:
        raise DomainError(f"{name} must be given doubled as an integer, got {twice_m}")
    if (twice_m - params.twice_j) % 2:
        raise DomainError(f"{name}/2 is not in the same integer class as j = {params.twice_j}/2")
    if abs(twice_m) > params.twice_j:
        raise DomainError(f"|{name}| exceeds j")


def _sign(twice_diff: int) -> float:
    return -1.0 if (twice_diff // 2) % 2 else 1.0


def wigner_d(params: AngularParams, twice_m: int, twice_mp: int) -> float:
    """d^j_{m m'}(beta), with m = twice_m/2 and m' = twice_mp/2."""
    _check_index(params, twice_m, "m")
    _check_index(params, twice_mp, "m'")
    n = (params.twice_j - twice_m) // 2
    x = (params.twice_j - twice_mp) // 2
    return _sign(twice_m - twice_mp) * kravchuk_function(params.kravchuk, n, x)


def wigner_d_matrix(params: AngularParams) -> np.ndarray:
    """Full d^j(beta); entry [n, x] holds d_{j-n, j-x}."""
    N = params.twice_j
    K = kravchuk_rows(params.kravchuk)
    idx = np.arange(N + 1)
    signs = np.where((idx[None, :] - idx[:, None]) % 2, -1.0, 1.0)
    return signs * K


def _d_or_zero(params: AngularParams, twice_m: int, twice_mp: int) -> float:
    if abs(twice_m) > params.twice_j or abs(twice_mp) > params.twice_j:
        return 0.0
    return wigner_d(params, twice_m, twice_mp)


def wigner_symmetry_residual(params: AngularParams, twice_m: int, twice_mp: int) -> float:
    """|d_{m m'} - (-1)^(m-m') d_{m' m}|."""
    if twice_m == twice_mp:
        _check_index(params, twice_m, "m")
        return 0.0
    a = wigner_d(params, twice_m, twice_mp)
    b = wigner_d(params, twice_mp, twice_m)
    return abs(a - _sign(twice_m - twice_mp) * b)


def _ladder_coef(twice_j: int, twice_m: int, step: int) -> float:
    # sqrt((j - m)(j + m + 1)) for step=+1, sqrt((j + m)(j - m + 1)) for step=-1
    j, m = twice_j / 2, twice_m / 2
    val = (j - m) * (j + m + 1) if step > 0 else (j + m) * (j - m + 1)
    return math.sqrt(max(val, 0.0))


def wigner_difference_residual(params: AngularParams, twice_m: int, twice_mp: int, which: str) -> float:
    """Residual of a three-point relation among neighbouring d-function entries.

    mp_three_point shifts m' both ways, m_three_point shifts m both ways, and
    the mixed relations pair a shift in m' with the opposite shift in m.
    Entries with labels outside [-j, j] carry a vanishing coefficient and are
    taken as zero.
    """
    _check_index(params, twice_m, "m")
    _check_index(params, twice_mp, "m'")
    tj, b = params.twice_j, params.beta
    m, mp = twice_m / 2, twice_mp / 2
    sb, cb = math.sin(b), math.cos(b)
    d = wigner_d(params, twice_m, twice_mp)

    def d_at(dm, dmp):
        return _d_or_zero(params, twice_m + 2 * dm, twice_mp + 2 * dmp)

    if which == "mp_three_point":
        res = (0.5 * sb * _ladder_coef(tj, twice_mp, -1) * d_at(0, -1)
               + 0.5 * sb * _ladder_coef(tj, twice_mp, +1) * d_at(0, +1)
               + (m - mp * cb) * d)
    elif which == "m_three_point":
        res = (0.5 * sb * _ladder_coef(tj, twice_m, -1) * d_at(-1, 0)
               + 0.5 * sb * _ladder_coef(tj, twice_m, +1) * d_at(+1, 0)
               - (mp - m * cb) * d)
    elif which == "mixed_raise_mp":
        lhs = math.sin(b / 2) ** 2 * (m + mp) * d + 0.5 * sb * _ladder_coef(tj, twice_mp, +1) * d_at(0, +1)
        res = lhs - 0.5 * sb * _ladder_coef(tj, twice_m, -1) * d_at(-1, 0)
    elif which == "mixed_lower_mp":
        lhs = math.sin(b / 2) ** 2 * (m + mp) * d + 0.5 * sb * _ladder_coef(tj, twice_mp, -1) * d_at(0, -1)
        res = lhs - 0.5 * sb * _ladder_coef(tj, twice_m, +1) * d_at(+1, 0)
    else:
        raise DomainError(f"which must be one of {DIFFERENCE_IDENTITIES}, got {which!r}")
    return abs(res)


def wigner_derivative_residual(params: AngularParams, twice_m: int, twice_mp: int,
                               delta: float, which: str = "raise_m_derivative") -> float:
    """Residual of a first-order beta-derivative relation, d/dbeta taken by central difference.

    The residual is the finite-difference truncation error, so it shrinks as delta**2.
    """
    _check_index(params, twice_m, "m")
    _check_index(params, twice_mp, "m'")
    b, tj = params.beta, params.twice_j
    if not (delta > 0.0) or b - delta <= 0.0 or b + delta >= math.pi:
        raise DomainError(f"beta +- delta must stay inside (0, pi); beta={b}, delta={delta}")
    lo = AngularParams(tj, b - delta)
    hi = AngularParams(tj, b + delta)
    deriv = (wigner_d(hi, twice_m, twice_mp) - wigner_d(lo, twice_m, twice_mp)) / (2.0 * delta)
    m, mp = twice_m / 2, twice_mp / 2
    sb, cb = math.sin(b), math.cos(b)
    d = wigner_d(params, twice_m, twice_mp)
    if which == "raise_m_derivative":
        res = deriv + (mp - m * cb) / sb * d - _ladder_coef(tj, twice_m, +1) * _d_or_zero(params, twice_m + 2, twice_mp)
    elif which == "lower_m_derivative":
        res = -deriv + (mp - m * cb) / sb * d - _ladder_coef(tj, twice_m, -1) * _d_or_zero(params, twice_m - 2, twice_mp)
    elif which == "lower_mp_derivative":
        res = deriv - (m - mp * cb) / sb * d - _ladder_coef(tj, twice_mp, -1) * _d_or_zero(params, twice_m, twice_mp - 2)
    else:
        raise DomainError(f"which must be one of {DERIVATIVE_IDENTITIES}, got {which!r}")
    return abs(res)


def su2_ladder_matrices(twice_j: int) -> tuple[TridiagonalOperator, TridiagonalOperator]:
    """(A, A_dag) on the degree basis n = 0..2j; A lowers n, A_dag raises it."""
    if int(twice_j) != twice_j or twice_j < 1:
        raise DomainError(f"twice_j must be a positive integer, got {twice_j}")
    tj = int(twice_j)
    n = np.arange(tj, dtype=float)
    coef = np.sqrt((tj - n) * (n + 1.0) / tj)
    zeros = np.zeros(tj)
    diag = np.zeros(tj + 1)
    A = TridiagonalOperator(zeros, diag, coef, BasisLabel.DEGREE_N)
    A_dag = TridiagonalOperator(coef, diag, zeros, BasisLabel.DEGREE_N)
    return A, A_dag


def _product_diagonals(twice_j: int) -> tuple[np.ndarray, np.ndarray]:
    # diagonals of A A_dag and A_dag A, read off the bands without densifying
    A, A_dag = su2_ladder_matrices(twice_j)
    a_adag = np.zeros(twice_j + 1)
    a_adag[:-1] = A.upper * A_dag.lower
    adag_a = np.zeros(twice_j + 1)
    adag_a[1:] = A_dag.lower * A.upper
    return a_adag, adag_a


def su2_commutator_spectrum(twice_j: int) -> np.ndarray:
    """Diagonal of A A_dag - A_dag A; equals 1 - n/j."""
    a_adag, adag_a = _product_diagonals(twice_j)
    return a_adag - adag_a


def su2_anticommutator_spectrum(twice_j: int) -> np.ndarray:
    """Diagonal of A A_dag + A_dag A; equals 2n + 1 - n^2/j."""
    a_adag, adag_a = _product_diagonals(twice_j)
    return a_adag + adag_a
