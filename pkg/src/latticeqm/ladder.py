"""
Raising/lowering operators, difference operators and their factorizations.

Lattice operators (Kravchuk, Meixner) are materialized as tridiagonal matrices
acting on grid vectors, so operator identities become matrix-norm checks.
Laguerre operators act pointwise using analytic derivatives.

Conventions fixed here (checked against the orthonormal rows):

* Kravchuk: L+(x,n) = p(x+n-N) + sqrt(pq(N-x+1)x) E-, and
  L-(x,n) = p(x+n-N) + sqrt(pq(N-x)(x+1)) E+, where E+- shift x by +-1.
* Meixner: L+ M_n = -sqrt(mu(n+gamma)(n+1)) M_{n+1} and
  L- M_n = -sqrt(mu(n+gamma-1)n) M_{n-1}, the signs forced by mutual
  adjointness with the diagonal -mu(x+gamma+n).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .continuous_bases import (
    laguerre_function,
    laguerre_function_derivative,
    laguerre_function_second_derivative,
)
from .discrete_bases import (
    DEFAULT_TOL,
    BasisRow,
    Family,
    KravchukParams,
    MeixnerParams,
    kravchuk_rows,
    meixner_cutoff,
    meixner_inner_weight,
    meixner_rows,
)
from .errors import DomainError, RangeError
from .numkit import compensated_sum

__all__ = [
    "BasisLabel",
    "TridiagonalOperator",
    "MEIXNER_GUARD",
    "kravchuk_degree_ladders",
    "kravchuk_factorization_residual",
    "kravchuk_hamiltonian",
    "kravchuk_lower",
    "kravchuk_raise",
    "kravchuk_recurrence_operator",
    "kravchuk_rodrigues_product",
    "laguerre_factorization_residual",
    "laguerre_ladder_apply",
    "laguerre_lower",
    "laguerre_raise",
    "meixner_anticommutator_composition",
    "meixner_anticommutator_expansion",
    "meixner_anticommutator_residual",
    "meixner_anticommutator_value",
    "meixner_commutator_eigenvalue",
    "meixner_grid",
    "meixner_hamiltonian",
    "meixner_lower",
    "meixner_raise",
]

MEIXNER_GUARD = 8


class BasisLabel(str, enum.Enum):
    GRID_X = "grid_x"
    DEGREE_N = "degree_n"


@dataclass(frozen=True)
class TridiagonalOperator:
    """Square tridiagonal matrix; ``lower[i]`` is entry (i+1, i), ``upper[i]`` is (i, i+1)."""

    lower: np.ndarray = field(repr=False)
    diag: np.ndarray = field(repr=False)
    upper: np.ndarray = field(repr=False)
    basis_label: BasisLabel = BasisLabel.GRID_X

    def __post_init__(self):
        diag = np.array(self.diag, dtype=float)
        lower = np.array(self.lower, dtype=float)
        upper = np.array(self.upper, dtype=float)
        if diag.ndim != 1 or lower.shape != (diag.size - 1,) or upper.shape != (diag.size - 1,):
            raise DomainError("tridiagonal bands must have lengths dim-1, dim, dim-1")
        for arr in (diag, lower, upper):
            arr.setflags(write=False)
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def dim(self) -> int:
        return self.diag.size

    def apply(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        out = self.diag * v
        out[1:] += self.lower * v[:-1]
        out[:-1] += self.upper * v[1:]
        return out

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.lower, -1) + np.diag(self.upper, 1)

    @property
    def T(self) -> "TridiagonalOperator":
        return TridiagonalOperator(self.upper, self.diag, self.lower, self.basis_label)

    def __matmul__(self, other):
        if isinstance(other, TridiagonalOperator):
            return self.to_dense() @ other.to_dense()
        other = np.asarray(other, dtype=float)
        if other.ndim == 1:
            return self.apply(other)
        return self.to_dense() @ other


def _shift_coefficients(n_points: int, down, up):
    x = np.arange(n_points, dtype=float)
    # lower[i] multiplies v[i] into row i+1 (the E- coefficient at x=i+1);
    # upper[i] multiplies v[i+1] into row i (the E+ coefficient at x=i)
    return x, down(x[1:]), up(x[:-1])


# --------------------------------------------------------------------------
# Kravchuk


def _krav_a(params: KravchukParams):
    N, pq = params.N, params.p * params.q
    return lambda x: np.sqrt(pq * (N - x + 1.0) * x)


def _krav_b(params: KravchukParams):
    N, pq = params.N, params.p * params.q
    return lambda x: np.sqrt(pq * (N - x) * (x + 1.0))


def kravchuk_hamiltonian(params: KravchukParams, n: int) -> TridiagonalOperator:
    """H(x,n): the difference operator whose kernel contains K_n."""
    if not 0 <= n <= params.N:
        raise DomainError(f"n must lie in [0, {params.N}], got {n}")
    N, p, q = params.N, params.p, params.q
    x, low, up = _shift_coefficients(N + 1, _krav_a(params), _krav_b(params))
    return TridiagonalOperator(low, x * (p - q) - N * p + n, up)


def kravchuk_recurrence_operator(params: KravchukParams, x: int) -> TridiagonalOperator:
    """Three-term recurrence in n at fixed x, as an operator on the degree index."""
    N, p, q = params.N, params.p, params.q
    n = np.arange(N + 1, dtype=float)
    off = np.sqrt(p * q * (N - n[:-1]) * (n[:-1] + 1.0))
    return TridiagonalOperator(off, n * (q - p) + N * p - x, off, BasisLabel.DEGREE_N)


def _check_form(form: str) -> None:
    if form not in ("original", "symmetric"):
        raise DomainError(f"form must be 'original' or 'symmetric', got {form!r}")


def kravchuk_raise(params: KravchukParams, n: int, form: str = "original") -> TridiagonalOperator:
    """L+(x,n); maps K_n to sqrt(pq(N-n)(n+1)) K_{n+1}.

    ``form="symmetric"`` subtracts half of H(x,n), which leaves the action on
    K_n unchanged and balances the two shifts.
    """
    _check_form(form)
    N, p, q = params.N, params.p, params.q
    if n == N:
        raise RangeError(f"cannot raise K_{N}: the basis ends at n = N")
    if not 0 <= n < N:
        raise DomainError(f"n must lie in [0, {N - 1}], got {n}")
    x, low, up = _shift_coefficients(N + 1, _krav_a(params), _krav_b(params))
    if form == "original":
        return TridiagonalOperator(low, p * (x + n - N), np.zeros_like(up))
    return TridiagonalOperator(0.5 * low, 0.5 * ((x - N * p) + n * (p - q)), -0.5 * up)


def kravchuk_lower(params: KravchukParams, n: int, form: str = "original") -> TridiagonalOperator:
    """L-(x,n); maps K_n to sqrt(pq(N-n+1)n) K_{n-1} and annihilates K_0."""
    _check_form(form)
    N, p, q = params.N, params.p, params.q
    if not 0 <= n <= N:
        raise DomainError(f"n must lie in [0, {N}], got {n}")
    x, low, up = _shift_coefficients(N + 1, _krav_a(params), _krav_b(params))
    if form == "original":
        return TridiagonalOperator(np.zeros_like(low), p * (x + n - N), up)
    return TridiagonalOperator(-0.5 * low, 0.5 * ((x - N * p) + n * (p - q)), 0.5 * up)


def kravchuk_factorization_residual(params: KravchukParams, n: int, side: str = "plus_minus") -> float:
    """Max-norm residual of the factorization of H(x,n) as a matrix identity.

    plus_minus:  L+(n-1) L-(n) = pq(N-n+1)n + p diag(x+n-1-N) H(n)
    minus_plus:  L-(n+1) L+(n) = pq(N-n)(n+1) + p diag(x+n+1-N) H(n)
    """
    N, p, q = params.N, params.p, params.q
    x = params.grid
    H = kravchuk_hamiltonian(params, n).to_dense()
    if side == "plus_minus":
        if not 1 <= n <= N:
            raise DomainError(f"plus_minus needs 1 <= n <= N, got {n}")
        lhs = kravchuk_raise(params, n - 1) @ kravchuk_lower(params, n)
        rhs = p * q * (N - n + 1) * n * np.eye(N + 1) + p * (x + n - 1 - N)[:, None] * H
    elif side == "minus_plus":
        if not 0 <= n <= N - 1:
            raise DomainError(f"minus_plus needs 0 <= n <= N-1, got {n}")
        lhs = kravchuk_lower(params, n + 1) @ kravchuk_raise(params, n)
        rhs = p * q * (N - n) * (n + 1) * np.eye(N + 1) + p * (x + n + 1 - N)[:, None] * H
    else:
        raise DomainError(f"side must be 'plus_minus' or 'minus_plus', got {side!r}")
    return float(np.abs(lhs - rhs).max())


def kravchuk_rodrigues_product(params: KravchukParams, n: int) -> BasisRow:
    """K_n rebuilt as L+(n-1) ... L+(0) K_0 times its normalizing prefactor."""
    N, pq = params.N, params.p * params.q
    if not 0 <= n <= N:
        raise DomainError(f"n must lie in [0, {N}], got {n}")
    v = kravchuk_rows(params, 0)[0]
    for k in range(n):
        v = kravchuk_raise(params, k).apply(v)
    # the product of the raising coefficients is sqrt(pq^n N! n! / (N-n)!)
    log_pref = -0.5 * (n * math.log(pq) + math.lgamma(N + 1) + math.lgamma(n + 1) - math.lgamma(N - n + 1))
    return BasisRow(Family.KRAVCHUK, n, math.exp(log_pref) * v, N)


def kravchuk_degree_ladders(params: KravchukParams) -> tuple[TridiagonalOperator, TridiagonalOperator]:
    """(L+, L-) in the degree basis, from their eigen-actions on K_n."""
    N, pq = params.N, params.p * params.q
    n = np.arange(N, dtype=float)
    up_coef = np.sqrt(pq * (N - n) * (n + 1.0))
    zeros_d = np.zeros(N + 1)
    raise_op = TridiagonalOperator(up_coef, zeros_d, np.zeros(N), BasisLabel.DEGREE_N)
    lower_op = TridiagonalOperator(np.zeros(N), zeros_d, up_coef, BasisLabel.DEGREE_N)
    return raise_op, lower_op


# --------------------------------------------------------------------------
# Meixner


def meixner_grid(params: MeixnerParams, n_max: int, tol: float = DEFAULT_TOL,
                 guard: int = MEIXNER_GUARD) -> tuple[int, int]:
    """(grid_limit, dim): truncation cutoff for degrees <= n_max and matrix size with guard band."""
    X = meixner_cutoff(params, n_max, tol)
    return X, X + 1 + guard


def _meix_a(params: MeixnerParams):
    g, mu = params.gamma, params.mu
    return lambda x: np.sqrt(mu * (x + g) * x)


def _meix_b(params: MeixnerParams):
    g, mu = params.gamma, params.mu
    return lambda x: np.sqrt(mu * (x + g) ** 2 * (x + 1.0) / (x + g + 1.0))


def _meixner_dim(params: MeixnerParams, n: int, dim: int | None) -> int:
    if dim is None:
        return meixner_grid(params, n + 1)[1]
    if dim < 2:
        raise DomainError("Meixner operator dimension must be at least 2")
    return int(dim)


def meixner_hamiltonian(params: MeixnerParams, n: int, dim: int | None = None) -> TridiagonalOperator:
    g, mu = params.gamma, params.mu
    dim = _meixner_dim(params, n, dim)
    x, low, up = _shift_coefficients(dim, _meix_a(params), _meix_b(params))
    return TridiagonalOperator(low, -(mu * (x + g) + x - n * (1.0 - mu)), up)


def meixner_raise(params: MeixnerParams, n: int, dim: int | None = None,
                  form: str = "original") -> TridiagonalOperator:
    _check_form(form)
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    g, mu = params.gamma, params.mu
    dim = _meixner_dim(params, n, dim)
    x, low, up = _shift_coefficients(dim, _meix_a(params), _meix_b(params))
    if form == "original":
        return TridiagonalOperator(low, -mu * (x + g + n), np.zeros_like(up))
    diag = -0.5 * (mu * g + n * (1.0 + mu) + (mu - 1.0) * x)
    return TridiagonalOperator(0.5 * low, diag, -0.5 * up)


def meixner_lower(params: MeixnerParams, n: int, dim: int | None = None,
                  form: str = "original") -> TridiagonalOperator:
    _check_form(form)
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    g, mu = params.gamma, params.mu
    dim = _meixner_dim(params, n, dim)
    x, low, up = _shift_coefficients(dim, _meix_a(params), _meix_b(params))
    if form == "original":
        return TridiagonalOperator(np.zeros_like(low), -mu * (x + g + n), up)
    diag = -0.5 * (mu * g + n * (1.0 + mu) + (mu - 1.0) * x)
    return TridiagonalOperator(-0.5 * low, diag, 0.5 * up)


def _meixner_rows_on_grid(params: MeixnerParams, n_max: int, tol: float):
    X, dim = meixner_grid(params, n_max, tol)
    xs = np.arange(dim, dtype=float)
    return X, dim, xs, meixner_rows(params, n_max, xs)


def _project(params: MeixnerParams, xs, u, v) -> float:
    return compensated_sum(u * v * meixner_inner_weight(params, xs))


def meixner_commutator_eigenvalue(params: MeixnerParams, n: int, tol: float = DEFAULT_TOL) -> float:
    """c(n) with [L+(n-1)L-(n) - L-(n+1)L+(n)] M_n = c(n) M_n, by composing grid operators."""
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    X, dim, xs, rows = _meixner_rows_on_grid(params, n + 1, tol)
    v = rows[n]
    first = meixner_raise(params, n - 1, dim).apply(meixner_lower(params, n, dim).apply(v)) if n else 0.0 * v
    second = meixner_lower(params, n + 1, dim).apply(meixner_raise(params, n, dim).apply(v))
    out = first - second
    return _project(params, xs[: X + 1], out[: X + 1], v[: X + 1])


def meixner_anticommutator_value(params: MeixnerParams, n: int) -> float:
    """Eigenvalue of (1/2)(L+L- + L-L+) on M_n from the scalar ladder actions."""
    g, mu = params.gamma, params.mu
    return 0.5 * (mu * n * (n + g - 1.0) + mu * (n + 1.0) * (n + g))


def meixner_anticommutator_composition(params: MeixnerParams, n: int, tol: float = DEFAULT_TOL,
                                       form: str = "symmetric"):
    """(1/2)(L+(n-1)L-(n) + L-(n+1)L+(n)) M_n on the grid; returns (xs, result, M_n, grid_limit)."""
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    X, dim, xs, rows = _meixner_rows_on_grid(params, n + 2, tol)
    v = rows[n]
    first = meixner_raise(params, n - 1, dim, form).apply(meixner_lower(params, n, dim, form).apply(v)) if n else 0.0 * v
    second = meixner_lower(params, n + 1, dim, form).apply(meixner_raise(params, n, dim, form).apply(v))
    return xs, 0.5 * (first + second), v, X


def meixner_anticommutator_expansion(params: MeixnerParams, n: int, v: np.ndarray) -> np.ndarray:
    """Closed shift-operator expansion of the anticommutator, applied to grid vector ``v``.

    Stray scalar terms inside the braces are read as multiplying the
    function at x; double shifts reach x +- 2.
    """
    g, mu = params.gamma, params.mu
    x = np.arange(v.size, dtype=float)
    vp1 = np.zeros_like(v)
    vp1[:-1] = v[1:]
    vm1 = np.zeros_like(v)
    vm1[1:] = v[:-1]
    vp2 = np.zeros_like(v)
    vp2[:-2] = v[2:]
    vm2 = np.zeros_like(v)
    vm2[2:] = v[:-2]
    sq = (mu * g + (mu + 1.0) * n + (mu - 1.0) * x) ** 2 / 4.0
    cpp = np.sqrt((x + g) ** 2 * (x + 1.0) * (x + g + 1.0) * (x + 2.0) / (x + g + 2.0))
    cmm = np.sqrt(np.clip((x + g) * x * (x + g - 1.0) * (x - 1.0), 0.0, None))
    brace = cpp * vp2 - (x + g - 1.0) * x * v - (x + g) * (x + 1.0) * v + cmm * vm2
    b = np.sqrt(mu * (x + g) ** 2 * (x + 1.0) / (x + g + 1.0))
    a = np.sqrt(mu * (x + g) * x)
    return sq * v - 0.25 * mu * brace + 0.5 * (mu + 1.0) * (b * vp1 - a * vm1)


def meixner_anticommutator_residual(params: MeixnerParams, n: int, tol: float = DEFAULT_TOL) -> float:
    """Max gap on the untruncated grid between the expansion and the composition."""
    xs, comp, v, X = meixner_anticommutator_composition(params, n, tol)
    expanded = meixner_anticommutator_expansion(params, n, v)
    return float(np.abs(expanded[: X + 1] - comp[: X + 1]).max())


# --------------------------------------------------------------------------
# Laguerre


def laguerre_ladder_apply(alpha: float, n: int, f, df, s, which: str):
    """-(1/2)(2n+alpha+1-s) f -+ s f' for which = 'raise' / 'lower'."""
    s = np.asarray(s, dtype=float)
    if np.any(~(s > 0.0)):
        raise DomainError("Laguerre ladder operators act on s > 0")
    base = -0.5 * (2 * n + alpha + 1.0 - s) * f
    if which == "raise":
        return base - s * df
    if which == "lower":
        return base + s * df
    raise DomainError(f"which must be 'raise' or 'lower', got {which!r}")


def _lag(alpha, n, s):
    return (
        laguerre_function(alpha, n, s),
        laguerre_function_derivative(alpha, n, s),
        laguerre_function_second_derivative(alpha, n, s),
    )


def laguerre_raise(alpha: float, n: int, s):
    psi, dpsi, _ = _lag(alpha, n, s)
    return laguerre_ladder_apply(alpha, n, psi, dpsi, s, "raise")


def laguerre_lower(alpha: float, n: int, s):
    psi, dpsi, _ = _lag(alpha, n, s)
    return laguerre_ladder_apply(alpha, n, psi, dpsi, s, "lower")


def laguerre_factorization_residual(alpha: float, n: int, s, side: str = "minus_plus"):
    """L-(n+1)L+(n) psi_n or L+(n-1)L-(n) psi_n minus the factorized right side.

    The composition differentiates the intermediate function analytically,
    so the identity is checked as an operator statement on psi_n.
    """
    s = np.asarray(s, dtype=float)
    if np.any(~(s > 0.0)):
        raise DomainError("Laguerre ladder operators act on s > 0")
    psi, d1, d2 = _lag(alpha, n, s)
    A = 2 * n + alpha + 1.0 - s
    lam = n + 0.5 * (alpha + 1.0)
    sl = d2 + (lam / s - 0.25 - (alpha * alpha - 1.0) / (4.0 * s * s)) * psi
    if side == "minus_plus":
        g = -0.5 * A * psi - s * d1
        dg = 0.5 * psi - 0.5 * A * d1 - d1 - s * d2
        lhs = -0.5 * (A + 2.0) * g + s * dg
        rhs = (n + 1.0) * (n + alpha + 1.0) * psi - s * s * sl
    elif side == "plus_minus":
        g = -0.5 * A * psi + s * d1
        dg = 0.5 * psi - 0.5 * A * d1 + d1 + s * d2
        lhs = -0.5 * (A - 2.0) * g - s * dg
        rhs = n * (n + alpha) * psi - s * s * sl
    else:
        raise DomainError(f"side must be 'plus_minus' or 'minus_plus', got {side!r}")
    res = lhs - rhs
    return float(res) if res.ndim == 0 else res
