"""
Normalized Kravchuk and Meixner functions on their lattices.

Kravchuk functions K_n(x) live on x = 0..N and are orthonormal under the
plain sum over x.  Meixner functions M_n(x) live on x = 0, 1, 2, ... and are
orthonormal under the weight 1/(mu (x + gamma)).  Both are generated by the
three-term recurrence in the degree n, seeded from closed forms evaluated in
log space.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from .errors import DomainError
from .numkit import compensated_sum, ln_binomial, ln_gamma, safe_exp

__all__ = [
    "BasisRow",
    "Family",
    "KravchukParams",
    "MeixnerParams",
    "DEFAULT_TOL",
    "kravchuk_function",
    "kravchuk_gram",
    "kravchuk_log_weights",
    "kravchuk_row",
    "kravchuk_rows",
    "kravchuk_weight",
    "meixner_cutoff",
    "meixner_function",
    "meixner_gram",
    "meixner_inner_weight",
    "meixner_mean_x",
    "meixner_mean_x_direct",
    "meixner_row",
    "meixner_rows",
    "meixner_tail_bound",
    "meixner_weight",
]

DEFAULT_TOL = 1e-13


class Family(str, enum.Enum):
    KRAVCHUK = "kravchuk"
    MEIXNER = "meixner"


@dataclass(frozen=True)
class KravchukParams:
    """Lattice size ``N`` and probability ``p``; ``q = 1 - p`` is derived."""

    N: int
    p: float

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise DomainError(f"N must be an integer >= 1, got {self.N!r}")
        if not (0.0 < self.p < 1.0):
            raise DomainError(f"p must lie strictly inside (0, 1), got {self.p!r}")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "p", float(self.p))

    @property
    def q(self) -> float:
        return 1.0 - self.p

    @property
    def grid(self) -> np.ndarray:
        return np.arange(self.N + 1, dtype=float)


@dataclass(frozen=True)
class MeixnerParams:
    gamma: float
    mu: float

    def __post_init__(self):
        if not (self.gamma > 0.0):
            raise DomainError(f"gamma must be positive, got {self.gamma!r}")
        if not (0.0 < self.mu < 1.0):
            raise DomainError(f"mu must lie strictly inside (0, 1), got {self.mu!r}")
        object.__setattr__(self, "gamma", float(self.gamma))
        object.__setattr__(self, "mu", float(self.mu))


@dataclass(frozen=True)
class BasisRow:
    """One normalized basis function sampled on its (possibly truncated) grid."""

    family: Family
    degree: int
    values: np.ndarray = field(repr=False)
    grid_limit: int

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if values.shape != (self.grid_limit + 1,):
            raise DomainError("BasisRow values must have length grid_limit + 1")

    @property
    def grid(self) -> np.ndarray:
        return np.arange(self.grid_limit + 1, dtype=float)


# --------------------------------------------------------------------------
# Kravchuk


def _check_x(params: KravchukParams, x) -> np.ndarray:
    xs = np.atleast_1d(np.asarray(x))
    if xs.size and (np.any(xs < 0) or np.any(xs > params.N) or np.any(xs != np.round(xs))):
        raise DomainError(f"x must be an integer in [0, {params.N}], got {x!r}")
    return xs.astype(float)


def kravchuk_log_weights(params: KravchukParams, x=None, *, mirrored: bool = False) -> np.ndarray:
    """ln of the binomial weight C(N,x) p^x q^(N-x) on the grid.

    ``mirrored`` swaps p and q, which is the weight seeding K_N.  The value at
    the mode comes from ln_binomial; other points accumulate the exact
    neighbour ratios outward, so adjacent weights agree to a few ulps even
    when ln C(N,x) is in the thousands.
    """
    N, p, q = params.N, params.p, params.q
    if mirrored:
        p, q = q, p
    xs = params.grid if x is None else _check_x(params, x)
    x0 = min(N, int(math.floor((N + 1) * p)))
    anchor = ln_binomial(N, x0) + x0 * math.log(p) + (N - x0) * math.log(q)
    k = np.arange(N, dtype=float)
    # ln w(k+1) - ln w(k)
    steps = np.log((N - k) / (k + 1.0)) + (math.log(p) - math.log(q))
    lw = np.empty(N + 1)
    lw[x0] = anchor
    lw[x0 + 1:] = anchor + np.cumsum(steps[x0:])
    lw[:x0] = anchor - np.cumsum(steps[:x0][::-1])[::-1]
    return lw[xs.astype(int)]


def kravchuk_weight(params: KravchukParams, x: int) -> float:
    return float(safe_exp(kravchuk_log_weights(params, [x])[0]))


def _kravchuk_split(params: KravchukParams, xs: np.ndarray) -> np.ndarray:
    # Minimizer in n of (x - d_n)^2 - 4 b_n^2 for the recurrence in n: the
    # centre of the oscillatory band, where both sweeps are still stable.
    N, p, q = params.N, params.p, params.q
    n_star = (xs - N * p) * (q - p) + 2.0 * p * q * (N - 1)
    return np.clip(np.rint(n_star), 0, N).astype(int)


def kravchuk_rows(params: KravchukParams, n_max: int | None = None, x=None) -> np.ndarray:
    """Matrix ``K[n, i] = K_n(x_i)`` for n = 0..n_max.

    Forward recurrence from K_0 is used up to the centre of the oscillatory
    band in n and backward recurrence from the closed form of K_N beyond it;
    each sweep then only runs through regions where the wanted solution is
    dominant.
    """
    N, p, q = params.N, params.p, params.q
    n_max = N if n_max is None else int(n_max)
    if not 0 <= n_max <= N:
        raise DomainError(f"n_max must lie in [0, {N}], got {n_max}")
    xs = params.grid if x is None else _check_x(params, x)
    pq = p * q
    split = _kravchuk_split(params, xs)

    out = np.empty((n_max + 1, xs.size))
    out[0] = safe_exp(0.5 * kravchuk_log_weights(params, xs))
    prev = np.zeros_like(xs)
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(n_max):
            diag = k * (q - p) + N * p - xs
            nxt = -(math.sqrt(pq * (N - k + 1) * k) * prev + diag * out[k]) / math.sqrt(
                pq * (N - k) * (k + 1)
            )
            prev = out[k]
            out[k + 1] = nxt

    need = split < n_max
    if need.any():
        xb = xs[need]
        lo = split[need]
        cur = (-1.0) ** (N - xb) * safe_exp(0.5 * kravchuk_log_weights(params, xb, mirrored=True))
        nxt = np.zeros_like(xb)
        back = np.empty((n_max + 1, xb.size))
        if N <= n_max:
            back[N] = cur
        with np.errstate(over="ignore", invalid="ignore"):
            for k in range(N, lo.min(), -1):
                diag = k * (q - p) + N * p - xb
                below = -(math.sqrt(pq * (N - k) * (k + 1)) * nxt + diag * cur) / math.sqrt(
                    pq * (N - k + 1) * k
                )
                nxt, cur = cur, below
                if k - 1 <= n_max:
                    back[k - 1] = below
        cols = np.flatnonzero(need)
        for n in range(n_max + 1):
            use = n > lo
            if use.any():
                out[n, cols[use]] = back[n, use]
    return out


def kravchuk_function(params: KravchukParams, n: int, x: int) -> float:
    if not 0 <= n <= params.N:
        raise DomainError(f"n must lie in [0, {params.N}], got {n}")
    return float(kravchuk_rows(params, n, [x])[n, 0])


def kravchuk_row(params: KravchukParams, n: int) -> BasisRow:
    if not 0 <= n <= params.N:
        raise DomainError(f"n must lie in [0, {params.N}], got {n}")
    return BasisRow(Family.KRAVCHUK, n, kravchuk_rows(params, n)[n], params.N)


def _gram(rows: np.ndarray, weight: np.ndarray | None = None) -> np.ndarray:
    k = rows.shape[0]
    weighted = rows if weight is None else rows * weight
    g = np.empty((k, k))
    for i in range(k):
        for j in range(i, k):
            g[i, j] = g[j, i] = compensated_sum(weighted[i] * rows[j])
    return g


def kravchuk_gram(params: KravchukParams, n_max: int) -> np.ndarray:
    if not 0 <= n_max <= params.N:
        raise DomainError(f"n_max must lie in [0, {params.N}], got {n_max}")
    return _gram(kravchuk_rows(params, n_max))


# --------------------------------------------------------------------------
# Meixner


_RATIO_SUM_LIMIT = 2_000_000


def _ln_rho1(params: MeixnerParams, xs: np.ndarray) -> np.ndarray:
    """ln rho_1(x) = ln(mu^x Gamma(x + gamma + 1) / (x! Gamma(gamma))).

    On integer grids the value is accumulated from the exact neighbour ratio
    mu (x + gamma + 1)/(x + 1), starting from ln rho_1(0) = ln gamma.
    Differencing large log-gammas instead would leave neighbouring values
    inconsistent at the 1e-13 level, which difference operators amplify.
    """
    g, mu = params.gamma, params.mu
    top = float(xs.max()) if xs.size else 0.0
    if xs.size and np.all(xs == np.round(xs)) and top <= _RATIO_SUM_LIMIT:
        k = np.arange(int(top), dtype=float)
        lr = np.empty(int(top) + 1)
        lr[0] = math.log(g)
        lr[1:] = lr[0] + np.cumsum(np.log(mu * (k + g + 1.0) / (k + 1.0)))
        return lr[xs.astype(int)]
    return xs * math.log(mu) + ln_gamma(xs + g + 1.0) - ln_gamma(xs + 1.0) - ln_gamma(g)


def _ln_norm2(params: MeixnerParams, n: int) -> float:
    # d_n^2 = n! Gamma(n + gamma) / (mu^(n+1) (1 - mu)^gamma Gamma(gamma))
    g, mu = params.gamma, params.mu
    return (
        math.lgamma(n + 1.0)
        + ln_gamma(n + g)
        - ln_gamma(g)
        - (n + 1) * math.log(mu)
        - g * math.log1p(-mu)
    )


def meixner_inner_weight(params: MeixnerParams, x) -> np.ndarray:
    return 1.0 / (params.mu * (np.asarray(x, dtype=float) + params.gamma))


def meixner_weight(params: MeixnerParams, x: int) -> tuple[float, float]:
    """(rho_1(x), 1/(mu (x + gamma))) at a single grid point."""
    if x < 0 or int(x) != x:
        raise DomainError(f"x must be a non-negative integer, got {x!r}")
    xs = np.array([float(x)])
    rho1 = float(safe_exp(_ln_rho1(params, xs))[0])
    return rho1, float(meixner_inner_weight(params, x))


def meixner_rows(params: MeixnerParams, n_max: int, x) -> np.ndarray:
    """Matrix ``M[n, i] = M_n(x_i)`` for n = 0..n_max by forward recurrence."""
    if n_max < 0:
        raise DomainError(f"n_max must be non-negative, got {n_max}")
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xs < 0):
        raise DomainError("Meixner grid points must be non-negative")
    g, mu = params.gamma, params.mu
    out = np.empty((n_max + 1, xs.size))
    out[0] = safe_exp(0.5 * (_ln_rho1(params, xs) - _ln_norm2(params, 0)))
    prev = np.zeros_like(xs)
    for k in range(n_max):
        diag = mu * xs + mu * k + mu * g + k - xs
        nxt = (diag * out[k] - math.sqrt(mu * (k + g - 1.0) * k) * prev) / math.sqrt(
            mu * (k + g) * (k + 1.0)
        )
        prev = out[k]
        out[k + 1] = nxt
    return out


def meixner_function(params: MeixnerParams, n: int, x: int) -> float:
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    return float(meixner_rows(params, n, [x])[n, 0])


def _ln_envelope(params: MeixnerParams, n: int, xs: np.ndarray) -> np.ndarray:
    """Upper bound on ln(M_n(x)^2 / (mu (x + gamma))).

    |m_n(x)| <= (gamma)_n sum_k C(n,k) (r x)^k / (gamma)_k with
    r = (1 - mu)/mu, from the hypergeometric form of the Meixner polynomial.
    """
    g, mu = params.gamma, params.mu
    r = (1.0 - mu) / mu
    k = np.arange(n + 1, dtype=float)
    coef = np.array([ln_binomial(n, int(i)) for i in k]) + k * math.log(r) - (
        ln_gamma(k + g) - ln_gamma(g)
    )
    with np.errstate(divide="ignore", invalid="ignore"):
        lx = np.log(xs)
        terms = coef[None, :] + np.where(k[None, :] == 0, 0.0, k[None, :] * lx[:, None])
    ln_poly = (ln_gamma(n + g) - ln_gamma(g)) + logsumexp(terms, axis=1)
    ln_w = xs * math.log(mu) + ln_gamma(xs + g) - ln_gamma(xs + 1.0) - ln_gamma(g) - math.log(mu)
    return ln_w + 2.0 * ln_poly - _ln_norm2(params, n)


def meixner_tail_bound(params: MeixnerParams, n: int, X) -> np.ndarray:
    """Analytic bound on sum_{y >= X} M_n(y)^2 / (mu (y + gamma)).

    Once the bounding ratio drops below one the tail is dominated by a
    geometric series.
    """
    Xs = np.atleast_1d(np.asarray(X, dtype=float))
    g, mu = params.gamma, params.mu
    # env(y+1)/env(y) <= mu * max(1, (y+gamma)/(y+1)) * ((y+1)/y)^(2n), and
    # the right side is non-increasing in y, so its value at X bounds every
    # later ratio.
    with np.errstate(divide="ignore"):
        ratio = mu * np.maximum(1.0, (Xs + g) / (Xs + 1.0)) * ((Xs + 1.0) / Xs) ** (2 * n)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        bound = np.where(ratio < 1.0, safe_exp(_ln_envelope(params, n, Xs)) / (1.0 - ratio), np.inf)
    return bound


def meixner_cutoff(params: MeixnerParams, n_max: int, tol: float = DEFAULT_TOL) -> int:
    """Smallest grid limit X with tail mass < tol and |M_n(X)| < tol for n <= n_max."""
    if tol <= 0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    g, mu = params.gamma, params.mu
    length = 64
    while True:
        xs = np.arange(length, dtype=float)
        ok = np.ones(length, dtype=bool)
        for n in range(n_max + 1):
            tail = meixner_tail_bound(params, n, xs)
            point = safe_exp(_ln_envelope(params, n, xs)) * mu * (xs + g)
            ok &= (tail < tol) & (point < tol * tol)
        # the bounds are monotone past the bulk; take the first X after which
        # every later point also satisfies them
        bad = np.flatnonzero(~ok)
        last_bad = bad[-1] if bad.size else -1
        if last_bad < length - 1:
            return int(last_bad + 1)
        length *= 2


def meixner_row(params: MeixnerParams, n: int, tol: float = DEFAULT_TOL) -> BasisRow:
    X = meixner_cutoff(params, n, tol)
    return BasisRow(Family.MEIXNER, n, meixner_rows(params, n, np.arange(X + 1))[n], X)


def meixner_gram(params: MeixnerParams, n_max: int, tol: float = DEFAULT_TOL) -> np.ndarray:
    if n_max < 0:
        raise DomainError(f"n_max must be non-negative, got {n_max}")
    X = meixner_cutoff(params, n_max, tol)
    xs = np.arange(X + 1, dtype=float)
    return _gram(meixner_rows(params, n_max, xs), meixner_inner_weight(params, xs))


def meixner_mean_x(params: MeixnerParams, n: int) -> float:
    """<x> in M_n under the 1/(mu(x+gamma)) inner product, from the recurrence."""
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    mu = params.mu
    return (n * (1.0 + mu) + mu * params.gamma) / (1.0 - mu)


def meixner_mean_x_direct(params: MeixnerParams, n: int, tol: float = DEFAULT_TOL) -> float:
    row = meixner_row(params, n, tol)
    xs = row.grid
    return compensated_sum(xs * row.values**2 * meixner_inner_weight(params, xs))
