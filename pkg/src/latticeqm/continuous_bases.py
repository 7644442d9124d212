"""
Continuum reference functions: normalized Hermite and generalized Laguerre.

Laguerre functions are

    psi_n^alpha(s) = sqrt(n!/Gamma(n+alpha+1)) s^((alpha+1)/2) e^(-s/2) L_n^alpha(s),

orthonormal under the measure ds/s.  First and second derivatives are
analytic, via d/ds L_n^alpha = -L_{n-1}^{alpha+1}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .numkit import ln_gamma

__all__ = [
    "HermiteFunction",
    "LaguerreFunction",
    "gauss_legendre_integral",
    "hermite_function",
    "hermite_functions",
    "hermite_recurrence_residual",
    "laguerre_function",
    "laguerre_function_derivative",
    "laguerre_function_second_derivative",
    "laguerre_overlap",
    "laguerre_polynomial",
    "laguerre_recurrence_residual",
    "laguerre_sl_residual",
]

_PI_M14 = math.pi ** -0.25


def hermite_functions(n_max: int, s) -> np.ndarray:
    """Rows psi_0..psi_{n_max} at ``s`` from the normalized recurrence."""
    if n_max < 0:
        raise DomainError(f"n_max must be non-negative, got {n_max}")
    s = np.asarray(s, dtype=float)
    out = np.empty((n_max + 1,) + s.shape)
    out[0] = _PI_M14 * np.exp(-0.5 * s * s)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * s * out[0]
    for n in range(1, n_max):
        out[n + 1] = (math.sqrt(2.0) * s * out[n] - math.sqrt(n) * out[n - 1]) / math.sqrt(n + 1.0)
    return out


def hermite_function(n: int, s):
    values = hermite_functions(n, s)[n]
    return float(values) if values.ndim == 0 else values


def hermite_recurrence_residual(n: int, s):
    """sqrt(2(n+1)) psi_{n+1} + sqrt(2n) psi_{n-1} - 2 s psi_n."""
    rows = hermite_functions(n + 1, s)
    below = rows[n - 1] if n >= 1 else 0.0
    return math.sqrt(2.0 * (n + 1)) * rows[n + 1] + math.sqrt(2.0 * n) * below - 2.0 * np.asarray(s) * rows[n]


@dataclass(frozen=True)
class HermiteFunction:
    degree: int

    def __call__(self, s):
        return hermite_function(self.degree, s)


def _check_alpha_s(alpha: float, s) -> np.ndarray:
    if not alpha > -1.0:
        raise DomainError(f"alpha must exceed -1, got {alpha!r}")
    s = np.asarray(s, dtype=float)
    if np.any(~(s > 0.0)):
        raise DomainError("Laguerre functions are defined for s > 0")
    return s


def laguerre_polynomial(alpha: float, n: int, s) -> np.ndarray:
    """Generalized Laguerre polynomial L_n^alpha(s); zero for n < 0."""
    s = np.asarray(s, dtype=float)
    if n < 0:
        return np.zeros_like(s)
    prev = np.zeros_like(s)
    cur = np.ones_like(s)
    for k in range(n):
        prev, cur = cur, ((2 * k + alpha + 1.0 - s) * cur - (k + alpha) * prev) / (k + 1.0)
    return cur


def _prefactor(alpha: float, n: int, s: np.ndarray) -> np.ndarray:
    # sqrt(n!/Gamma(n+alpha+1)) s^((alpha+1)/2) e^(-s/2), in log space
    return np.exp(0.5 * (math.lgamma(n + 1.0) - ln_gamma(n + alpha + 1.0) + (alpha + 1.0) * np.log(s) - s))


def _scalar(a):
    return float(a) if np.ndim(a) == 0 else a


def laguerre_function(alpha: float, n: int, s):
    s = _check_alpha_s(alpha, s)
    return _scalar(_prefactor(alpha, n, s) * laguerre_polynomial(alpha, n, s))


def laguerre_function_derivative(alpha: float, n: int, s):
    s = _check_alpha_s(alpha, s)
    pre = _prefactor(alpha, n, s)
    log_slope = (alpha + 1.0) / (2.0 * s) - 0.5
    return _scalar(pre * (log_slope * laguerre_polynomial(alpha, n, s) - laguerre_polynomial(alpha + 1.0, n - 1, s)))


def laguerre_function_second_derivative(alpha: float, n: int, s):
    s = _check_alpha_s(alpha, s)
    pre = _prefactor(alpha, n, s)
    log_slope = (alpha + 1.0) / (2.0 * s) - 0.5
    # P''/P for P = s^a e^(-s/2), a = (alpha+1)/2
    curv = log_slope**2 - (alpha + 1.0) / (2.0 * s * s)
    lag = laguerre_polynomial(alpha, n, s)
    d1 = -laguerre_polynomial(alpha + 1.0, n - 1, s)
    d2 = laguerre_polynomial(alpha + 2.0, n - 2, s)
    return _scalar(pre * (curv * lag + 2.0 * log_slope * d1 + d2))


def laguerre_sl_residual(alpha: float, n: int, s, lam: float | None = None):
    """psi'' + [lam/s - 1/4 - (alpha^2 - 1)/(4 s^2)] psi, lam defaulting to n + (alpha+1)/2."""
    s = _check_alpha_s(alpha, s)
    if lam is None:
        lam = n + 0.5 * (alpha + 1.0)
    psi = laguerre_function(alpha, n, s)
    pot = lam / s - 0.25 - (alpha * alpha - 1.0) / (4.0 * s * s)
    return _scalar(laguerre_function_second_derivative(alpha, n, s) + pot * psi)


def laguerre_recurrence_residual(alpha: float, n: int, s):
    s = _check_alpha_s(alpha, s)
    up = laguerre_function(alpha, n + 1, s)
    down = laguerre_function(alpha, n - 1, s) if n >= 1 else 0.0
    mid = laguerre_function(alpha, n, s)
    return _scalar(
        -math.sqrt((n + alpha + 1.0) * (n + 1.0)) * up
        - math.sqrt((n + alpha) * n) * down
        + (2 * n + alpha + 1.0 - s) * mid
    )


@dataclass(frozen=True)
class LaguerreFunction:
    alpha: float
    degree: int

    def __post_init__(self):
        if not self.alpha > -1.0:
            raise DomainError(f"alpha must exceed -1, got {self.alpha!r}")

    @property
    def lam(self) -> float:
        return self.degree + 0.5 * (self.alpha + 1.0)

    def __call__(self, s):
        return laguerre_function(self.alpha, self.degree, s)

    def derivative(self, s):
        return laguerre_function_derivative(self.alpha, self.degree, s)


# --------------------------------------------------------------------------
# quadrature


def gauss_legendre_integral(f, a: float, b: float, *, order: int = 24, tol: float = 1e-13,
                            max_panels: int = 4096) -> float:
    """Composite Gauss-Legendre integral of ``f`` on [a, b].

    The panel count doubles until two successive estimates agree to ``tol``
    (relative to the larger of 1 and the estimate).
    """
    nodes, weights = np.polynomial.legendre.leggauss(order)

    def composite(panels: int) -> float:
        edges = np.linspace(a, b, panels + 1)
        mid = 0.5 * (edges[1:] + edges[:-1])
        half = 0.5 * (edges[1:] - edges[:-1])
        pts = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
        vals = np.asarray(f(pts), dtype=float).reshape(panels, order)
        return float(np.sum(half * (vals @ weights)))

    panels = 8
    last = composite(panels)
    while panels < max_panels:
        panels *= 2
        cur = composite(panels)
        if abs(cur - last) <= tol * max(1.0, abs(cur)):
            return cur
        last = cur
    return last


def _laguerre_tail_end(alpha: float, n: int, tol: float) -> float:
    # psi^2/s ~ s^(alpha+2n) e^(-s); push the cutoff past the polynomial growth
    s = max(40.0, 4.0 * (2 * n + alpha + 1.0))
    while (alpha + 2 * n) * math.log(s) - s > math.log(tol) - 10.0:
        s *= 1.25
    return s


def laguerre_overlap(alpha: float, n: int, m: int, weight_power: float = -1.0, tol: float = 1e-12) -> float:
    """int_0^inf psi_n psi_m s^weight_power ds by composite Gauss-Legendre."""
    top = _laguerre_tail_end(alpha, max(n, m), tol)

    def integrand(s):
        s = np.maximum(s, 1e-300)
        return laguerre_function(alpha, n, s) * laguerre_function(alpha, m, s) * s**weight_power

    return gauss_legendre_integral(integrand, 0.0, top, tol=tol)
