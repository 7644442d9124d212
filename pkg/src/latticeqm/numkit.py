"""
Scalar kernels: log-gamma, log-binomial and compensated summation.

Every weight in the package (binomial, negative binomial, gamma ratios) is
assembled in log space from these helpers and exponentiated once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy import special

from .errors import DomainError

__all__ = [
    "Accumulator",
    "compensated_sum",
    "ln_binomial",
    "ln_gamma",
    "log_sum_exp",
    "safe_exp",
]

_EULER_GAMMA = float(np.euler_gamma)
# radius of the Taylor window around the zeros of ln Gamma at z = 1, 2
_ROOT_WINDOW = 0.2
_N_SERIES = 40
# zeta(k)/k for k = 2.._N_SERIES+1, used by the series of ln Gamma(1 + eps)
_ZETA_OVER_K = np.array([special.zeta(k) / k for k in range(2, _N_SERIES + 2)])
_HALF_LN_2PI = 0.5 * math.log(2.0 * math.pi)


def _lgamma1p_series(eps: np.ndarray) -> np.ndarray:
    """ln Gamma(1 + eps) for |eps| < 0.25, accurate in the relative sense."""
    acc = np.zeros_like(eps)
    for c in _ZETA_OVER_K[::-1]:
        acc = acc * (-eps) + c
    return eps * (eps * acc - _EULER_GAMMA)


def ln_gamma(z):
    """Natural log of the gamma function for positive real ``z``.

    Accepts a float or an array. Near the zeros at z = 1 and z = 2 the value
    comes from the Taylor series of ln Gamma(1 + eps) so that relative accuracy
    is kept where the result itself goes to zero.
    """
    arr = np.asarray(z, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError(f"ln_gamma requires z > 0, got {z!r}")
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    out = special.gammaln(arr)
    near1 = np.abs(arr - 1.0) < _ROOT_WINDOW
    near2 = np.abs(arr - 2.0) < _ROOT_WINDOW
    if near1.any():
        out[near1] = _lgamma1p_series(arr[near1] - 1.0)
    if near2.any():
        eps = arr[near2] - 2.0
        out[near2] = _lgamma1p_series(eps) + np.log1p(eps)
    return float(out[0]) if scalar else out


def _stirling_tail(k: int) -> float:
    """ln k! - [(k + 1/2) ln k - k + ln sqrt(2 pi)] for k >= 1."""
    if k < 16:
        return math.lgamma(k + 1.0) - ((k + 0.5) * math.log(k) - k + _HALF_LN_2PI)
    inv = 1.0 / k
    inv2 = inv * inv
    return inv * (1.0 / 12 - inv2 * (1.0 / 360 - inv2 * (1.0 / 1260 - inv2 * (1.0 / 1680))))


def ln_binomial(n: int, k: int) -> float:
    """ln C(n, k) without the cancellation of ln n! - ln k! - ln (n-k)!.

    The leading Stirling terms are regrouped as k ln(n/k) + m ln(n/m) with
    m = n - k, both non-negative, so the relative error stays near machine
    precision even for n ~ 1e6.
    """
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"ln_binomial requires 0 <= k <= n, got n={n}, k={k}")
    n, k = int(n), int(k)
    k = min(k, n - k)
    if k == 0:
        return 0.0
    if n <= 1000:
        return math.log(math.comb(n, k))
    m = n - k
    lead = k * math.log(n / k) + m * math.log1p(k / m)
    return (
        lead
        + 0.5 * math.log(n / (2.0 * math.pi * k * m))
        + _stirling_tail(n)
        - _stirling_tail(k)
        - _stirling_tail(m)
    )


@dataclass
class Accumulator:
    """Neumaier compensated running sum."""

    running_sum: float = 0.0
    compensation: float = 0.0

    def add(self, value: float) -> None:
        t = self.running_sum + value
        if abs(self.running_sum) >= abs(value):
            self.compensation += (self.running_sum - t) + value
        else:
            self.compensation += (value - t) + self.running_sum
        self.running_sum = t

    def extend(self, values: Iterable[float]) -> None:
        for v in values:
            self.add(float(v))

    @property
    def value(self) -> float:
        return self.running_sum + self.compensation


def compensated_sum(terms) -> float:
    """Sum of ``terms``, correctly rounded (math.fsum)."""
    return math.fsum(np.asarray(terms, dtype=float).ravel().tolist())


def log_sum_exp(log_terms) -> float:
    a = np.asarray(log_terms, dtype=float)
    top = a.max()
    return float(top + math.log(compensated_sum(np.exp(a - top))))


def safe_exp(log_value):
    """exp that maps log-weights below the double range to exact zero."""
    with np.errstate(under="ignore"):
        return np.exp(log_value)
