"""
Continuum-limit measurements: lattice functions and ladder images against
Hermite and Laguerre functions, plus resolution sweeps.

Continuum functions are always evaluated at the lattice point a probe rounds
to, never at the requested probe, so rounding does not pollute the error.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .continuous_bases import hermite_functions, laguerre_function
from .discrete_bases import KravchukParams, MeixnerParams, kravchuk_rows, meixner_rows
from .errors import DomainError
from .ladder import kravchuk_lower, kravchuk_raise
from .wigner import su2_anticommutator_spectrum

__all__ = [
    "ConvergenceReport",
    "HERMITE_PROBES",
    "LAGUERRE_PROBES",
    "LimitResult",
    "Study",
    "SweepSpec",
    "convergence_sweep",
    "kravchuk_to_hermite",
    "kravchuk_to_hermite_error",
    "ladder_limit",
    "ladder_limit_error",
    "meixner_to_laguerre",
    "meixner_to_laguerre_error",
]

HERMITE_PROBES = np.linspace(-2.5, 2.5, 201)
LAGUERRE_PROBES = np.linspace(0.5, 6.0, 221)


class Study(str, enum.Enum):
    KRAVCHUK_HERMITE = "kravchuk-hermite"
    LADDER = "ladder"
    MEIXNER_LAGUERRE = "meixner-laguerre"
    ANTICOMMUTATOR = "anticommutator"


@dataclass(frozen=True)
class LimitResult:
    error: float
    skipped_probes: tuple = ()
    n_compared: int = 0


def _lattice_probes(N: int, p: float, s_probes):
    s_probes = np.atleast_1d(np.asarray(s_probes, dtype=float))
    scale = math.sqrt(2.0 * N * p * (1.0 - p))
    x = np.round(N * p + scale * s_probes)
    inside = (x >= 0) & (x <= N)
    skipped = tuple(float(s) for s in s_probes[~inside])
    xs = np.unique(x[inside].astype(int))
    if xs.size == 0:
        raise DomainError("no probe lands on the lattice")
    return xs, (xs - N * p) / scale, skipped


def kravchuk_to_hermite(n: int, N: int, p: float, s_probes=HERMITE_PROBES) -> LimitResult:
    params = KravchukParams(N, p)
    if not 0 <= n <= N:
        raise DomainError(f"n must lie in [0, {N}], got {n}")
    xs, s_exact, skipped = _lattice_probes(N, p, s_probes)
    K = kravchuk_rows(params, n, xs)[n]
    psi = hermite_functions(n, s_exact)[n]
    err = np.abs((2.0 * N * p * params.q) ** 0.25 * K - psi).max()
    return LimitResult(float(err), skipped, xs.size)


def kravchuk_to_hermite_error(n: int, N: int, p: float, s_probes=HERMITE_PROBES) -> float:
    """sup |(2Npq)^(1/4) K_n(x) - psi_n(s)| over lattice-aligned probes."""
    return kravchuk_to_hermite(n, N, p, s_probes).error


def ladder_limit(n: int, N: int, p: float, s_probes=HERMITE_PROBES, which: str = "raise") -> LimitResult:
    params = KravchukParams(N, p)
    if which not in ("raise", "lower"):
        raise DomainError(f"which must be 'raise' or 'lower', got {which!r}")
    if which == "raise" and n + 1 > N:
        raise DomainError("raising needs n + 1 <= N")
    if not 0 <= n <= N:
        raise DomainError(f"n must lie in [0, {N}], got {n}")
    xs, s_exact, skipped = _lattice_probes(N, p, s_probes)
    K = kravchuk_rows(params, n)[n]
    pq = p * params.q
    if which == "raise":
        image = kravchuk_raise(params, n, "symmetric").apply(K)
        target = math.sqrt(n + 1) * hermite_functions(n + 1, s_exact)[n + 1]
    else:
        image = kravchuk_lower(params, n, "symmetric").apply(K)
        target = math.sqrt(n) * hermite_functions(max(n - 1, 0), s_exact)[max(n - 1, 0)]
    rescaled = (2.0 * N * pq) ** 0.25 * image[xs] / math.sqrt(N * pq)
    return LimitResult(float(np.abs(rescaled - target).max()), skipped, xs.size)


def ladder_limit_error(n: int, N: int, p: float, s_probes=HERMITE_PROBES, which: str = "raise") -> float:
    """sup gap between L(+/-) K_n / sqrt(Npq), rescaled, and sqrt(n+1) psi_{n+1} or sqrt(n) psi_{n-1}."""
    return ladder_limit(n, N, p, s_probes, which).error


def meixner_to_laguerre(alpha: float, n: int, h: float, s_probes=LAGUERRE_PROBES) -> LimitResult:
    if not alpha > -1.0:
        raise DomainError(f"alpha must exceed -1, got {alpha}")
    if not 0.0 < h < 1.0:
        raise DomainError(f"h must lie in (0, 1), got {h}")
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    params = MeixnerParams(alpha + 1.0, 1.0 - h)
    s_probes = np.atleast_1d(np.asarray(s_probes, dtype=float))
    x = np.round(s_probes / h)
    inside = x >= 0
    skipped = tuple(float(s) for s in s_probes[~inside])
    xs = np.unique(x[inside])
    if xs.size == 0:
        raise DomainError("no probe lands on the lattice")
    M = meixner_rows(params, n, xs)[n]
    # no extra normalization: the lattice functions approach psi_n directly
    err = np.abs(M - laguerre_function(alpha, n, h * xs)).max()
    return LimitResult(float(err), skipped, xs.size)


def meixner_to_laguerre_error(alpha: float, n: int, h: float, s_probes=LAGUERRE_PROBES) -> float:
    """sup |M_n(x) - psi_n^alpha(h x)| with gamma = alpha + 1, mu = 1 - h."""
    return meixner_to_laguerre(alpha, n, h, s_probes).error


@dataclass(frozen=True)
class SweepSpec:
    study: Study
    n: int
    resolutions: tuple
    p: float = 0.5
    alpha: float = 0.0
    which: str = "raise"
    s_probes: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "study", Study(self.study))
        res = tuple(float(r) for r in self.resolutions)
        if len(res) < 3:
            raise DomainError("a sweep needs at least 3 resolutions")
        diffs = np.diff(res)
        if not (np.all(diffs > 0) or np.all(diffs < 0)):
            raise DomainError("resolutions must be strictly monotone")
        if self.n < 0:
            raise DomainError("n must be non-negative")
        degenerate = (
            (self.study is Study.LADDER and self.which == "lower" and self.n == 0)
            or (self.study is Study.ANTICOMMUTATOR and self.n == 0)
        )
        if degenerate:
            raise DomainError("degenerate sweep: both sides vanish identically, no rate to measure")
        object.__setattr__(self, "resolutions", res)


@dataclass(frozen=True)
class ConvergenceReport:
    family: str
    n: int
    resolutions: np.ndarray
    errors: np.ndarray
    observed_rates: np.ndarray
    skipped_probes: tuple = ()
    failures: tuple = field(default=())

    @property
    def strictly_decreasing(self) -> bool:
        e = self.errors
        return bool(np.all(np.isfinite(e)) and np.all(np.diff(e) < 0))

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "resolutions": [float(r) for r in self.resolutions],
            "errors": [float(e) for e in self.errors],
            "observed_rates": [float(r) for r in self.observed_rates],
            "skipped_probes": [list(s) for s in self.skipped_probes],
            "failures": [dict(f) for f in self.failures],
            "strictly_decreasing": self.strictly_decreasing,
        }


def _evaluate(spec: SweepSpec, res: float) -> LimitResult:
    probes = spec.s_probes
    if spec.study is Study.KRAVCHUK_HERMITE:
        return kravchuk_to_hermite(spec.n, int(res), spec.p, HERMITE_PROBES if probes is None else probes)
    if spec.study is Study.LADDER:
        return ladder_limit(spec.n, int(res), spec.p, HERMITE_PROBES if probes is None else probes, spec.which)
    if spec.study is Study.MEIXNER_LAGUERRE:
        return meixner_to_laguerre(spec.alpha, spec.n, res, LAGUERRE_PROBES if probes is None else probes)
    # resolution is twice_j; the gap to 2n+1 is n^2/j
    tj = int(res)
    if spec.n > tj:
        raise DomainError(f"n = {spec.n} exceeds 2j = {tj}")
    return LimitResult(float(abs(su2_anticommutator_spectrum(tj)[spec.n] - (2 * spec.n + 1))), (), 1)


def convergence_sweep(spec: SweepSpec) -> ConvergenceReport:
    """Errors at each resolution, in order, with observed rates log(e_i/e_{i+1}) / |log(r_{i+1}/r_i)|.

    A resolution whose evaluation fails yields NaN and an entry in ``failures``.
    """
    errors, skipped, failures = [], [], []
    for res in spec.resolutions:
        try:
            out = _evaluate(spec, res)
        except (DomainError, ValueError) as exc:
            errors.append(math.nan)
            skipped.append(())
            failures.append({"resolution": res, "message": str(exc)})
            continue
        errors.append(out.error)
        skipped.append(out.skipped_probes)
    errs = np.array(errors)
    res = np.array(spec.resolutions)
    with np.errstate(divide="ignore", invalid="ignore"):
        rates = np.log(errs[:-1] / errs[1:]) / np.abs(np.log(res[1:] / res[:-1]))
    return ConvergenceReport(spec.study.value, spec.n, res, errs, rates, tuple(skipped), tuple(failures))
