"""
Command-line front end.

    latticeqm tabulate kravchuk --N 8 --p 0.5 --n 0..3
    latticeqm verify all
    latticeqm converge kravchuk-hermite --n 0 --N 256,1024,4096
    latticeqm oscillator --twice-j 4 --n 1
    latticeqm hydrogen --Z 1 --nu 2 --l 0 --h 1e-3

Every command emits one report envelope (JSON by default, or CSV) and exits
0 when all checks pass, 1 when some check fails, 2 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import continuous_bases as cb
from . import discrete_bases as db
from . import hydrogen_model as hm
from . import ladder as ld
from . import limits as lm
from . import oscillator_model as om
from . import wigner as wg
from .errors import DomainError

__all__ = ["ReportEnvelope", "main", "build_parser", "to_json", "to_csv"]

STRICT_FACTOR = 10.0
ADJOINT_PAIRS = 100
SEED = 20240917

KRAVCHUK_GRID = [(N, p) for N in (8, 16, 32, 64) for p in (0.2, 0.5, 0.8)]
MEIXNER_GRID = [(g, mu) for g in (1.0, 2.0, 4.0) for mu in (0.3, 0.5, 0.9)]
LAGUERRE_ALPHAS = (0.0, 1.0, 2.0, 3.0)
LAGUERRE_S = (0.5, 1.0, 2.0, 8.0)
WIGNER_BETAS = (0.3, 1.0, 2.0, 2.9)

# default tolerance per check kind; the strict profile divides by STRICT_FACTOR
TOLERANCES = {
    "kravchuk_gram": 1e-11,
    "kravchuk_kernel": 1e-11,
    "kravchuk_recurrence": 1e-11,
    "kravchuk_duality": 1e-11,
    "kravchuk_ladder": 1e-10,
    "kravchuk_adjoint": 1e-10,
    "kravchuk_factorization": 1e-12,
    "kravchuk_rodrigues": 1e-9,
    "kravchuk_commutator": 1e-12,
    "meixner_gram": 1e-10,
    "meixner_kernel": 1e-10,
    "meixner_ladder": 1e-10,
    "meixner_adjoint": 1e-10,
    "meixner_commutator": 1e-10,
    "meixner_anticommutator": 1e-10,
    "laguerre_sl": 1e-8,
    "laguerre_ladder": 1e-9,
    "laguerre_factorization": 1e-8,
    "laguerre_recurrence": 1e-10,
    "wigner_symmetry": 1e-12,
    "wigner_difference": 1e-11,
    "wigner_unitarity": 1e-11,
    "wigner_fd_ratio": 0.5,
    "su2_commutator": 1e-13,
    "su2_anticommutator": 1e-13,
    "oscillator_dispersion": 1e-12,
    "oscillator_spacing": 1e-12,
    "hydrogen_sl": 1e-8,
}


@dataclass
class ReportEnvelope:
    command: str
    parameters: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    exit_status: int = 0

    def add_check(self, name: str, value: float, tolerance: float, passed: bool | None = None) -> None:
        value = float(value)
        if passed is None:
            passed = math.isfinite(value) and value <= tolerance
        self.checks.append({"name": name, "value": value, "tolerance": float(tolerance), "pass": bool(passed)})

    def finalize(self) -> "ReportEnvelope":
        self.exit_status = 0 if all(c["pass"] for c in self.checks) else 1
        return self

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "rows": self.rows,
            "checks": self.checks,
            "exit_status": self.exit_status,
        }


class Tolerances:
    def __init__(self, profile: str = "default", override: float | None = None):
        self.profile = profile
        self.override = override

    def __call__(self, kind: str) -> float:
        if self.override is not None:
            return self.override
        tol = TOLERANCES[kind]
        return tol / STRICT_FACTOR if self.profile == "strict" else tol


# --------------------------------------------------------------------------
# serialization


def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return "null"
    return format(x, ".17g")


def _encode(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = sorted((str(k), v) for k, v in obj.items())
        return "{" + ", ".join(f"{json.dumps(k)}: {_encode(v)}" for k, v in items) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(env: ReportEnvelope) -> str:
    """Sorted keys, floats at 17 significant digits; NaN and inf become null."""
    return _encode(env.as_dict()) + "\n"


def _csv_cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def to_csv(env: ReportEnvelope) -> str:
    """One table: the checks for ``verify``, the rows for every other command."""
    records = env.checks if env.command == "verify" else env.rows
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if not records:
        return ""
    header = []
    for rec in records:
        for k in rec:
            if k not in header:
                header.append(k)
    writer.writerow(header)
    for rec in records:
        writer.writerow([_csv_cell(rec.get(k, "")) for k in header])
    return buf.getvalue()


# --------------------------------------------------------------------------
# argument helpers


def parse_range(text: str) -> list[int]:
    """'a..b' inclusive, or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or range a..b, got {text!r}") from None
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def parse_grid(text: str) -> np.ndarray:
    """'a:b:num' evenly spaced, or a comma list."""
    try:
        if ":" in text:
            a, b, num = text.split(":")
            out = np.linspace(float(a), float(b), int(num))
        else:
            out = np.array([float(v) for v in text.split(",")])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b:num or a comma list, got {text!r}") from None
    if out.size == 0:
        raise argparse.ArgumentTypeError(f"empty grid {text!r}")
    return out


def parse_list(kind):
    def parse(text: str):
        try:
            return [kind(float(v)) if kind is int else kind(v) for v in text.split(",")]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected a comma-separated list, got {text!r}") from None
    return parse


def _max(values) -> float:
    values = list(values)
    return float(max(values)) if values else 0.0


# --------------------------------------------------------------------------
# verify suites


def _random_pairs(rng, dim: int, count: int):
    for _ in range(count):
        yield rng.standard_normal(dim), rng.standard_normal(dim)


def verify_kravchuk(env: ReportEnvelope, tol: Tolerances, rng) -> None:
    for N, p in KRAVCHUK_GRID:
        kp = db.KravchukParams(N, p)
        tag = f"N={N},p={p}"
        K = db.kravchuk_rows(kp)
        pq = p * kp.q
        env.add_check(f"kravchuk.gram[{tag}]", np.abs(db.kravchuk_gram(kp, N) - np.eye(N + 1)).max(),
                      tol("kravchuk_gram"))
        env.add_check(f"kravchuk.kernel[{tag}]",
                      _max(np.abs(ld.kravchuk_hamiltonian(kp, n).apply(K[n])).max() for n in range(N + 1)),
                      tol("kravchuk_kernel"))
        env.add_check(f"kravchuk.recurrence[{tag}]",
                      _max(np.abs(ld.kravchuk_recurrence_operator(kp, x).apply(K[:, x])).max() for x in range(N + 1)),
                      tol("kravchuk_recurrence"))
        worst = 0.0
        for form in ("original", "symmetric"):
            for n in range(N):
                c = math.sqrt(pq * (N - n) * (n + 1))
                worst = max(worst, np.abs(ld.kravchuk_raise(kp, n, form).apply(K[n]) - c * K[n + 1]).max(),
                            np.abs(ld.kravchuk_lower(kp, n + 1, form).apply(K[n + 1]) - c * K[n]).max())
            worst = max(worst, np.abs(ld.kravchuk_lower(kp, 0, form).apply(K[0])).max())
        env.add_check(f"kravchuk.ladder[{tag}]", worst, tol("kravchuk_ladder"))
        n0 = N // 2
        up, down = ld.kravchuk_raise(kp, n0), ld.kravchuk_lower(kp, n0)
        worst = 0.0
        for u, v in _random_pairs(rng, N + 1, ADJOINT_PAIRS):
            worst = max(worst, abs(np.dot(up.apply(u), v) - np.dot(u, down.apply(v))))
        env.add_check(f"kravchuk.adjoint[{tag}]", worst, tol("kravchuk_adjoint"))
        raise_n, lower_n = ld.kravchuk_degree_ladders(kp)
        comm = np.diag(lower_n @ raise_n - raise_n @ lower_n)
        env.add_check(f"kravchuk.degree_commutator[{tag}]",
                      np.abs(comm - pq * (N - 2 * np.arange(N + 1))).max(), tol("kravchuk_commutator"))
        if N <= 16:
            worst = _max(ld.kravchuk_factorization_residual(kp, n, "plus_minus") for n in range(1, N + 1))
            worst = max(worst, _max(ld.kravchuk_factorization_residual(kp, n, "minus_plus") for n in range(N)))
            env.add_check(f"kravchuk.factorization[{tag}]", worst, tol("kravchuk_factorization"))
        if p == 0.5:
            dual = np.where((np.arange(N + 1)[:, None] - np.arange(N + 1)[None, :]) % 2, -1.0, 1.0) * K.T
            env.add_check(f"kravchuk.duality[{tag}]", np.abs(K - dual).max(), tol("kravchuk_duality"))
    kp = db.KravchukParams(8, 0.7)
    K = db.kravchuk_rows(kp)
    env.add_check("kravchuk.rodrigues[N=8,p=0.7]",
                  _max(np.abs(ld.kravchuk_rodrigues_product(kp, n).values - K[n]).max() for n in range(9)),
                  tol("kravchuk_rodrigues"))


def verify_meixner(env: ReportEnvelope, tol: Tolerances, rng, n_max: int = 8) -> None:
    for g, mu in MEIXNER_GRID:
        mp = db.MeixnerParams(g, mu)
        tag = f"gamma={g:g},mu={mu:g}"
        env.add_check(f"meixner.gram[{tag}]",
                      np.abs(db.meixner_gram(mp, n_max) - np.eye(n_max + 1)).max(), tol("meixner_gram"))
        X, dim = ld.meixner_grid(mp, n_max + 1)
        xs = np.arange(dim, dtype=float)
        M = db.meixner_rows(mp, n_max + 1, xs)
        inner = X + 1
        env.add_check(f"meixner.kernel[{tag}]",
                      _max(np.abs(ld.meixner_hamiltonian(mp, n, dim).apply(M[n])[:inner]).max()
                           for n in range(n_max + 1)),
                      tol("meixner_kernel"))
        worst = 0.0
        for form in ("original", "symmetric"):
            for n in range(n_max):
                c = math.sqrt(mu * (n + g) * (n + 1))
                worst = max(worst,
                            np.abs((ld.meixner_raise(mp, n, dim, form).apply(M[n]) + c * M[n + 1])[:inner]).max(),
                            np.abs((ld.meixner_lower(mp, n + 1, dim, form).apply(M[n + 1]) + c * M[n])[:inner]).max())
            worst = max(worst, np.abs(ld.meixner_lower(mp, 0, dim, form).apply(M[0])[:inner]).max())
        env.add_check(f"meixner.ladder[{tag}]", worst, tol("meixner_ladder"))
        w = db.meixner_inner_weight(mp, xs)
        up, down = ld.meixner_raise(mp, 2, dim), ld.meixner_lower(mp, 2, dim)
        worst = 0.0
        for u, v in _random_pairs(rng, dim, ADJOINT_PAIRS):
            lhs = np.dot(w * up.apply(u), v)
            rhs = np.dot(w * u, down.apply(v))
            worst = max(worst, abs(lhs - rhs))
        env.add_check(f"meixner.adjoint[{tag}]", worst, tol("meixner_adjoint"))
        env.add_check(f"meixner.commutator[{tag}]",
                      _max(abs(ld.meixner_commutator_eigenvalue(mp, n) + mu * (2 * n + g)) for n in range(4)),
                      tol("meixner_commutator"))
        worst = 0.0
        for n in range(1, 4):
            xs_c, comp, v, Xc = ld.meixner_anticommutator_composition(mp, n)
            worst = max(worst, np.abs((comp - ld.meixner_anticommutator_value(mp, n) * v)[: Xc + 1]).max())
            env.rows.append({"quantity": "meixner.anticommutator_expansion_residual", "parameters": tag,
                             "n": n, "value": ld.meixner_anticommutator_residual(mp, n)})
        env.add_check(f"meixner.anticommutator[{tag}]", worst, tol("meixner_anticommutator"))


def verify_laguerre(env: ReportEnvelope, tol: Tolerances, rng=None) -> None:
    s = np.array(LAGUERRE_S)
    for a in LAGUERRE_ALPHAS:
        tag = f"alpha={a:g}"
        sl = _max(np.abs(cb.laguerre_sl_residual(a, n, s)).max() for n in range(4))
        env.add_check(f"laguerre.sturm_liouville[{tag}]", sl, tol("laguerre_sl"))
        rec = _max(np.abs(cb.laguerre_recurrence_residual(a, n, s)).max() for n in range(4))
        env.add_check(f"laguerre.recurrence[{tag}]", rec, tol("laguerre_recurrence"))
        worst = np.abs(ld.laguerre_lower(a, 0, s)).max()
        for n in range(4):
            c = math.sqrt((n + 1) * (n + a + 1))
            worst = max(worst,
                        np.abs(ld.laguerre_raise(a, n, s) + c * cb.laguerre_function(a, n + 1, s)).max(),
                        np.abs(ld.laguerre_lower(a, n + 1, s) + c * cb.laguerre_function(a, n, s)).max())
        env.add_check(f"laguerre.ladder[{tag}]", worst, tol("laguerre_ladder"))
        fac = _max(np.abs(ld.laguerre_factorization_residual(a, n, s, side)).max()
                   for n in range(4) for side in ("minus_plus", "plus_minus"))
        env.add_check(f"laguerre.factorization[{tag}]", fac, tol("laguerre_factorization"))


def verify_wigner(env: ReportEnvelope, tol: Tolerances, rng=None, twice_js=range(1, 6)) -> None:
    for tj in twice_js:
        for beta in WIGNER_BETAS:
            P = wg.AngularParams(tj, beta)
            tag = f"twice_j={tj},beta={beta:g}"
            ms = range(-tj, tj + 1, 2)
            env.add_check(f"wigner.symmetry[{tag}]",
                          _max(wg.wigner_symmetry_residual(P, a, b) for a in ms for b in ms), tol("wigner_symmetry"))
            for which in wg.DIFFERENCE_IDENTITIES:
                env.add_check(f"wigner.{which}[{tag}]",
                              _max(wg.wigner_difference_residual(P, a, b, which) for a in ms for b in ms),
                              tol("wigner_difference"))
            D = wg.wigner_d_matrix(P)
            env.add_check(f"wigner.unitarity[{tag}]", np.abs(D @ D.T - np.eye(tj + 1)).max(), tol("wigner_unitarity"))
    P = wg.AngularParams(2, 1.0)
    for which in wg.DERIVATIVE_IDENTITIES:
        r1 = wg.wigner_derivative_residual(P, 0, 0, 1e-3, which)
        r2 = wg.wigner_derivative_residual(P, 0, 0, 5e-4, which)
        env.add_check(f"wigner.{which}.fd_ratio[twice_j=2,beta=1]", abs(r1 / r2 - 4.0), tol("wigner_fd_ratio"))


def verify_su2(env: ReportEnvelope, tol: Tolerances, rng=None, twice_js=range(1, 201)) -> None:
    worst_c = worst_a = 0.0
    for tj in twice_js:
        n = np.arange(tj + 1)
        j = tj / 2
        worst_c = max(worst_c, np.abs(wg.su2_commutator_spectrum(tj) - (1 - n / j)).max())
        worst_a = max(worst_a, np.abs(wg.su2_anticommutator_spectrum(tj) - (2 * n + 1 - n * n / j)).max())
        if len(twice_js) == 1:
            for k in n:
                env.rows.append({"twice_j": tj, "n": int(k),
                                 "commutator": wg.su2_commutator_spectrum(tj)[k],
                                 "anticommutator": wg.su2_anticommutator_spectrum(tj)[k]})
    tag = f"twice_j={twice_js[0]}..{twice_js[-1]}" if len(twice_js) > 1 else f"twice_j={twice_js[0]}"
    env.add_check(f"su2.commutator[{tag}]", worst_c, tol("su2_commutator"))
    env.add_check(f"su2.anticommutator[{tag}]", worst_a, tol("su2_anticommutator"))


def cmd_verify(args) -> ReportEnvelope:
    tol = Tolerances(args.tolerance_profile, args.tolerance)
    env = ReportEnvelope("verify", {"suite": args.suite, "tolerance_profile": args.tolerance_profile,
                                    "tolerance_override": args.tolerance, "seed": SEED})
    rng = np.random.default_rng(SEED)
    if args.twice_j is not None:
        env.parameters["twice_j"] = args.twice_j
    twice_js = [args.twice_j] if args.twice_j is not None else None
    suites = ["kravchuk", "meixner", "laguerre", "wigner", "su2"] if args.suite == "all" else [args.suite]
    for suite in suites:
        if suite == "kravchuk":
            verify_kravchuk(env, tol, rng)
        elif suite == "meixner":
            verify_meixner(env, tol, rng)
        elif suite == "laguerre":
            verify_laguerre(env, tol)
        elif suite == "wigner":
            verify_wigner(env, tol, twice_js=twice_js or range(1, 6))
        elif suite == "su2":
            verify_su2(env, tol, twice_js=twice_js or range(1, 201))
    return env.finalize()


# --------------------------------------------------------------------------
# other commands


def cmd_tabulate(args) -> ReportEnvelope:
    tol = Tolerances(args.tolerance_profile, args.tolerance)
    fam = args.family
    env = ReportEnvelope("tabulate", {"family": fam})
    if fam == "kravchuk":
        kp = db.KravchukParams(args.N, args.p)
        ns = args.n if args.n is not None else list(range(args.N + 1))
        if ns[-1] > args.N or ns[0] < 0:
            raise DomainError(f"n range must lie in [0, {args.N}]")
        K = db.kravchuk_rows(kp, ns[-1])
        env.parameters.update(N=args.N, p=args.p, n=[ns[0], ns[-1]])
        for n in ns:
            for x in range(args.N + 1):
                env.rows.append({"n": n, "x": x, "value": K[n, x]})
        sub = K[ns]
        env.add_check("rows_orthonormal", np.abs(sub @ sub.T - np.eye(len(ns))).max(), tol("kravchuk_gram"))
    elif fam == "meixner":
        mp = db.MeixnerParams(args.gamma, args.mu)
        ns = args.n if args.n is not None else list(range(4))
        if ns[0] < 0:
            raise DomainError("n range must be non-negative")
        xs = args.x if args.x is not None else list(range(21))
        if xs[0] < 0:
            raise DomainError("x range must be non-negative")
        M = db.meixner_rows(mp, ns[-1], np.array(xs, dtype=float))
        env.parameters.update(gamma=args.gamma, mu=args.mu, n=[ns[0], ns[-1]], x=[xs[0], xs[-1]])
        for n in ns:
            for i, x in enumerate(xs):
                env.rows.append({"n": n, "x": x, "value": M[n, i]})
    elif fam == "hermite":
        ns = args.n if args.n is not None else list(range(4))
        if ns[0] < 0:
            raise DomainError("n range must be non-negative")
        s = args.s if args.s is not None else np.linspace(-3.0, 3.0, 13)
        H = cb.hermite_functions(ns[-1], s)
        env.parameters.update(n=[ns[0], ns[-1]], s=list(s))
        for n in ns:
            for i, si in enumerate(s):
                env.rows.append({"n": n, "s": float(si), "value": H[n, i]})
    elif fam == "laguerre":
        ns = args.n if args.n is not None else list(range(4))
        if ns[0] < 0:
            raise DomainError("n range must be non-negative")
        s = args.s if args.s is not None else np.linspace(0.5, 12.0, 24)
        env.parameters.update(alpha=args.alpha, n=[ns[0], ns[-1]], s=list(s))
        for n in ns:
            vals = cb.laguerre_function(args.alpha, n, s)
            for si, v in zip(s, np.atleast_1d(vals)):
                env.rows.append({"n": n, "s": float(si), "value": v})
    elif fam == "wigner":
        P = wg.AngularParams(args.twice_j, args.beta)
        D = wg.wigner_d_matrix(P)
        tj = args.twice_j
        env.parameters.update(twice_j=tj, beta=args.beta)
        for a in range(tj + 1):
            for b in range(tj + 1):
                env.rows.append({"twice_m": tj - 2 * a, "twice_mp": tj - 2 * b, "value": D[a, b]})
        env.add_check("unitarity", np.abs(D @ D.T - np.eye(tj + 1)).max(), tol("wigner_unitarity"))
    return env.finalize()


def cmd_converge(args) -> ReportEnvelope:
    study = args.study
    if study in ("kravchuk-hermite", "ladder"):
        res = args.N
        if res is None:
            raise DomainError("--N list is required for this study")
    elif study == "meixner-laguerre":
        res = args.h
        if res is None:
            raise DomainError("--h list is required for this study")
    else:
        res = args.twice_j_list
        if res is None:
            raise DomainError("--twice-j list is required for this study")
    spec = lm.SweepSpec(study, args.n, tuple(res), p=args.p, alpha=args.alpha, which=args.which)
    report = lm.convergence_sweep(spec)
    env = ReportEnvelope("converge", {"study": study, "n": args.n, "p": args.p, "alpha": args.alpha,
                                      "which": args.which, "resolutions": list(spec.resolutions)})
    rates = list(report.observed_rates) + [math.nan]
    for r, e, rate, sk in zip(report.resolutions, report.errors, rates, report.skipped_probes):
        env.rows.append({"resolution": float(r), "error": float(e), "observed_rate": float(rate),
                         "skipped_probes": len(sk)})
    for f in report.failures:
        env.rows.append({"resolution": f["resolution"], "error": math.nan, "observed_rate": math.nan,
                         "skipped_probes": 0, "failure": f["message"]})
    errs = report.errors
    worst_ratio = float(np.max(errs[1:] / errs[:-1])) if np.all(np.isfinite(errs)) else math.nan
    env.add_check("errors_strictly_decreasing", worst_ratio, 1.0, passed=report.strictly_decreasing)
    return env.finalize()


def cmd_oscillator(args) -> ReportEnvelope:
    tol = Tolerances(args.tolerance_profile, args.tolerance)
    cfg = om.OscillatorConfig(args.twice_j, args.beta, args.mass, args.omega, args.hbar)
    n = args.n
    dx, dp = om.dispersion(cfg, n)
    mx, mpv = om.dispersion_from_matrices(cfg, n)
    levels = om.spectrum(cfg)
    env = ReportEnvelope("oscillator", {"twice_j": cfg.twice_j, "n": n, "mass": cfg.mass, "omega": cfg.omega,
                                        "hbar": cfg.hbar, "beta": cfg.beta})
    for k, e in enumerate(levels):
        env.rows.append({"quantity": "energy", "index": k, "value": e})
    for name, v in (("dx", dx), ("dp", dp), ("uncertainty_product", om.uncertainty_product(cfg, n)),
                    ("position_spacing", cfg.position_spacing), ("level_spacing", cfg.level_spacing)):
        env.rows.append({"quantity": name, "index": n, "value": v})
    env.add_check("dispersion_matrix_vs_spectrum", max(abs(dx - mx), abs(dp - mpv)), tol("oscillator_dispersion"))
    env.add_check("uncertainty_at_least_hbar_over_2", cfg.hbar / 2 - om.uncertainty_product(cfg, n),
                  1e-12 * cfg.hbar)
    env.add_check("level_spacing_constant", np.abs(np.diff(levels) - cfg.level_spacing).max(),
                  tol("oscillator_spacing") * max(1.0, cfg.level_spacing))
    return env.finalize()


def cmd_hydrogen(args) -> ReportEnvelope:
    tol = Tolerances(args.tolerance_profile, args.tolerance)
    cfg = hm.HydrogenConfig(args.Z)
    q = hm.RadialQuantum(args.nu, args.l)
    alpha, lam = hm.sl_mapping(q)
    rho = args.rho if args.rho is not None else np.linspace(0.5, 20.0, 40)
    env = ReportEnvelope("hydrogen", {"Z": cfg.Z, "nu": q.nu, "l": q.l, "h": args.h, "units": cfg.units.value})
    env.rows.append({"quantity": "energy", "index": q.nu, "value": hm.energy(cfg, q.nu)})
    env.rows.append({"quantity": "alpha", "index": q.l, "value": alpha})
    env.rows.append({"quantity": "lambda", "index": q.nu, "value": lam})
    mean = hm.discrete_radial_mean(q.l, q.n, args.h)
    env.rows.append({"quantity": "mean_s_lattice", "index": q.n, "value": mean})
    env.rows.append({"quantity": "mean_s_continuum", "index": q.n, "value": float(2 * q.n + alpha + 1)})
    for r, v in zip(rho, np.atleast_1d(hm.radial_function(q, rho))):
        env.rows.append({"quantity": "radial", "index": float(r), "value": v})
    env.add_check("radial_equation", np.abs(cb.laguerre_sl_residual(alpha, q.n, rho)).max(), tol("hydrogen_sl"))
    # the lattice mean sits exactly h*(n + gamma) below the continuum value
    gap = abs(mean - (2 * q.n + alpha + 1))
    env.add_check("mean_s_gap_order_h", gap, args.h * (q.n + q.gamma) * (1 + 1e-9))
    return env.finalize()


# --------------------------------------------------------------------------
# parser


def _common_parser() -> argparse.ArgumentParser:
    # SUPPRESS lets the flags appear before or after the subcommand without
    # the subparser defaults clobbering values given at the top level
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("json", "csv"))
    common.add_argument("--out")
    common.add_argument("--tolerance-profile", choices=("default", "strict"))
    common.add_argument("--strict", action="store_const", const="strict", dest="tolerance_profile")
    common.add_argument("--tolerance", type=float, help="override every check tolerance")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="latticeqm", parents=[common],
                                     description="Lattice oscillator and hydrogen models: tables, checks, limits.")
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tabulate", parents=[common], help="tabulate basis functions")
    t.add_argument("family", choices=("kravchuk", "meixner", "hermite", "laguerre", "wigner"))
    t.add_argument("--N", type=int, default=8)
    t.add_argument("--p", type=float, default=0.5)
    t.add_argument("--gamma", type=float, default=1.0)
    t.add_argument("--mu", type=float, default=0.5)
    t.add_argument("--alpha", type=float, default=0.0)
    t.add_argument("--twice-j", type=int, default=1)
    t.add_argument("--beta", type=float, default=1.0)
    t.add_argument("--n", type=parse_range)
    t.add_argument("--x", type=parse_range)
    t.add_argument("--s", type=parse_grid)

    v = sub.add_parser("verify", parents=[common], help="run identity checks")
    v.add_argument("suite", choices=("kravchuk", "meixner", "laguerre", "wigner", "su2", "all"))
    v.add_argument("--twice-j", type=int)

    c = sub.add_parser("converge", parents=[common], help="continuum-limit sweeps")
    c.add_argument("study", choices=[s.value for s in lm.Study])
    c.add_argument("--n", type=int, default=0)
    c.add_argument("--N", type=parse_list(int))
    c.add_argument("--h", type=parse_list(float))
    c.add_argument("--twice-j", dest="twice_j_list", type=parse_list(int))
    c.add_argument("--p", type=float, default=0.5)
    c.add_argument("--alpha", type=float, default=0.0)
    c.add_argument("--which", choices=("raise", "lower"), default="raise")

    o = sub.add_parser("oscillator", parents=[common], help="lattice oscillator report")
    o.add_argument("--twice-j", type=int, required=True)
    o.add_argument("--n", type=int, default=0)
    o.add_argument("--mass", type=float, default=1.0)
    o.add_argument("--omega", type=float, default=1.0)
    o.add_argument("--hbar", type=float, default=1.0)
    o.add_argument("--beta", type=float, default=math.pi / 2)

    h = sub.add_parser("hydrogen", parents=[common], help="hydrogen radial report")
    h.add_argument("--Z", type=int, default=1)
    h.add_argument("--nu", type=int, required=True)
    h.add_argument("--l", type=int, default=0)
    h.add_argument("--h", type=float, default=1e-3)
    h.add_argument("--rho", type=parse_grid)
    return parser


COMMANDS = {
    "tabulate": cmd_tabulate,
    "verify": cmd_verify,
    "converge": cmd_converge,
    "oscillator": cmd_oscillator,
    "hydrogen": cmd_hydrogen,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name, default in (("format", "json"), ("out", None), ("tolerance_profile", "default"), ("tolerance", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        env = COMMANDS[args.command](args)
    except DomainError as exc:
        print(f"latticeqm {args.command}: {exc}", file=sys.stderr)
        return 2
    text = to_csv(env) if args.format == "csv" else to_json(env)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return env.exit_status


if __name__ == "__main__":
    sys.exit(main())
