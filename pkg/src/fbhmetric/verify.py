"""Cross-module oracle suites.

Every suite is a pure function of (seed, trials, tolerance): per-trial
generators are split off the master seed by counter, so reports are
byte-identical across runs and across worker counts.  Suites:

* ``jacobians``  analytic derivatives (automorphisms, geodesic disks,
  audited Schwarz maps) against central finite differences.
* ``invariance`` the pseudometric against automorphism pushforwards.
* ``dominance``  sampled candidate disks: competitor upper bound,
  attainment of the closed forms, and the precomposed-disk bound.
* ``bridge``     the identity g(t) = (tau_A^2 - tau_B^2) t (1-b^2 e^t) e^t
  tying the branch discriminant to the two closed-form candidates.
* ``seams``      informational continuity probes at the v = 4b^2 and
  root-at-branch-point seams; no tolerance is asserted.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import geodesic, rootsolve, schwarz
from .automorphism import Automorphism, apply, jacobian, pushforward
from .domain import DomainSig, Point, TangentVector
from .errors import FbhMetricError
from .kobayashi import metric, metric_normal

__all__ = [
    "SuiteReport",
    "SUITE_NAMES",
    "check_jacobians",
    "check_invariance",
    "check_dominance_attainment",
    "check_bridge_identity",
    "probe_seams",
    "run_suite",
    "run_all",
]

_FD_STEP = 1e-6
_SIGS = (DomainSig(1, 1), DomainSig(2, 1), DomainSig(1, 2), DomainSig(2, 3))

DEFAULT_TOLS = {
    "jacobians": 1e-6,
    "invariance": 1e-8,
    "dominance": 1e-8,
    "bridge": 1e-9,
}

SUITE_NAMES = ("jacobians", "invariance", "dominance", "bridge", "seams")


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    trials: int
    failures: int
    worst_residual: float
    seed: int
    details: tuple

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "trials": self.trials,
            "failures": self.failures,
            "worst_residual": self.worst_residual,
            "seed": self.seed,
            "details": list(self.details),
        }


def _rng(seed: int, suite_index: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), suite_index, trial])


def _random_unitary(rng: np.random.Generator, k: int) -> np.ndarray:
    M = rng.normal(size=(k, k)) + 1j * rng.normal(size=(k, k))
    Q, R = np.linalg.qr(M)
    d = np.diagonal(R)
    return Q * (np.conj(d) / np.abs(d))


def _random_interior_point(rng: np.random.Generator, sig: DomainSig, fill=(0.05, 0.95)) -> Point:
    z = 0.6 * (rng.normal(size=sig.n) + 1j * rng.normal(size=sig.n))
    direction = rng.normal(size=sig.m) + 1j * rng.normal(size=sig.m)
    direction /= np.linalg.norm(direction)
    s = rng.uniform(*fill)
    w = math.sqrt(s) * math.exp(-0.5 * float(np.sum(np.abs(z) ** 2))) * direction
    return Point(z, w)


def _random_automorphism(rng: np.random.Generator, sig: DomainSig, shift: float = 0.8) -> Automorphism:
    a = shift * (rng.normal(size=sig.n) + 1j * rng.normal(size=sig.n)) / math.sqrt(2.0)
    return Automorphism(_random_unitary(rng, sig.n), _random_unitary(rng, sig.m), a)


def _fd_map_jacobian(fn, p: Point, step: float = _FD_STEP) -> np.ndarray:
    """Central finite differences of a Point -> Point map, one complex column per variable."""
    base = np.concatenate([p.z, p.w])
    n = p.z.size
    cols = []
    for j in range(base.size):
        shift = np.zeros_like(base)
        shift[j] = step
        plus = base + shift
        minus = base - shift
        fp = fn(Point(plus[:n], plus[n:]))
        fm = fn(Point(minus[:n], minus[n:]))
        cols.append((np.concatenate([fp.z, fp.w]) - np.concatenate([fm.z, fm.w])) / (2 * step))
    return np.stack(cols, axis=1)


def _trial_jacobians(seed: int, trial: int, tol: float) -> dict:
    rng = _rng(seed, 1, trial)
    sig = _SIGS[trial % len(_SIGS)]

    A = _random_automorphism(rng, sig)
    p = _random_interior_point(rng, sig)
    J_analytic = jacobian(A, p).entries
    J_fd = _fd_map_jacobian(lambda q: apply(A, q), p)
    res_auto = float(np.max(np.abs(J_analytic - J_fd)))

    params = geodesic.sample_admissible(int(rng.integers(2**31)), n=1 + trial % 2)
    lam = complex(0.8 * math.sqrt(rng.uniform()) * np.exp(2j * math.pi * rng.uniform()))
    _, ders = geodesic.evaluate(params, lam)
    analytic = np.concatenate([ders.dz, ders.dw])
    step = _FD_STEP
    fd = (geodesic.disk_values(params, lam + step) - geodesic.disk_values(params, lam - step)) / (
        2 * step
    )
    res_geo = float(np.max(np.abs(analytic - fd)))

    maps = schwarz.builtin_examples(sig)
    m = maps[int(rng.integers(len(maps)))]
    J_map = m.jac(schwarz.source_base_point()).entries
    J_map_fd = schwarz.finite_difference_jacobian(m.eval, schwarz.source_base_point())
    res_schwarz = float(np.max(np.abs(J_map - J_map_fd)))

    residual = max(res_auto, res_geo, res_schwarz)
    return {
        "trial": trial,
        "residual": residual,
        "automorphism": res_auto,
        "geodesic": res_geo,
        "schwarz": res_schwarz,
        "ok": residual <= tol,
    }


def _trial_invariance(seed: int, trial: int, tol: float) -> dict:
    rng = _rng(seed, 2, trial)
    sig = DomainSig(1, 1)
    p = _random_interior_point(rng, sig)
    v = TangentVector(
        rng.normal() + 1j * rng.normal(),
        rng.normal() + 1j * rng.normal(),
    )
    A = _random_automorphism(rng, sig)
    K_before = metric(p, v).K
    K_after = metric(apply(A, p), pushforward(A, p, v)).K
    deviation = abs(K_before - K_after) / max(K_before, 1e-12)
    return {
        "trial": trial,
        "residual": deviation,
        "K": K_before,
        "ok": deviation <= tol,
    }


def _trial_dominance(seed: int, trial: int, tol: float) -> dict:
    rng = _rng(seed, 3, trial)
    family = geodesic.FAMILIES[trial % 4]
    fam = geodesic._draw_family(rng, family, (0.05, 0.95), 0.9, 10_000)
    params = fam.params()
    point0, tangent0 = geodesic.evaluate(params, 0.0)
    K = metric(Point(0.0, complex(point0.w[0])), tangent0).K

    violation = max(K - (1.0 + tol), abs(K - 1.0) - 1e-6, 0.0)

    # scaled direction: positive homogeneity
    s = complex((0.2 + 1.5 * rng.uniform()) * np.exp(2j * math.pi * rng.uniform()))
    K_scaled = metric(
        Point(0.0, complex(point0.w[0])),
        TangentVector(s * tangent0.dz, s * tangent0.dw),
    ).K
    scale_dev = abs(K_scaled - abs(s) * K) / max(abs(s) * K, 1e-12)
    violation = max(violation, scale_dev - tol)

    # precomposition with a disk automorphism: competitor bound at phi(c)
    bound = 0.0
    for _ in range(2):
        c = complex(0.9 * math.sqrt(rng.uniform()) * np.exp(2j * math.pi * rng.uniform()))
        point_c, tangent_c = geodesic.evaluate(params, c)
        K_c = metric(point_c, tangent_c).K
        bound = max(bound, (1.0 - abs(c) ** 2) * K_c)
        violation = max(violation, bound - (1.0 + tol))

    return {
        "trial": trial,
        "family": family,
        "residual": abs(K - 1.0),
        "precomposed_bound": bound,
        "ok": violation <= 0.0,
    }


def _trial_bridge(seed: int, trial: int, tol: float) -> dict:
    rng = _rng(seed, 4, trial)
    b = rng.uniform(0.05, 0.95)
    t = rng.uniform(0.001, 0.999) * rootsolve.t_max(b)
    L = math.log(b)
    q = float(rootsolve.one_minus_b2_exp(b, t))
    v = float(rootsolve.h_function(b, t)) + 2.0 * b * b
    tau_a = -(1.0 / (2.0 * L)) * (1.0 - v / (2.0 * b * b * L))
    tau_b = 1.0 / (t * q)
    lhs = float(rootsolve.g_function(b, t))
    rhs = (tau_a - tau_b) * t * q * math.exp(t)
    residual = abs(lhs - rhs) / (1.0 + abs(lhs))
    return {"trial": trial, "residual": residual, "b": b, "t": t, "ok": residual <= tol}


_TRIALS = {
    "jacobians": _trial_jacobians,
    "invariance": _trial_invariance,
    "dominance": _trial_dominance,
    "bridge": _trial_bridge,
}


def _run_chunk(suite: str, seed: int, lo: int, hi: int, tol: float) -> list[dict]:
    fn = _TRIALS[suite]
    return [fn(seed, i, tol) for i in range(lo, hi)]


def run_suite(
    suite: str, seed: int, trials: int, tol: float | None = None, workers: int = 1
) -> SuiteReport:
    """Run one trial-based suite; sharding by worker count never reorders draws."""
    if suite == "seams":
        return probe_seams()
    if suite not in _TRIALS:
        raise FbhMetricError(f"unknown suite {suite!r}")
    if tol is None:
        tol = DEFAULT_TOLS[suite]
    if workers <= 1 or trials < 2 * workers:
        records = _run_chunk(suite, seed, 0, trials, tol)
    else:
        bounds = np.linspace(0, trials, workers + 1).astype(int)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_run_chunk, suite, seed, int(lo), int(hi), tol)
                for lo, hi in zip(bounds[:-1], bounds[1:])
            ]
            records = [rec for fut in futures for rec in fut.result()]
    failures = sum(1 for rec in records if not rec["ok"])
    worst = max((rec["residual"] for rec in records), default=0.0)
    return SuiteReport(suite, trials, failures, float(worst), seed, tuple(records))


def check_jacobians(seed: int, trials: int, tol: float = 1e-6, workers: int = 1) -> SuiteReport:
    return run_suite("jacobians", seed, trials, tol, workers)


def check_invariance(seed: int, trials: int, tol: float = 1e-8, workers: int = 1) -> SuiteReport:
    return run_suite("invariance", seed, trials, tol, workers)


def check_dominance_attainment(
    seed: int, trials: int, tol: float = 1e-8, workers: int = 1
) -> SuiteReport:
    return run_suite("dominance", seed, trials, tol, workers)


def check_bridge_identity(seed: int, trials: int, tol: float = 1e-9, workers: int = 1) -> SuiteReport:
    return run_suite("bridge", seed, trials, tol, workers)


def probe_seams(b_grid=(0.2, 0.35, 0.5, 0.65, 0.8), out=None) -> SuiteReport:
    """Empirical continuity probes; informational, never failing.

    For each b the closed-form value is swept through v = 4 b^2 with shrinking
    offsets, and the two candidate expressions are compared at the root-at-
    branch-point seam, where the bridge identity forces agreement.
    """
    records = []
    sweep_rows = []
    worst_beta_seam = 0.0
    for b in b_grid:
        beta = rootsolve.solve_beta(b)
        v_seam = float(rootsolve.h_function(b, beta)) + 2.0 * b * b
        L = math.log(b)
        v_small = -(1.0 / (2.0 * L)) * (1.0 - v_seam / (2.0 * b * b * L))
        alpha_value = 1.0 / (beta * float(rootsolve.one_minus_b2_exp(b, beta)))
        beta_jump = abs(v_small - alpha_value)
        worst_beta_seam = max(worst_beta_seam, beta_jump)

        jumps = []
        for delta in (1e-2, 1e-3, 1e-4, 1e-5, 1e-6):
            v0 = 4.0 * b * b
            lo = metric_normal(b, 1.0, math.sqrt(v0 * (1.0 - delta))).K_squared
            hi = metric_normal(b, 1.0, math.sqrt(v0 * (1.0 + delta))).K_squared
            jumps.append(abs(hi - lo))
            sweep_rows.append((b, v0 * (1.0 - delta), lo))
            sweep_rows.append((b, v0 * (1.0 + delta), hi))
        records.append(
            {
                "b": b,
                "beta": beta,
                "beta_seam_jump": beta_jump,
                "v_threshold_jumps": jumps,
            }
        )
    # the non-hyperbolic center: the v-small value collapses as b -> 0
    records.append(
        {
            "b": 1e-8,
            "limit_K2_X_direction": metric_normal(1e-8, 1.0, 0.0).K_squared,
        }
    )
    if out is not None:
        from .serialize import write_csv

        write_csv(out, ("b", "v", "K2"), sweep_rows)
    return SuiteReport("seams", len(b_grid), 0, worst_beta_seam, 0, tuple(records))


def run_all(seed: int, trials: int, workers: int = 1, tols: dict | None = None) -> list[SuiteReport]:
    """All suites in a fixed order with their default tolerances."""
    tols = {**DEFAULT_TOLS, **(tols or {})}
    reports = [
        run_suite(name, seed, trials, tols[name], workers)
        for name in ("jacobians", "invariance", "dominance", "bridge")
    ]
    reports.append(probe_seams())
    return reports
