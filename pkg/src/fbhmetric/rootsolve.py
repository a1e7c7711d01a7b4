"""Scalar special functions and safeguarded solvers behind the D_{1,1} metric.

For a base value b in (0, 1) everything lives on the interval [0, t_max],
t_max = -2 ln b.  Two functions drive the closed-form branch structure:

* ``h_function`` is the left-hand side of the transcendental root equation

      (b^4 t^2 e^t + (1 - b^2 e^t)^2 e^{-t}) / (t (1 - b^2 e^t)) = v - 2 b^2.

  It diverges at both endpoints and has the single interior minimum 2 b^2 at
  t_star, the root of b^2 e^t (t + 1) = 1, so the equation has solutions
  exactly for v >= 4 b^2: one double root at t_star or one root on each side.

* ``g_function`` is the discriminant whose sign decides which of the two
  closed-form candidate values is smaller.  It is positive on [0, beta),
  negative on (beta, t_max) and vanishes at the single interior branch point
  beta and (to second order) at t_max.

The bridge identity ties the two together: with v = h(t) + 2b^2,

    g(t) = (tau_A^2 - tau_B^2) * t (1 - b^2 e^t) e^t,

where tau_A^2 = -(1/(2 ln b)) (1 - v/(2 b^2 ln b)) and
tau_B^2 = 1/(t (1 - b^2 e^t)) are the two candidate values normalized to
|X| = 1.  It is used as a cross-module oracle by the verify suites.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonConvergenceError, NoRootBranchError, OutOfDomainError

__all__ = [
    "BranchData",
    "t_max",
    "t_star",
    "one_minus_b2_exp",
    "g_function",
    "h_function",
    "solve_beta",
    "solve_alpha_roots",
    "branch_data",
]

_MAX_ITER = 200


def _check_b(b: float) -> None:
    if not 0.0 < b < 1.0:
        raise OutOfDomainError(f"require 0 < b < 1, got b = {b}")


def t_max(b: float) -> float:
    """Right endpoint -2 ln b of the branch interval."""
    _check_b(b)
    return -2.0 * math.log(b)


def one_minus_b2_exp(b: float, t):
    """1 - b^2 e^t evaluated as -expm1(t + 2 ln b).

    The factored form avoids catastrophic cancellation near t_max and is
    exactly zero when t equals the t_max float.
    """
    return -np.expm1(t + 2.0 * math.log(b))


def _g_scaled(b: float, t: float) -> float:
    """b^2 * g(t): same zeros as g, representable for every b in (0, 1)."""
    tm = -2.0 * math.log(b)
    q = -math.expm1(t - tm)
    return t * q * (1.0 - q) / tm + (
        (t - tm) * (t + tm) + q * (2.0 * t * (1.0 - t) + tm * tm) + q * q * (1.0 - t) ** 2
    ) / (tm * tm)


def _g_scalar(b: float, t: float) -> float:
    return _g_scaled(b, t) / (b * b)


def g_function(b: float, t):
    """Branch discriminant on [0, t_max]; accepts a scalar or array t.

    Algebraically equal to

        -t (1-b^2 e^t) e^t / (2 ln b)
        + (b^2 t e^t + (1-b^2 e^t))^2 / (4 b^2 ln^2 b) - e^t,

    evaluated in a regrouped form (with q = 1 - b^2 e^t and e^t = (1-q)/b^2
    substituted) that is exact at both endpoints: the closed form
    (1-b^2)^2/(4 b^2 ln^2 b) - 1 at t = 0 and zero at t = t_max.
    """
    _check_b(b)
    tm = t_max(b)
    if np.any(np.asarray(t) < 0.0) or np.any(np.asarray(t) > tm * (1 + 1e-15)):
        raise OutOfDomainError(f"t out of [0, {tm}]")
    if np.ndim(t) == 0:
        return _g_scalar(b, float(t))
    t = np.asarray(t, dtype=float)
    q = -np.expm1(t - tm)
    bracket = t * q * (1.0 - q) / tm + (
        (t - tm) * (t + tm) + q * (2.0 * t * (1.0 - t) + tm * tm) + q * q * (1.0 - t) ** 2
    ) / (tm * tm)
    return bracket / (b * b)


def _h_scalar(b: float, t: float) -> float:
    # b^4 t e^t = t exp(t - 2 t_max); keeps every exponent nonpositive
    tm = -2.0 * math.log(b)
    q = -math.expm1(t - tm)
    return t * math.exp(t - 2.0 * tm) / q + q * math.exp(-t) / t


def h_function(b: float, t):
    """Root-equation left-hand side on the open interval (0, t_max).

    Evaluated as the sum of the two positive factors b^4 t e^t/(1-b^2 e^t)
    and (1-b^2 e^t)/(t e^t), whose product is the constant b^4; hence
    h >= 2 b^2 with equality only at t_star.
    """
    _check_b(b)
    tm = t_max(b)
    arr = np.asarray(t)
    if np.any(arr <= 0.0) or np.any(arr >= tm):
        raise OutOfDomainError(f"t out of the open interval (0, {tm})")
    if np.ndim(t) == 0:
        return _h_scalar(b, float(t))
    t = np.asarray(t, dtype=float)
    q = -np.expm1(t - tm)
    return t * np.exp(t - 2.0 * tm) / q + q * np.exp(-t) / t


def t_star(b: float) -> float:
    """Minimizer of h: the unique root of b^2 e^t (t + 1) = 1 in (0, t_max)."""
    _check_b(b)
    tm = t_max(b)
    # b^2 e^t = exp(t - t_max): strictly increasing from b^2 - 1 < 0 to t_max > 0
    return _bisect(lambda t: math.exp(t - tm) * (t + 1.0) - 1.0, 0.0, tm)


def _bisect(f, lo: float, hi: float, flo: float | None = None) -> float:
    """Plain bisection to float convergence; assumes a sign change on [lo, hi]."""
    if flo is None:
        flo = f(lo)
    neg_lo = flo < 0.0
    for _ in range(_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == neg_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _golden_min(f, lo: float, hi: float) -> float:
    """Golden-section minimizer of a unimodal function on [lo, hi]."""
    invphi = 0.6180339887498949
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(_MAX_ITER):
        if hi - lo <= 1e-13 * max(1.0, hi):
            break
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - invphi * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + invphi * (hi - lo)
            fd = f(d)
    return 0.5 * (lo + hi)


def solve_beta(b: float, tol: float = 1e-12) -> float:
    """The unique zero of g in (0, t_max): g > 0 to its left, g < 0 to its right.

    g decreases to an interior minimum and then climbs back to zero at t_max,
    so the zero is isolated by minimizing first and bisecting on [0, minimizer].
    """
    _check_b(b)
    tm = t_max(b)
    # work with b^2 * g, which has the same zeros but never overflows
    g0 = _g_scaled(b, 0.0)
    if g0 <= 0.0:
        raise NonConvergenceError(f"discriminant not positive at 0 for b = {b}")
    t_neg = _golden_min(lambda t: _g_scaled(b, t), 0.0, tm)
    if _g_scaled(b, t_neg) >= 0.0:
        # at extreme b the function is a flat plateau over most of the
        # interval and the negative dip hugs t_max; probe toward it
        for k in range(1, 56):
            cand = tm * (1.0 - 0.5**k)
            if _g_scaled(b, cand) < 0.0:
                t_neg = cand
                break
        else:
            raise NonConvergenceError(f"no sign change bracketing the branch point for b = {b}")
    beta = _bisect(lambda t: _g_scaled(b, t), 0.0, t_neg, flo=g0)
    if abs(_g_scaled(b, beta)) > tol * max(1.0, abs(g0)):
        raise NonConvergenceError(f"branch-point residual above tolerance at b = {b}")
    return beta


def solve_alpha_roots(b: float, v: float, tol: float = 1e-12) -> list[float]:
    """All roots of h(t) = v - 2 b^2 in (0, t_max), ascending.

    There are two roots for v > 4 b^2 (one on each side of t_star), a double
    root at t_star for v = 4 b^2, and none below; v < 4 b^2 raises
    NoRootBranchError so the caller can fall back to the closed form that
    needs no root.

    h diverges at both endpoints, so for extreme parameters a root can sit
    closer to an endpoint than one float spacing; such a root has no
    representable location (and a diverging candidate value) and is omitted.
    Non-convergence is raised only when no root at all can be isolated.
    """
    _check_b(b)
    if v < 4.0 * b * b:
        raise NoRootBranchError(f"v = {v} < 4 b^2 = {4 * b * b}: no root branch")
    tm = t_max(b)
    ts = t_star(b)
    c = v - 2.0 * b * b
    h_min = _h_scalar(b, ts)
    if c <= h_min:
        # at (or within rounding of) the double root
        return [ts]

    def f(t: float) -> float:
        return _h_scalar(b, t) - c

    roots = []
    # left root: expand the bracket geometrically toward the singular endpoint 0
    lo = 0.5 * ts
    budget = 1200  # reaches the subnormal floor if it has to
    while f(lo) < 0.0:
        lo *= 0.5
        budget -= 1
        if budget == 0 or lo == 0.0:
            lo = None
            break
    if lo is not None:
        roots.append(_bisect(f, lo, ts, flo=f(lo)))
    # right root: expand toward the singular endpoint t_max
    gap = 0.5 * (tm - ts)
    budget = _MAX_ITER
    while f(tm - gap) < 0.0:
        gap *= 0.5
        budget -= 1
        if budget == 0 or tm - gap == tm:
            gap = None
            break
    if gap is not None:
        roots.append(_bisect(f, ts, tm - gap, flo=f(ts)))
    if not roots:
        raise NonConvergenceError(f"no representable root for b = {b}, v = {v}")
    scale = max(1.0, abs(c))
    for r in roots:
        if abs(f(r)) > tol * scale and not _ulp_sign_change(f, r, 0.0, tm):
            raise NonConvergenceError(f"root residual above tolerance at b = {b}, v = {v}")
    return sorted(roots)


def _ulp_sign_change(f, r: float, lo_limit: float, hi_limit: float) -> bool:
    """Certify a bisection root: the sign changes within one float spacing."""
    left = math.nextafter(r, lo_limit)
    right = math.nextafter(r, hi_limit)
    if left <= lo_limit or right >= hi_limit:
        return True
    fl, fr = f(left), f(right)
    return fl == 0.0 or fr == 0.0 or (fl < 0.0) != (fr < 0.0)


@dataclass(frozen=True)
class BranchData:
    """Branch structure of the interval [0, t_max] for a base value b."""

    b: float
    t_max: float
    beta: float
    t_star: float
    alpha_roots: tuple[float, ...]


def branch_data(b: float, v: float | None = None, tol: float = 1e-12) -> BranchData:
    """Solve for the branch point, the h-minimizer and (optionally) the roots."""
    roots: tuple[float, ...] = ()
    if v is not None and v >= 4.0 * b * b:
        roots = tuple(solve_alpha_roots(b, v, tol))
    return BranchData(b, t_max(b), solve_beta(b, tol), t_star(b), roots)
