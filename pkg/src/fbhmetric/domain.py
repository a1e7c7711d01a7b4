"""Geometry of the Fock-Bargmann-Hartogs domain D_{n,m}.

D_{n,m} = {(z, w) in C^n x C^m : ||w||^2 < exp(-||z||^2)} is an unbounded,
strongly pseudoconvex, non-hyperbolic domain.  This module holds the defining
function rho(z, w) = ||w||^2 - exp(-||z||^2), membership and tangent-space
predicates, and the Minkowski functional of the balanced domain D_{1,1}.

All points and tangent vectors are row vectors over the standard Hermitian
inner product <z, w> = sum_j z_j * conj(w_j).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateDirectionError,
    DimensionMismatchError,
    NonConvergenceError,
    NotOnBoundaryError,
)

__all__ = [
    "DomainSig",
    "Point",
    "TangentVector",
    "defining_value",
    "contains",
    "minkowski_functional",
    "complex_tangent_residual",
]


@dataclass(frozen=True)
class DomainSig:
    """Dimensions (n, m) of the z-block and w-block of D_{n,m}."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise DimensionMismatchError(f"require n >= 1 and m >= 1, got ({self.n}, {self.m})")


def _cvec(x) -> np.ndarray:
    v = np.atleast_1d(np.asarray(x, dtype=complex))
    if v.ndim != 1:
        raise DimensionMismatchError(f"expected a vector, got shape {v.shape}")
    return v


@dataclass(frozen=True)
class Point:
    """A point (z, w) of C^n x C^m."""

    z: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "z", _cvec(self.z))
        object.__setattr__(self, "w", _cvec(self.w))

    @property
    def sig(self) -> DomainSig:
        return DomainSig(self.z.size, self.w.size)


@dataclass(frozen=True)
class TangentVector:
    """A holomorphic tangent vector (dz, dw) at a point of C^n x C^m."""

    dz: np.ndarray
    dw: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "dz", _cvec(self.dz))
        object.__setattr__(self, "dw", _cvec(self.dw))

    @property
    def sig(self) -> DomainSig:
        return DomainSig(self.dz.size, self.dw.size)


def _check_point(sig: DomainSig, p: Point) -> None:
    if p.z.size != sig.n or p.w.size != sig.m:
        raise DimensionMismatchError(
            f"point has shape ({p.z.size}, {p.w.size}), signature is ({sig.n}, {sig.m})"
        )


def _check_tangent(sig: DomainSig, v: TangentVector) -> None:
    if v.dz.size != sig.n or v.dw.size != sig.m:
        raise DimensionMismatchError(
            f"tangent has shape ({v.dz.size}, {v.dw.size}), signature is ({sig.n}, {sig.m})"
        )


def defining_value(sig: DomainSig, p: Point) -> float:
    """rho(z, w) = ||w||^2 - exp(-||z||^2); negative inside, zero on the boundary."""
    _check_point(sig, p)
    z2 = float(np.sum(np.abs(p.z) ** 2))
    w2 = float(np.sum(np.abs(p.w) ** 2))
    return w2 - math.exp(-z2)


def contains(sig: DomainSig, p: Point, tol: float = 0.0) -> bool:
    """Strict interior membership by margin: rho(p) < -tol.

    Boundary points are never "inside"; the metric formulas need interior
    base points.
    """
    return defining_value(sig, p) < -tol


def minkowski_functional(X: complex, Y: complex, tol: float = 1e-12) -> float:
    """Gauge of the balanced domain D_{1,1} in the direction (X, Y).

    Returns the unique mu > 0 with |X|^2/mu^2 + ln|Y|^2 - 2 ln mu = 0,
    equivalently rho(X/mu, Y/mu) = 0.  The left-hand side is strictly
    decreasing in mu, so the root is bracketed and unique.  Requires Y != 0;
    the degenerate direction (X, 0) has no finite gauge and must be handled
    by the caller.
    """
    aX2 = abs(X) ** 2
    aY = abs(Y)
    if aY == 0.0:
        raise DegenerateDirectionError("minkowski_functional requires Y != 0")
    if aX2 == 0.0:
        return aY
    ln_y2 = 2.0 * math.log(aY)

    def f(mu: float) -> float:
        return aX2 / (mu * mu) + ln_y2 - 2.0 * math.log(mu)

    def fprime(mu: float) -> float:
        return -2.0 * aX2 / (mu * mu * mu) - 2.0 / mu

    # Bracket by doubling/halving from mu0 = max(|Y|, |X|).  f(|Y|) >= 0, so
    # the root lies at or above |Y|.
    mu0 = max(aY, abs(X))
    lo = hi = mu0
    budget = 200
    if f(mu0) > 0.0:
        while f(hi) > 0.0:
            hi *= 2.0
            budget -= 1
            if budget == 0:
                raise NonConvergenceError("minkowski_functional: no upper bracket")
    else:
        while f(lo) <= 0.0:
            lo *= 0.5
            budget -= 1
            if budget == 0:
                raise NonConvergenceError("minkowski_functional: no lower bracket")

    # Safeguarded bisection-Newton hybrid on [lo, hi].
    mu = 0.5 * (lo + hi)
    for _ in range(200):
        val = f(mu)
        scale = max(1.0, aX2 / (mu * mu), abs(ln_y2), 2.0 * abs(math.log(mu)))
        if abs(val) <= tol * scale:
            return mu
        if val > 0.0:
            lo = mu
        else:
            hi = mu
        step = mu - val / fprime(mu)
        mu = step if lo < step < hi else 0.5 * (lo + hi)
    raise NonConvergenceError("minkowski_functional did not converge")


def complex_tangent_residual(
    sig: DomainSig, p: Point, v: TangentVector, boundary_tol: float = 1e-8
) -> float:
    """Distance of v from the complex tangent space T_p^{1,0}(boundary).

    The complex tangent space at a boundary point is cut out by
    sum_k conj(w_k) dw_k + exp(-||z||^2) sum_j conj(z_j) dz_j = 0; the
    returned value is the modulus of that pairing, zero exactly on
    T_p^{1,0}.
    """
    _check_point(sig, p)
    _check_tangent(sig, v)
    rho = defining_value(sig, p)
    if abs(rho) > boundary_tol:
        raise NotOnBoundaryError(f"point has rho = {rho:.3e}, not a boundary point")
    z2 = float(np.sum(np.abs(p.z) ** 2))
    pairing = np.sum(np.conj(p.w) * v.dw) + math.exp(-z2) * np.sum(np.conj(p.z) * v.dz)
    return float(abs(pairing))
