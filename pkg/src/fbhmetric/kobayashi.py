"""The Kobayashi pseudometric of D_{1,1}.

``metric_normal`` evaluates the closed forms at a normal-position base point
(0, b); ``metric`` extends to an arbitrary interior base point by reducing it
to (0, b) with an automorphism and pushing the tangent vector forward, which
leaves the pseudometric unchanged.

Branch structure at (0, b) with direction (X, Y), v = |Y|^2/|X|^2:

* ``zero-vector``       (X, Y) = (0, 0): the value is 0.
* ``center-minkowski``  b = 0, Y != 0: the Minkowski functional mu(X, Y).
* ``center-degenerate`` b = 0, Y = 0: the value is 0 (the domain contains
  the complex line C x {0}, so it is not hyperbolic).
* ``x-zero``            0 < b < 1, X = 0:
  K^2 = |Y|^2/(1-b^2) + |bY|^2/(1-b^2)^2.
* ``v-small``           0 < b < 1, X != 0, v < 4b^2:
  K^2 = -(1/(2 ln b)) (|X|^2 - |Y|^2/(2 b^2 ln b)).
* v >= 4b^2: K^2 is the minimum of the v-small expression and
  |X|^2/(alpha (1 - b^2 e^alpha)) over all roots alpha of the transcendental
  root equation; the tag is ``v-large-alpha`` when a root attains the
  minimum and ``v-large-beta`` otherwise.  The pseudometric is an infimum
  over competing holomorphic disks and each closed form is the value of one
  competitor family, so taking the minimum reproduces the branch-point case
  split: the sign of the discriminant g at a root decides which expression
  is smaller, and g changes sign exactly at beta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from . import rootsolve
from .automorphism import Automorphism, pushforward, reduce_to_normal_position
from .domain import DomainSig, Point, TangentVector, contains, minkowski_functional
from .errors import DimensionMismatchError, NotInteriorError, OutOfDomainError

__all__ = ["MetricResult", "metric_normal", "metric"]

SIG_11 = DomainSig(1, 1)

BRANCH_ZERO_VECTOR = "zero-vector"
BRANCH_CENTER_MINKOWSKI = "center-minkowski"
BRANCH_CENTER_DEGENERATE = "center-degenerate"
BRANCH_X_ZERO = "x-zero"
BRANCH_V_SMALL = "v-small"
BRANCH_V_LARGE_ALPHA = "v-large-alpha"
BRANCH_V_LARGE_BETA = "v-large-beta"


@dataclass(frozen=True)
class MetricResult:
    """Kobayashi value with its branch diagnostics."""

    K: float
    K_squared: float
    branch: str
    v: float | None = None
    alpha_roots: tuple[float, ...] = ()
    beta: float | None = None
    reduction: Automorphism | None = None


def _result(K_squared: float, branch: str, **kw) -> MetricResult:
    return MetricResult(math.sqrt(K_squared), K_squared, branch, **kw)


def metric_normal(b: float, X: complex, Y: complex, tol: float = 1e-12) -> MetricResult:
    """Kobayashi pseudometric of D_{1,1} at ((0, b), (X, Y)), 0 <= b < 1."""
    if not 0.0 <= b < 1.0:
        raise OutOfDomainError(f"require 0 <= b < 1, got b = {b}")
    aX, aY = abs(complex(X)), abs(complex(Y))
    if aX == 0.0 and aY == 0.0:
        return MetricResult(0.0, 0.0, BRANCH_ZERO_VECTOR)
    if b == 0.0:
        if aY == 0.0:
            return MetricResult(0.0, 0.0, BRANCH_CENTER_DEGENERATE)
        mu = minkowski_functional(X, Y, tol)
        return _result(mu * mu, BRANCH_CENTER_MINKOWSKI)
    if aX == 0.0:
        k2 = aY * aY / (1.0 - b * b) + (b * aY) ** 2 / (1.0 - b * b) ** 2
        return _result(k2, BRANCH_X_ZERO)

    v = (aY / aX) ** 2
    L = math.log(b)
    denom = 2.0 * b * b * L
    if denom == 0.0:
        # b^2 underflowed; the Y-term of this candidate diverges and the
        # minimum rule below will discard it
        y_term = 0.0 if aY == 0.0 else -math.inf
    else:
        y_term = aY * aY / denom
    v_small = -(1.0 / (2.0 * L)) * (aX * aX - y_term)
    if v < 4.0 * b * b:
        return _result(v_small, BRANCH_V_SMALL, v=v)

    roots = tuple(rootsolve.solve_alpha_roots(b, v, tol))
    beta = rootsolve.solve_beta(b, tol)
    root_values = [aX * aX / (r * rootsolve.one_minus_b2_exp(b, r)) for r in roots]
    k2 = min(v_small, *root_values)
    branch = BRANCH_V_LARGE_ALPHA if min(root_values) <= v_small else BRANCH_V_LARGE_BETA
    return _result(k2, branch, v=v, alpha_roots=roots, beta=beta)


def metric(p: Point, v: TangentVector, tol: float = 1e-12) -> MetricResult:
    """Kobayashi pseudometric of D_{1,1} at an arbitrary interior base point.

    Reduces p to (0, b) by an automorphism A, pushes v forward through the
    Jacobian of A at p and evaluates the normal-position formulas; the result
    records the reduction used.
    """
    if p.sig != SIG_11 or v.sig != SIG_11:
        raise DimensionMismatchError(
            f"metric is defined on D_(1,1); got point {p.sig} and tangent {v.sig}"
        )
    if not contains(SIG_11, p):
        raise NotInteriorError("metric needs an interior base point of D_{1,1}")
    A, b = reduce_to_normal_position(p)
    image = pushforward(A, p, v)
    res = metric_normal(b, complex(image.dz[0]), complex(image.dw[0]), tol)
    return replace(res, reduction=A)
