"""Explicit geodesic disks of D_{n,1} and the four D_{1,1} candidate families.

A parameter tuple (a, alpha, r, alpha0) of length n+1 blocks, subject to

    a_j nonzero,  |alpha_j| <= 1  (r_j = 1 forces |alpha_j| < 1),  |alpha0| < 1,
    A:  alpha0 = sum_j |a_j|^2 alpha_j,
    B:  1 + |alpha0|^2 = sum_j |a_j|^2 (1 + |alpha_j|^2),

defines a holomorphic disk phi : E -> D_{n,1},

    phi_j(lam)     = R_j(lam) / D(lam),                 1 <= j <= n,
    phi_{n+1}(lam) = B(lam) * exp(-N(lam) / (2 D(lam))),

where, writing M_j = (lam - alpha_j)/(1 - conj(alpha_j) lam),

    R_j = M_j^{r_j} * i a_j (1 - conj(alpha_j) lam),
    Q   = M_{n+1}^{r_{n+1}} * a_{n+1} (1 - conj(alpha_{n+1}) lam),
    D   = (1 - conj(alpha0) lam) - Q,
    N   = (1 - conj(alpha0) lam) + Q,

and B is either identically 1 or the single Blaschke factor
(lam - gamma)/(1 - conj(gamma) lam) whose zero is pinned by the parameters:

    gamma = (alpha0 + conj(a_{n+1})) / (1 + conj(a_{n+1} alpha_{n+1}))   if r_{n+1} = 1,
    gamma = (alpha0 - conj(a_{n+1}) alpha_{n+1}) / (1 - conj(a_{n+1}))   if r_{n+1} = 0.

The powers M^r are evaluated by branching on the bit r, never with a complex
power function.  On the unit circle the constraints force

    sum_j |a_j|^2 |1 - conj(alpha_j) lam|^2 = |1 - conj(alpha0) lam|^2,

which is exactly rho(phi) = 0: the disk extends smoothly to the closed disk
and maps the circle into the boundary of D_{n,1}.

The four D_{1,1} candidate families fix n = 1, r_1 = 1, alpha_1 = 0 and vary
the last block: family A has r_2 = 0 and no Blaschke factor, B adds the
factor, C has r_2 = 1 without the factor, D with it.  Normalized to
tau = 1, family A/C data (b, X, Y) = (|phi_2(0)|, phi_1'(0), phi_2'(0))
satisfies the closed form

    1 = -(1/(2 ln b)) (|X|^2 - |Y|^2 / (2 b^2 ln b)),

and family B/D data satisfies 1 = |X|^2 / (alpha (1 - b^2 e^alpha)) at one
root alpha of the transcendental root equation for v = |Y|^2/|X|^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import rootsolve
from .domain import Point, TangentVector, _cvec
from .errors import InvalidParametersError, NonConvergenceError, NoRootBranchError

__all__ = [
    "GeodesicParams",
    "CandidateFamily",
    "FAMILIES",
    "blaschke_zero",
    "make_family",
    "validate",
    "disk_values",
    "evaluate",
    "boundary_trace",
    "boundary_residual",
    "tau_identity_residual",
    "in_geodesic_region",
    "sample_family",
    "sample_admissible",
]

_CONSTRAINT_TOL = 1e-12
_DENOMINATOR_FLOOR = 1e-14

FAMILIES = ("A", "B", "C", "D")


@dataclass(frozen=True)
class GeodesicParams:
    """Parameter tuple (a, alpha, r, alpha0, Blaschke zero) of a geodesic disk."""

    a: np.ndarray
    alpha: np.ndarray
    r: tuple
    alpha0: complex
    blaschke: complex | None = None

    def __post_init__(self):
        object.__setattr__(self, "a", _cvec(self.a))
        object.__setattr__(self, "alpha", _cvec(self.alpha))
        object.__setattr__(self, "r", tuple(int(x) for x in self.r))
        object.__setattr__(self, "alpha0", complex(self.alpha0))

    @property
    def n(self) -> int:
        return self.a.size - 1


def blaschke_zero(a_last: complex, alpha_last: complex, alpha0: complex, r_last: int) -> complex:
    """The Blaschke zero pinned by the last parameter block."""
    if r_last == 1:
        return (alpha0 + np.conj(a_last)) / (1.0 + np.conj(a_last * alpha_last))
    return (alpha0 - np.conj(a_last) * alpha_last) / (1.0 - np.conj(a_last))


def constraint_residuals(params: GeodesicParams) -> tuple[float, float]:
    """Absolute residuals of constraints A and B."""
    mod2 = np.abs(params.a) ** 2
    res_a = abs(params.alpha0 - np.sum(mod2 * params.alpha))
    res_b = abs(1.0 + abs(params.alpha0) ** 2 - np.sum(mod2 * (1.0 + np.abs(params.alpha) ** 2)))
    return float(res_a), float(res_b)


def validate(params: GeodesicParams) -> list[str]:
    """All admissibility violations; empty exactly when the tuple is valid."""
    violations = []
    k = params.a.size
    if params.alpha.size != k or len(params.r) != k or k < 2:
        violations.append("a, alpha, r must share a length of at least 2")
        return violations
    for j in range(k):
        if params.a[j] == 0:
            violations.append(f"a[{j}] must be nonzero")
        if abs(params.alpha[j]) > 1.0 + _CONSTRAINT_TOL:
            violations.append(f"alpha[{j}] must lie in the closed unit disk")
        if params.r[j] not in (0, 1):
            violations.append(f"r[{j}] must be a bit")
        elif params.r[j] == 1 and abs(params.alpha[j]) >= 1.0:
            violations.append(f"r[{j}] = 1 requires alpha[{j}] in the open unit disk")
    if abs(params.alpha0) >= 1.0:
        violations.append("alpha0 must lie in the open unit disk")
    if params.blaschke is not None and abs(params.blaschke) >= 1.0:
        violations.append("Blaschke zero must lie in the open unit disk")
    res_a, res_b = constraint_residuals(params)
    if res_a > _CONSTRAINT_TOL:
        violations.append(f"constraint A violated (residual {res_a:.3e})")
    if res_b > _CONSTRAINT_TOL:
        violations.append(f"constraint B violated (residual {res_b:.3e})")
    return violations


def _first_order(params: GeodesicParams, lam: np.ndarray):
    """Component values and derivatives of the disk at lam (vectorized)."""
    a, al, r = params.a, params.alpha, params.r
    n = params.n
    P = 1.0 - np.conj(params.alpha0) * lam
    dP = -np.conj(params.alpha0)
    if r[-1] == 1:
        Q = a[-1] * (lam - al[-1])
        dQ = a[-1]
    else:
        Q = a[-1] * (1.0 - np.conj(al[-1]) * lam)
        dQ = -a[-1] * np.conj(al[-1])
    D = P - Q
    N = P + Q
    dD = dP - dQ
    dN = dP + dQ
    if np.min(np.abs(D)) < _DENOMINATOR_FLOOR:
        raise InvalidParametersError("disk denominator vanishes; parameters are inadmissible")

    vals = np.empty((n + 1,) + np.shape(lam), dtype=complex)
    ders = np.empty_like(vals)
    for j in range(n):
        if r[j] == 1:
            Rj = 1j * a[j] * (lam - al[j])
            dRj = 1j * a[j]
        else:
            Rj = 1j * a[j] * (1.0 - np.conj(al[j]) * lam)
            dRj = -1j * a[j] * np.conj(al[j])
        vals[j] = Rj / D
        ders[j] = (dRj * D - Rj * dD) / (D * D)
    W = np.exp(-N / (2.0 * D))
    dW = W * (-0.5) * (dN * D - N * dD) / (D * D)
    if params.blaschke is not None:
        gamma = params.blaschke
        denom = 1.0 - np.conj(gamma) * lam
        Bv = (lam - gamma) / denom
        dB = (1.0 - abs(gamma) ** 2) / (denom * denom)
        vals[n] = Bv * W
        ders[n] = dB * W + Bv * dW
    else:
        vals[n] = W
        ders[n] = dW
    return vals, ders


def disk_values(params: GeodesicParams, lam) -> np.ndarray:
    """Component values phi(lam), shape (n+1,) + shape(lam)."""
    return _first_order(params, np.asarray(lam, dtype=complex))[0]


def evaluate(params: GeodesicParams, lam: complex) -> tuple[Point, TangentVector]:
    """The point phi(lam) and the exact analytic derivative phi'(lam)."""
    vals, ders = _first_order(params, np.asarray(complex(lam)))
    n = params.n
    return Point(vals[:n], vals[n:]), TangentVector(ders[:n], ders[n:])


def boundary_trace(params: GeodesicParams, thetas) -> tuple[np.ndarray, np.ndarray]:
    """Values phi(e^{i theta}) (shape (K, n+1)) and the defining-function residuals."""
    lam = np.exp(1j * np.asarray(thetas, dtype=float))
    vals = disk_values(params, lam)
    z2 = np.sum(np.abs(vals[: params.n]) ** 2, axis=0)
    rho = np.abs(vals[params.n]) ** 2 - np.exp(-z2)
    return vals.T, rho


def boundary_residual(params: GeodesicParams, theta: float) -> float:
    """|rho(phi(e^{i theta}))|; vanishes for admissible parameters."""
    _, rho = boundary_trace(params, [float(theta)])
    return float(abs(rho[0]))


@dataclass(frozen=True)
class CandidateFamily:
    """One of the four D_{1,1} families, determined by (a2, alpha2).

    The first block is pinned to r_1 = 1, alpha_1 = 0 and
    |a1|^2 = (1 - |a2|^2)(1 - |a2|^2 |alpha2|^2), the specialization of
    constraint B once constraint A fixes alpha0 = |a2|^2 alpha2.
    """

    family: str
    a1: complex
    a2: complex
    alpha0: complex
    alpha2: complex

    def params(self) -> GeodesicParams:
        r2 = 1 if self.family in ("C", "D") else 0
        gamma = None
        if self.family in ("B", "D"):
            gamma = complex(blaschke_zero(self.a2, self.alpha2, self.alpha0, r2))
        return GeodesicParams(
            a=[self.a1, self.a2],
            alpha=[0.0, self.alpha2],
            r=(1, r2),
            alpha0=self.alpha0,
            blaschke=gamma,
        )


def make_family(family: str, a2: complex, alpha2: complex) -> CandidateFamily:
    """Build an admissible family element from the two free parameters."""
    if family not in FAMILIES:
        raise InvalidParametersError(f"unknown family {family!r}")
    a2 = complex(a2)
    alpha2 = complex(alpha2)
    if a2 == 0 or abs(a2) >= 1.0:
        raise InvalidParametersError("require a2 nonzero with |a2| < 1")
    if abs(alpha2) > 1.0 or (family in ("C", "D") and abs(alpha2) >= 1.0):
        raise InvalidParametersError("alpha2 out of range for this family")
    a1_sq = (1.0 - abs(a2) ** 2) * (1.0 - abs(a2) ** 2 * abs(alpha2) ** 2)
    fam = CandidateFamily(family, math.sqrt(a1_sq), a2, abs(a2) ** 2 * alpha2, alpha2)
    gamma = fam.params().blaschke
    if gamma is not None and abs(gamma) >= 1.0:
        raise InvalidParametersError("Blaschke zero falls outside the open unit disk")
    return fam


def _base_data(fam: CandidateFamily) -> tuple[float, complex, complex]:
    """(b, X, Y) = (|phi_2(0)|, phi_1'(0), phi_2'(0)) for the tau = 1 normalization."""
    point, tangent = evaluate(fam.params(), 0.0)
    return abs(complex(point.w[0])), complex(tangent.dz[0]), complex(tangent.dw[0])


def tau_identity_residual(fam: CandidateFamily) -> float:
    """Defect of the family's closed-form value at tau = 1.

    Families A and C are measured against
    -(1/(2 ln b))(|X|^2 - |Y|^2/(2 b^2 ln b)); families B and D against
    |X|^2/(alpha (1 - b^2 e^alpha)) minimized over the roots alpha for
    v = |Y|^2/|X|^2.  Near zero exactly when the family realizes its
    closed form.
    """
    b, X, Y = _base_data(fam)
    if not 0.0 < b < 1.0:
        raise InvalidParametersError(f"family base value b = {b} is degenerate")
    aX2, aY2 = abs(X) ** 2, abs(Y) ** 2
    L = math.log(b)
    if fam.family in ("A", "C"):
        formula = -(1.0 / (2.0 * L)) * (aX2 - aY2 / (2.0 * b * b * L))
        return abs(1.0 - formula)
    roots = rootsolve.solve_alpha_roots(b, aY2 / aX2)
    return min(abs(1.0 - aX2 / (r * rootsolve.one_minus_b2_exp(b, r))) for r in roots)


def in_geodesic_region(fam: CandidateFamily) -> bool:
    """Whether the family's disk realizes the metric for its own base data.

    Each family attains the infimum only on part of its parameter range:
    the A/C closed form wins exactly while v stays at or below
    h(beta) + 2 b^2 (both roots then sit at or beyond the branch point), and
    a B/D disk wins exactly when its realized root is the one at or below
    the branch point.  Decided here from the root solver alone, without
    evaluating the metric.
    """
    b, X, Y = _base_data(fam)
    if not 0.0 < b < 1.0:
        return False
    aX2 = abs(X) ** 2
    v = abs(Y) ** 2 / aX2
    beta = rootsolve.solve_beta(b)
    if fam.family in ("A", "C"):
        v_cross = rootsolve.h_function(b, beta) + 2.0 * b * b
        return v <= v_cross * (1.0 + 1e-12)
    try:
        roots = rootsolve.solve_alpha_roots(b, v)
    except NoRootBranchError:
        return False
    return any(
        r <= beta * (1.0 + 1e-12)
        and abs(1.0 - aX2 / (r * rootsolve.one_minus_b2_exp(b, r))) <= 1e-6
        for r in roots
    )


def _draw_family(rng: np.random.Generator, family: str, b_range, alpha_bound, max_tries):
    lo, hi = b_range
    for _ in range(max_tries):
        a2 = rng.uniform(-0.95, 0.95)
        if abs(a2) < 1e-3:
            continue
        radius = alpha_bound * math.sqrt(rng.uniform(0.0, 1.0))
        if family in ("C", "D"):
            # keep phi_2(0) on a real ray so the closed-form normalizations
            # stay positive real
            alpha2 = complex(rng.choice([-1.0, 1.0]) * radius)
        else:
            alpha2 = radius * np.exp(2j * math.pi * rng.uniform(0.0, 1.0))
        try:
            fam = make_family(family, a2, alpha2)
        except InvalidParametersError:
            continue
        b, _, _ = _base_data(fam)
        if not lo < b < hi:
            continue
        if not in_geodesic_region(fam):
            continue
        return fam
    raise NonConvergenceError(f"rejection budget exhausted sampling family {family}")


def sample_family(
    seed: int,
    family: str,
    b_range: tuple[float, float] = (0.05, 0.95),
    alpha_bound: float = 0.9,
    max_tries: int = 10_000,
) -> CandidateFamily:
    """Deterministic rejection sampler for one family.

    Draws a2 real, keeps the base value b inside b_range (clear of the
    singular endpoints) and keeps only parameters on which the family's
    disk is a geodesic for its own data.
    """
    if family not in FAMILIES:
        raise InvalidParametersError(f"unknown family {family!r}")
    rng = np.random.default_rng([int(seed), FAMILIES.index(family)])
    return _draw_family(rng, family, b_range, alpha_bound, max_tries)


def sample_admissible(
    seed: int,
    n: int,
    alpha_bound: float = 0.9,
    max_tries: int = 10_000,
) -> GeodesicParams:
    """Deterministic rejection sampler for admissible parameters in D_{n,1}.

    n = 1 draws one of the four candidate families with its closed-form
    |a1|^2 specialization.  For n >= 2 the directions a_j = s c_j are scaled
    by the admissible root of s^4 A - s^2 B + 1 = 0 with
    A = |sum |c_j|^2 alpha_j|^2 and B = sum |c_j|^2 (1 + |alpha_j|^2);
    draws without a real root are rejected.
    """
    if n < 1:
        raise InvalidParametersError("n must be at least 1")
    rng = np.random.default_rng([int(seed), n])
    if n == 1:
        family = FAMILIES[int(rng.integers(4))]
        return _draw_family(rng, family, (0.05, 0.95), alpha_bound, max_tries).params()
    for _ in range(max_tries):
        c = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
        if np.min(np.abs(c)) < 1e-6:
            continue
        radii = alpha_bound * np.sqrt(rng.uniform(0.0, 1.0, size=n + 1))
        alpha = radii * np.exp(2j * math.pi * rng.uniform(0.0, 1.0, size=n + 1))
        r = tuple(int(x) for x in rng.integers(0, 2, size=n + 1))
        mod2 = np.abs(c) ** 2
        weighted = complex(np.sum(mod2 * alpha))
        A = abs(weighted) ** 2
        B = float(np.sum(mod2 * (1.0 + np.abs(alpha) ** 2)))
        if A == 0.0:
            s2 = 1.0 / B
        else:
            disc = B * B - 4.0 * A
            if disc < 0.0:
                continue
            s2 = (B - math.sqrt(disc)) / (2.0 * A)
        a = math.sqrt(s2) * c
        alpha0 = s2 * weighted
        if abs(alpha0) >= 1.0:
            continue
        gamma = None
        if rng.uniform() < 0.5:
            gamma = complex(blaschke_zero(a[-1], alpha[-1], alpha0, r[-1]))
            if abs(gamma) >= 1.0 - 1e-9:
                gamma = None
        params = GeodesicParams(a=a, alpha=alpha, r=r, alpha0=alpha0, blaschke=gamma)
        if validate(params):
            continue
        return params
    raise NonConvergenceError("rejection budget exhausted sampling admissible parameters")
