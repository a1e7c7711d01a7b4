"""Boundary Schwarz-lemma auditor for holomorphic maps D_{1,1} -> D_{n,m}.

The audit fixes the boundary points p = (0, 1) of D_{1,1} and
q = (0,...,0; 1, 0,...,0) of D_{n,m} and examines maps F = (f, h) that are
holomorphic at p with F(p) = q.  Writing J_F(p) for the holomorphic Jacobian
(rows: output components, columns: the two input variables z, w), two
inequalities are checked:

(i)  conj(J_F(p))^T q^T = lambda p^T for a real lambda =
     dh_1/dw(p), bounded below by |1 - conj(h_1(0,0))|^2/(1 - |h_1(0,0)|^2),
     the one-variable boundary Schwarz bound applied to zeta -> h_1(zeta p).
     Equivalently dh_1/dz(p) = 0 and dh_1/dw(p) is real.

(ii) J_F(p), as an operator from the complex tangent space {(dz, 0)} at p to
     the complex tangent space {beta_1 = 0} at q, has operator norm at most
     sqrt(lambda).

Maps are supplied programmatically; when no analytic Jacobian is given it is
taken by central complex finite differences of the holomorphic extension
around p, with a real-step versus imaginary-step cross check guarding
holomorphy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .automorphism import Automorphism, JacobianMatrix
from .automorphism import apply as apply_automorphism
from .automorphism import jacobian as automorphism_jacobian
from .domain import DomainSig, Point
from .errors import InvalidParametersError, NotHolomorphicError

__all__ = [
    "MapUnderTest",
    "SchwarzReport",
    "source_base_point",
    "target_base_point",
    "finite_difference_jacobian",
    "audit",
    "builtin_examples",
]

SOURCE_SIG = DomainSig(1, 1)
_FD_STEP = 1e-6


@dataclass(frozen=True)
class MapUnderTest:
    """A holomorphic map D_{1,1} -> D_{n,m} under audit."""

    target: DomainSig
    eval: Callable[[Point], Point]
    jac: Optional[Callable[[Point], JacobianMatrix]] = None
    label: str = ""


@dataclass(frozen=True)
class SchwarzReport:
    """Audit result; pass_i / pass_ii mirror the two boundary inequalities."""

    label: str
    lam: float
    lower_bound: float
    normal_residual: float
    tangential_norm: float
    sqrt_lambda: float
    pass_i: bool
    pass_ii: bool


def source_base_point() -> Point:
    return Point(0.0, 1.0)


def target_base_point(sig: DomainSig) -> Point:
    w = np.zeros(sig.m, dtype=complex)
    w[0] = 1.0
    return Point(np.zeros(sig.n, dtype=complex), w)


def _as_vector(p: Point) -> np.ndarray:
    return np.concatenate([p.z, p.w])


def _eval_shifted(map_eval, p: Point, dz: complex, dw: complex) -> np.ndarray:
    return _as_vector(map_eval(Point(p.z + dz, p.w + dw)))


def finite_difference_jacobian(
    map_eval: Callable[[Point], Point], p: Point, step: float = _FD_STEP
) -> np.ndarray:
    """Central complex differences of the holomorphic extension near p."""
    cols = []
    for dz, dw in ((step, 0.0), (0.0, step)):
        plus = _eval_shifted(map_eval, p, dz, dw)
        minus = _eval_shifted(map_eval, p, -dz, -dw)
        cols.append((plus - minus) / (2.0 * step))
    return np.stack(cols, axis=1)


def _holomorphy_defect(map_eval, p: Point, step: float = _FD_STEP) -> float:
    """Disagreement between real-step and imaginary-step difference quotients."""
    worst = 0.0
    for dz, dw in ((step, 0.0), (0.0, step)):
        real_d = (_eval_shifted(map_eval, p, dz, dw) - _eval_shifted(map_eval, p, -dz, -dw)) / (
            2.0 * step
        )
        imag_d = (
            _eval_shifted(map_eval, p, 1j * dz, 1j * dw)
            - _eval_shifted(map_eval, p, -1j * dz, -1j * dw)
        ) / (2j * step)
        worst = max(worst, float(np.max(np.abs(real_d - imag_d))))
    return worst


def audit(map_under_test: MapUnderTest, tol: float = 1e-8) -> SchwarzReport:
    """Populate a SchwarzReport for one map.

    Raises InvalidParametersError when F(p) != q and NotHolomorphicError when
    the finite-difference cross directions disagree beyond tol.
    """
    sig = map_under_test.target
    p = source_base_point()
    q = target_base_point(sig)
    image = map_under_test.eval(p)
    if image.z.size != sig.n or image.w.size != sig.m:
        raise InvalidParametersError("map image does not match the target signature")
    defect = float(np.max(np.abs(_as_vector(image) - _as_vector(q))))
    if defect > 1e-10:
        raise InvalidParametersError(f"map does not send p to q (defect {defect:.3e})")
    holo = _holomorphy_defect(map_under_test.eval, p)
    if holo > tol:
        raise NotHolomorphicError(f"finite-difference cross directions disagree by {holo:.3e}")

    if map_under_test.jac is not None:
        J = np.asarray(map_under_test.jac(p).entries, dtype=complex)
    else:
        J = finite_difference_jacobian(map_under_test.eval, p)
    if J.shape != (sig.n + sig.m, 2):
        raise InvalidParametersError(f"Jacobian must have shape ({sig.n + sig.m}, 2)")

    dh1_dw = complex(J[sig.n, 1])
    lam = dh1_dw.real
    p_col = _as_vector(p)
    normal_image = np.conj(J).T @ _as_vector(q)
    normal_residual = float(np.linalg.norm(normal_image - lam * p_col))

    h1_center = complex(map_under_test.eval(Point(0.0, 0.0)).w[0])
    lower_bound = abs(1.0 - np.conj(h1_center)) ** 2 / (1.0 - abs(h1_center) ** 2)

    # z-column of J, projected into the target complex tangent space {beta_1 = 0}
    z_col = np.delete(J[:, 0], sig.n)
    tangential_norm = float(np.linalg.norm(z_col))
    sqrt_lambda = math.sqrt(max(lam, 0.0))

    pass_i = bool(
        normal_residual <= tol and abs(dh1_dw.imag) <= tol and lam >= lower_bound - tol
    )
    pass_ii = bool(tangential_norm <= sqrt_lambda + tol)
    return SchwarzReport(
        label=map_under_test.label,
        lam=lam,
        lower_bound=float(lower_bound),
        normal_residual=normal_residual,
        tangential_norm=tangential_norm,
        sqrt_lambda=sqrt_lambda,
        pass_i=pass_i,
        pass_ii=pass_ii,
    )


def _embedding(sig: DomainSig, z_factor: complex = 1.0):
    def ev(p: Point) -> Point:
        z = np.zeros(sig.n, dtype=complex)
        w = np.zeros(sig.m, dtype=complex)
        z[0] = z_factor * p.z[0]
        w[0] = p.w[0]
        return Point(z, w)

    def jc(p: Point) -> JacobianMatrix:
        J = np.zeros((sig.n + sig.m, 2), dtype=complex)
        J[0, 0] = z_factor
        J[sig.n, 1] = 1.0
        return JacobianMatrix(J)

    return ev, jc


def _mobius_in_w(sig: DomainSig, c: float, k: int = 1):
    def ev(p: Point) -> Point:
        z = np.zeros(sig.n, dtype=complex)
        w = np.zeros(sig.m, dtype=complex)
        wk = p.w[0] ** k
        w[0] = (wk + c) / (1.0 + c * wk)
        return Point(z, w)

    def jc(p: Point) -> JacobianMatrix:
        J = np.zeros((sig.n + sig.m, 2), dtype=complex)
        wk1 = k * p.w[0] ** (k - 1)
        J[sig.n, 1] = (1.0 - c * c) / (1.0 + c * p.w[0] ** k) ** 2 * wk1
        return JacobianMatrix(J)

    return ev, jc


def _power_map(sig: DomainSig, k: int):
    root_k = math.sqrt(k)

    def ev(p: Point) -> Point:
        z = np.zeros(sig.n, dtype=complex)
        w = np.zeros(sig.m, dtype=complex)
        z[0] = root_k * p.z[0]
        w[0] = p.w[0] ** k
        return Point(z, w)

    def jc(p: Point) -> JacobianMatrix:
        J = np.zeros((sig.n + sig.m, 2), dtype=complex)
        J[0, 0] = root_k
        J[sig.n, 1] = k * p.w[0] ** (k - 1)
        return JacobianMatrix(J)

    return ev, jc


def _split_z(sig: DomainSig):
    weights = np.zeros(sig.n, dtype=complex)
    weights[0], weights[1] = 0.6, 0.8

    def ev(p: Point) -> Point:
        w = np.zeros(sig.m, dtype=complex)
        w[0] = p.w[0]
        return Point(weights * p.z[0], w)

    def jc(p: Point) -> JacobianMatrix:
        J = np.zeros((sig.n + sig.m, 2), dtype=complex)
        J[: sig.n, 0] = weights
        J[sig.n, 1] = 1.0
        return JacobianMatrix(J)

    return ev, jc


def _fixed_unitary(k: int) -> np.ndarray:
    """A deterministic k x k unitary: planar rotations times a diagonal phase."""
    U = np.eye(k, dtype=complex)
    for i in range(k - 1):
        c, s = math.cos(0.4 + 0.3 * i), math.sin(0.4 + 0.3 * i)
        G = np.eye(k, dtype=complex)
        G[i, i] = c
        G[i + 1, i + 1] = c
        G[i, i + 1] = s
        G[i + 1, i] = -s
        U = U @ G
    return U @ np.diag(np.exp(1j * 0.2 * np.arange(k)))


def _rotated_embedding(sig: DomainSig):
    """Embedding post-composed with a target automorphism fixing q."""
    U = _fixed_unitary(sig.n)
    V = np.eye(sig.m, dtype=complex)
    if sig.m > 1:
        V[1:, 1:] = _fixed_unitary(sig.m - 1)
    rot = Automorphism(U, V, np.zeros(sig.n))
    embed_ev, embed_jc = _embedding(sig)

    def ev(p: Point) -> Point:
        return apply_automorphism(rot, embed_ev(p))

    def jc(p: Point) -> JacobianMatrix:
        inner = embed_ev(p)
        outer = automorphism_jacobian(rot, inner).entries
        return JacobianMatrix(outer @ embed_jc(p).entries)

    return ev, jc


def builtin_examples(target: DomainSig) -> list[MapUnderTest]:
    """Registry of audited maps into the given target domain.

    Contains the straight embedding, a source rotation, Moebius maps in w
    for c in {0.1, 0.3, 0.5}, power maps (strict inequality cases), a
    composition with a target automorphism fixing q, and for n >= 2 a map
    splitting z across two components.
    """
    maps = []

    ev, jc = _embedding(target)
    maps.append(MapUnderTest(target, ev, jc, "embed"))

    ev, jc = _embedding(target, z_factor=np.exp(1j * math.pi / 7))
    maps.append(MapUnderTest(target, ev, jc, "rotation"))

    for c in (0.1, 0.3, 0.5):
        ev, jc = _mobius_in_w(target, c)
        maps.append(MapUnderTest(target, ev, jc, f"mobius c={c}"))

    ev, jc = _power_map(target, 2)
    maps.append(MapUnderTest(target, ev, jc, "power k=2"))

    ev, jc = _mobius_in_w(target, 0.2, k=2)
    maps.append(MapUnderTest(target, ev, jc, "mobius c=0.2 of power k=2"))

    ev, jc = _rotated_embedding(target)
    maps.append(MapUnderTest(target, ev, jc, "embed with target rotation"))

    if target.n >= 2:
        ev, jc = _split_z(target)
        maps.append(MapUnderTest(target, ev, jc, "split z"))
    return maps
