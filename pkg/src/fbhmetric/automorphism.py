"""Normal-form holomorphic automorphisms of D_{n,m}.

Every element is stored as translate-then-rotate,

    (z, w) |-> ((z - a) U, exp(<z, a> - ||a||^2/2) w V),

with U, V unitary and a in C^n.  Composition re-normalizes into this order,
absorbing the scalar unimodular factor that appears when translations are
exchanged with rotations into V.  The defining function transforms as
rho(A(p)) = exp(2 Re<z, a> - ||a||^2) rho(p), so interior, boundary and
exterior are preserved.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .domain import DomainSig, Point, TangentVector, contains, _cvec
from .errors import DimensionMismatchError, InvalidParametersError, NotInteriorError

__all__ = [
    "Automorphism",
    "JacobianMatrix",
    "identity",
    "apply",
    "jacobian",
    "pushforward",
    "compose",
    "inverse",
    "reduce_to_normal_position",
]

_UNITARY_TOL = 1e-12


def _cmat(x) -> np.ndarray:
    a = np.atleast_2d(np.asarray(x, dtype=complex))
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class Automorphism:
    """Normal-form element: z-rotation U, w-rotation V, translation a."""

    U: np.ndarray
    V: np.ndarray
    a: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "U", _cmat(self.U))
        object.__setattr__(self, "V", _cmat(self.V))
        object.__setattr__(self, "a", _cvec(self.a))
        if self.a.size != self.U.shape[0]:
            raise DimensionMismatchError("translation length must match U")
        for name, M in (("U", self.U), ("V", self.V)):
            err = np.max(np.abs(M @ M.conj().T - np.eye(M.shape[0])))
            if err > _UNITARY_TOL:
                raise InvalidParametersError(f"{name} is not unitary (defect {err:.2e})")

    @property
    def sig(self) -> DomainSig:
        return DomainSig(self.U.shape[0], self.V.shape[0])


@dataclass(frozen=True)
class JacobianMatrix:
    """Holomorphic Jacobian, entries[i, j] = dF_i / dzeta_j.

    Rows index output components, columns input variables; a row tangent
    vector v pushes forward to v @ entries.T.
    """

    entries: np.ndarray


def identity(sig: DomainSig) -> Automorphism:
    return Automorphism(np.eye(sig.n), np.eye(sig.m), np.zeros(sig.n))


def _scale_factor(A: Automorphism, z: np.ndarray) -> complex:
    # exp(<z, a> - ||a||^2 / 2) with <z, a> = sum z_j conj(a_j)
    inner = complex(np.sum(z * np.conj(A.a)))
    return cmath.exp(inner - 0.5 * float(np.sum(np.abs(A.a) ** 2)))


def apply(A: Automorphism, p: Point) -> Point:
    if p.z.size != A.sig.n or p.w.size != A.sig.m:
        raise DimensionMismatchError("point does not match automorphism signature")
    return Point((p.z - A.a) @ A.U, _scale_factor(A, p.z) * (p.w @ A.V))


def jacobian(A: Automorphism, p: Point) -> JacobianMatrix:
    """Analytic Jacobian of apply(A, .) at p."""
    if p.z.size != A.sig.n or p.w.size != A.sig.m:
        raise DimensionMismatchError("point does not match automorphism signature")
    n, m = A.sig.n, A.sig.m
    J = np.zeros((n + m, n + m), dtype=complex)
    s = _scale_factor(A, p.z)
    J[:n, :n] = A.U.T
    J[n:, :n] = np.outer(s * (p.w @ A.V), np.conj(A.a))
    J[n:, n:] = s * A.V.T
    return JacobianMatrix(J)


def pushforward(A: Automorphism, p: Point, v: TangentVector) -> TangentVector:
    """Image of the tangent vector v at p under A, i.e. v @ J_A(p).T."""
    J = jacobian(A, p).entries
    image = J @ np.concatenate([v.dz, v.dw])
    return TangentVector(image[: A.sig.n], image[A.sig.n :])


def compose(A1: Automorphism, A2: Automorphism) -> Automorphism:
    """The element acting as A1 after A2 (pointwise A1(A2(p)))."""
    if A1.sig != A2.sig:
        raise DimensionMismatchError("automorphisms act on different domains")
    # (z - a2) U2 then subtract a1: total translation a2 + a1 U2^{-1}; the
    # exponent bookkeeping leaves a unimodular factor absorbed into V.
    c = A1.a @ A2.U.conj().T
    a = A2.a + c
    phase = cmath.exp(-1j * complex(np.sum(A2.a * np.conj(c))).imag)
    return Automorphism(A2.U @ A1.U, phase * (A2.V @ A1.V), a)


def inverse(A: Automorphism) -> Automorphism:
    """Group inverse; no phase correction is needed in this normal form."""
    return Automorphism(A.U.conj().T, A.V.conj().T, -(A.a @ A.U))


def reduce_to_normal_position(p: Point) -> tuple[Automorphism, float]:
    """Automorphism A with apply(A, p) = (0, b), b = exp(||z||^2/2) |w| in [0, 1).

    p must be an interior point of D_{n,1}; interiority forces b < 1.
    """
    if p.w.size != 1:
        raise DimensionMismatchError("normal-position reduction needs a single w coordinate")
    sig = p.sig
    if not contains(sig, p):
        raise NotInteriorError("point is not an interior point of the domain")
    w_shifted = complex(p.w[0]) * math.exp(0.5 * float(np.sum(np.abs(p.z) ** 2)))
    b = abs(w_shifted)
    phase = np.conj(w_shifted) / b if b > 0.0 else 1.0
    A = Automorphism(np.eye(sig.n), [[phase]], p.z)
    return A, b
