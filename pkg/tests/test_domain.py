import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fbhmetric.domain import (
    DomainSig,
    Point,
    TangentVector,
    complex_tangent_residual,
    contains,
    defining_value,
    minkowski_functional,
)
from fbhmetric.errors import (
    DegenerateDirectionError,
    DimensionMismatchError,
    NotOnBoundaryError,
)

SIG = DomainSig(1, 1)


class TestDefiningValue:
    def test_boundary_point(self):
        assert defining_value(SIG, Point(0, 1)) == 0.0

    def test_center(self):
        assert defining_value(SIG, Point(0, 0)) == -1.0

    def test_generic_interior(self):
        assert defining_value(SIG, Point(1, 0.5)) == pytest.approx(
            -0.11787944117144233, abs=1e-15
        )

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            defining_value(SIG, Point([1, 2], 0.5))

    def test_higher_dimensions(self):
        sig = DomainSig(2, 3)
        p = Point([0.3, 0.1j], [0.2, 0.0, 0.1])
        expected = 0.05 - math.exp(-0.1)
        assert defining_value(sig, p) == pytest.approx(expected, abs=1e-15)


class TestContains:
    def test_interior(self):
        assert contains(SIG, Point(0, 0.9))

    def test_boundary_excluded(self):
        assert not contains(SIG, Point(0, 1))

    def test_near_boundary_comparison(self):
        # 0.36 < e^{-1} = 0.36788, so (1, 0.6) is just inside
        assert contains(SIG, Point(1, 0.6))
        # 0.3844 > e^{-1}, so (1, 0.62) is outside
        assert not contains(SIG, Point(1, 0.62))

    def test_margin(self):
        p = Point(0, 0.999)
        assert contains(SIG, p, tol=0.0)
        assert not contains(SIG, p, tol=0.01)

    def test_balancedness(self):
        # scaling an interior point by |t| <= 1 cannot increase rho
        rng = np.random.default_rng(5)
        for _ in range(200):
            z = 0.8 * (rng.normal() + 1j * rng.normal())
            w = math.sqrt(rng.uniform(0, 0.99)) * math.exp(-0.5 * abs(z) ** 2)
            p = Point(z, w * np.exp(1j * rng.uniform(0, 7)))
            t = math.sqrt(rng.uniform(0, 1)) * np.exp(1j * rng.uniform(0, 7))
            scaled = Point(t * p.z, t * p.w)
            assert defining_value(SIG, scaled) <= defining_value(SIG, p) + 1e-15
            assert contains(SIG, scaled)


class TestMinkowskiFunctional:
    def test_pure_w_direction(self):
        assert minkowski_functional(0, 2.5) == 2.5

    def test_unit_diagonal(self):
        # root of 1/mu^2 = 2 ln mu
        assert minkowski_functional(1, 1) == pytest.approx(1.3278640119951654, abs=1e-12)

    def test_homogeneity_doubling(self):
        assert minkowski_functional(2, 2) == pytest.approx(
            2 * minkowski_functional(1, 1), rel=1e-12
        )

    def test_defining_equation_residual(self):
        X, Y = 1.0, 1.0
        mu = minkowski_functional(X, Y)
        assert abs(abs(X) ** 2 / mu**2 + math.log(abs(Y) ** 2) - 2 * math.log(mu)) <= 1e-12

    def test_scaled_point_on_boundary(self):
        for X, Y in [(1, 1), (3.2, 0.1j), (0.05 + 1j, 2.0)]:
            mu = minkowski_functional(X, Y)
            assert abs(defining_value(SIG, Point(X / mu, Y / mu))) <= 1e-10

    def test_degenerate_direction(self):
        with pytest.raises(DegenerateDirectionError):
            minkowski_functional(1, 0)

    def test_monotone_bracketing(self):
        X, Y = 1.7, 0.4
        mu = minkowski_functional(X, Y)

        def f(m):
            return abs(X) ** 2 / m**2 + math.log(abs(Y) ** 2) - 2 * math.log(m)

        assert f(mu * 0.99) > 0 > f(mu * 1.01)

    @settings(max_examples=150, deadline=None)
    @given(
        st.floats(min_value=0.01, max_value=50),
        st.floats(min_value=0.01, max_value=50),
        st.floats(min_value=0.05, max_value=20),
        st.floats(min_value=0, max_value=2 * math.pi),
    )
    def test_scaling_property(self, x, y, t_mod, t_arg):
        t = t_mod * complex(math.cos(t_arg), math.sin(t_arg))
        mu = minkowski_functional(x, y)
        assert minkowski_functional(t * x, t * y) == pytest.approx(abs(t) * mu, rel=1e-10)


class TestComplexTangentResidual:
    def test_z_direction_is_tangent(self):
        assert complex_tangent_residual(SIG, Point(0, 1), TangentVector(1.7 - 0.3j, 0)) == 0.0

    def test_normal_direction(self):
        assert complex_tangent_residual(SIG, Point(0, 1), TangentVector(0, 1)) == 1.0

    def test_higher_dimensional_tangent_space(self):
        # at q = (0,...,0; 1, 0,...,0) the complex tangent space is beta_1 = 0
        sig = DomainSig(2, 3)
        q = Point([0, 0], [1, 0, 0])
        v = TangentVector([0.3, 1j], [0, 0.7, -2j])
        assert complex_tangent_residual(sig, q, v) == 0.0
        v_bad = TangentVector([0.3, 1j], [0.25, 0.7, -2j])
        assert complex_tangent_residual(sig, q, v_bad) == pytest.approx(0.25, abs=1e-15)

    def test_requires_boundary_point(self):
        with pytest.raises(NotOnBoundaryError):
            complex_tangent_residual(SIG, Point(0, 0.5), TangentVector(1, 0))
