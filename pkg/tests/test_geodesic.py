import math

import numpy as np
import pytest

from fbhmetric.domain import DomainSig, Point, defining_value
from fbhmetric.errors import (
    InvalidParametersError,
    NoRootBranchError,
)
from fbhmetric.geodesic import (
    FAMILIES,
    GeodesicParams,
    blaschke_zero,
    boundary_residual,
    boundary_trace,
    disk_values,
    evaluate,
    in_geodesic_region,
    make_family,
    sample_admissible,
    sample_family,
    tau_identity_residual,
    validate,
)
from fbhmetric.kobayashi import metric

SQRT091 = math.sqrt(0.91)


def worked_params() -> GeodesicParams:
    # n = 1, a = (sqrt(0.91), 0.3), alpha = (0, 0), r = (1, 0), no Blaschke factor
    return make_family("A", 0.3, 0.0).params()


class TestValidate:
    def test_worked_example_is_valid(self):
        assert validate(worked_params()) == []

    def test_zero_coefficient(self):
        params = GeodesicParams([SQRT091, 0.0], [0.0, 0.0], (1, 0), 0.0)
        assert any("nonzero" in v for v in validate(params))

    def test_constraint_a_violation(self):
        params = GeodesicParams([SQRT091, 0.3], [0.0, 0.5], (1, 0), 0.3)
        assert any("constraint A" in v for v in validate(params))

    def test_constraint_b_violation(self):
        params = GeodesicParams([1.0, 0.3], [0.0, 0.0], (1, 0), 0.0)
        assert any("constraint B" in v for v in validate(params))

    def test_unit_bit_needs_open_disk(self):
        fam = make_family("A", 0.3, 1.0)  # alpha2 on the circle is fine for r2 = 0
        assert validate(fam.params()) == []
        params = GeodesicParams(fam.params().a, fam.params().alpha, (1, 1), fam.alpha0)
        assert any("open unit disk" in v for v in validate(params))


class TestEvaluate:
    def test_worked_base_point(self):
        point, tangent = evaluate(worked_params(), 0.0)
        assert complex(point.z[0]) == 0.0
        assert complex(point.w[0]) == pytest.approx(0.3951177613268873, abs=1e-15)
        assert abs(tangent.dz[0]) == pytest.approx(1.3627702877384938, rel=1e-14)
        assert tangent.dz[0] == pytest.approx(1j * SQRT091 / 0.7, rel=1e-14)
        assert tangent.dw[0] == 0.0

    def test_rotationless_base_points(self):
        # all alpha_j = 0 and r_j = 0 gives phi_j(0) = i a_j / (1 - a_last)
        a = np.array([0.6, 0.5, math.sqrt(1 - 0.36 - 0.25)])
        params = GeodesicParams(a, np.zeros(3), (0, 0, 0), 0.0)
        assert validate(params) == []
        point, _ = evaluate(params, 0.0)
        for j in range(2):
            assert complex(point.z[j]) == pytest.approx(1j * a[j] / (1 - a[2]), rel=1e-14)

    def test_interior_images_stay_interior(self):
        rng = np.random.default_rng(31)
        for seed in range(20):
            n = 1 + seed % 3
            params = sample_admissible(seed, n)
            sig = DomainSig(n, 1)
            for _ in range(64):
                lam = math.sqrt(rng.uniform()) * np.exp(2j * math.pi * rng.uniform())
                point, _ = evaluate(params, 0.999 * lam)
                assert defining_value(sig, point) < 0.0

    def test_denominator_guard(self):
        params = GeodesicParams([0.1, 1 - 1e-15], [0.0, 0.0], (0, 0), 0.0)
        with pytest.raises(InvalidParametersError):
            evaluate(params, 0.0)

    def test_derivative_matches_finite_differences(self):
        params = worked_params()
        lam, step = 0.3 + 0.2j, 1e-6
        _, tangent = evaluate(params, lam)
        fd = (disk_values(params, lam + step) - disk_values(params, lam - step)) / (2 * step)
        analytic = np.concatenate([tangent.dz, tangent.dw])
        assert np.max(np.abs(analytic - fd)) <= 1e-6


class TestBoundaryProperty:
    def test_worked_example_angles(self):
        params = worked_params()
        for theta in (0.0, math.pi / 2, math.pi):
            assert boundary_residual(params, theta) <= 1e-10

    def test_blaschke_factor_does_not_change_residual(self):
        fam = make_family("B", 0.3, 0.5)
        assert fam.params().blaschke is not None
        for theta in (0.0, 1.0, math.pi):
            assert boundary_residual(fam.params(), theta) <= 1e-10

    def test_sampled_families(self):
        thetas = np.linspace(0.0, 2 * math.pi, 256, endpoint=False)
        for seed, family in enumerate(FAMILIES):
            fam = sample_family(100 + seed, family)
            _, rho = boundary_trace(fam.params(), thetas)
            assert np.max(np.abs(rho)) <= 1e-9

    def test_sampled_general_dimension(self):
        thetas = np.linspace(0.0, 2 * math.pi, 256, endpoint=False)
        for seed in range(8):
            params = sample_admissible(seed, 2 + seed % 2)
            _, rho = boundary_trace(params, thetas)
            assert np.max(np.abs(rho)) <= 1e-9


class TestTauIdentities:
    def test_worked_family_a(self):
        fam = make_family("A", 0.3, 0.0)
        # |X|^2 = 0.91/0.49 equals -2 ln b = 13/7, so the closed form is 1 exactly
        assert tau_identity_residual(fam) <= 1e-12

    @pytest.mark.parametrize("family", FAMILIES)
    def test_identity_across_sampled_disks(self, family):
        worst = max(
            tau_identity_residual(sample_family(seed, family)) for seed in range(1000)
        )
        assert worst <= 1e-8

    def test_family_d_blaschke_zero_resolution(self):
        # the r = 1 Blaschke zero satisfies the identity; reusing the r = 0
        # formula (as printed alongside the fourth family) does not
        good = 0.0
        wrong_residuals = []
        for seed in range(25):
            fam = sample_family(seed, "D")
            good = max(good, tau_identity_residual(fam))
            params = fam.params()
            wrong_gamma = blaschke_zero(fam.a2, fam.alpha2, fam.alpha0, 0)
            wrong = GeodesicParams(params.a, params.alpha, params.r, params.alpha0,
                                   complex(wrong_gamma))
            point, tangent = evaluate(wrong, 0.0)
            b = abs(complex(point.w[0]))
            X, Y = complex(tangent.dz[0]), complex(tangent.dw[0])
            try:
                from fbhmetric.rootsolve import one_minus_b2_exp, solve_alpha_roots

                roots = solve_alpha_roots(b, abs(Y) ** 2 / abs(X) ** 2)
                resid = min(
                    abs(1 - abs(X) ** 2 / (r * one_minus_b2_exp(b, r))) for r in roots
                )
            except NoRootBranchError:
                resid = math.inf
            wrong_residuals.append(resid)
        assert good <= 1e-8
        assert sum(1 for r in wrong_residuals if r > 1e-6) >= 20


class TestCandidateFamilies:
    def test_a1_specialization(self):
        fam = make_family("C", -0.4, 0.25)
        expected = (1 - 0.16) * (1 - 0.16 * 0.0625)
        assert abs(fam.a1) ** 2 == pytest.approx(expected, rel=1e-14)
        assert fam.alpha0 == pytest.approx(0.16 * 0.25, abs=1e-15)

    def test_family_b_blaschke_zero_vanishes(self):
        fam = make_family("B", 0.3, 0.4 + 0.2j)
        gamma = fam.params().blaschke
        assert abs(gamma) < 1.0
        point, _ = evaluate(fam.params(), gamma)
        assert abs(complex(point.w[0])) <= 1e-15

    def test_family_validation(self):
        with pytest.raises(InvalidParametersError):
            make_family("E", 0.3, 0.0)
        with pytest.raises(InvalidParametersError):
            make_family("A", 0.0, 0.0)
        with pytest.raises(InvalidParametersError):
            make_family("C", 0.3, 1.0)  # r2 = 1 needs the open disk

    def test_all_family_params_validate(self):
        for family in FAMILIES:
            for seed in range(25):
                assert validate(sample_family(seed, family).params()) == []


class TestSamplers:
    def test_family_determinism(self):
        one = sample_family(42, "B")
        two = sample_family(42, "B")
        assert one == two

    def test_admissible_determinism(self):
        one = sample_admissible(42, 3)
        two = sample_admissible(42, 3)
        assert np.array_equal(one.a, two.a)
        assert np.array_equal(one.alpha, two.alpha)
        assert one.r == two.r and one.alpha0 == two.alpha0 and one.blaschke == two.blaschke

    def test_admissible_general_n(self):
        for n in (2, 3, 4):
            params = sample_admissible(7, n)
            assert params.n == n
            assert validate(params) == []

    def test_geodesic_region_draws_attain(self):
        for family in FAMILIES:
            for seed in range(10):
                fam = sample_family(seed + 500, family)
                assert in_geodesic_region(fam)
                point, tangent = evaluate(fam.params(), 0.0)
                K = metric(Point(0.0, complex(point.w[0])), tangent).K
                assert abs(K - 1.0) <= 1e-6


class TestPrecomposedDisks:
    def test_interior_competitor_bound(self):
        rng = np.random.default_rng(41)
        for seed in range(12):
            fam = sample_family(seed + 900, FAMILIES[seed % 4])
            params = fam.params()
            for _ in range(4):
                c = 0.9 * math.sqrt(rng.uniform()) * np.exp(2j * math.pi * rng.uniform())
                point, tangent = evaluate(params, complex(c))
                K = metric(point, tangent).K
                assert (1 - abs(c) ** 2) * K <= 1 + 1e-8
