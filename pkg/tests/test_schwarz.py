import math

import numpy as np
import pytest

from fbhmetric.domain import DomainSig, Point, contains, defining_value
from fbhmetric.errors import InvalidParametersError, NotHolomorphicError
from fbhmetric.schwarz import (
    MapUnderTest,
    audit,
    builtin_examples,
    finite_difference_jacobian,
    source_base_point,
    target_base_point,
)

TARGETS = [DomainSig(1, 1), DomainSig(2, 1), DomainSig(1, 2), DomainSig(2, 3)]


def by_label(sig, text):
    matches = [m for m in builtin_examples(sig) if text == m.label]
    assert len(matches) == 1
    return matches[0]


class TestBuiltinRegistry:
    @pytest.mark.parametrize("sig", TARGETS, ids=str)
    def test_contains_embed_and_mobius(self, sig):
        labels = [m.label for m in builtin_examples(sig)]
        assert "embed" in labels
        for c in (0.1, 0.3, 0.5):
            assert f"mobius c={c}" in labels

    @pytest.mark.parametrize("sig", TARGETS, ids=str)
    def test_maps_send_p_to_q_and_preserve_domain(self, sig):
        rng = np.random.default_rng(3)
        q = target_base_point(sig)
        for m in builtin_examples(sig):
            image = m.eval(source_base_point())
            assert np.max(np.abs(np.concatenate([image.z - q.z, image.w - q.w]))) <= 1e-12
            for _ in range(50):
                z = 0.8 * (rng.normal() + 1j * rng.normal())
                w = math.sqrt(rng.uniform(0, 0.98)) * math.exp(-0.5 * abs(z) ** 2)
                w *= np.exp(1j * rng.uniform(0, 7))
                p = Point(z, w)
                assert contains(DomainSig(1, 1), p)
                assert defining_value(sig, m.eval(p)) < 0.0

    @pytest.mark.parametrize("sig", TARGETS, ids=str)
    def test_every_builtin_passes(self, sig):
        for m in builtin_examples(sig):
            report = audit(m, tol=1e-8)
            assert report.pass_i, m.label
            assert report.pass_ii, m.label

    @pytest.mark.parametrize("sig", TARGETS, ids=str)
    def test_normal_eigenvalue_is_real_and_h1_z_derivative_vanishes(self, sig):
        p = source_base_point()
        for m in builtin_examples(sig):
            J = m.jac(p).entries
            assert abs(J[sig.n, 1].imag) <= 1e-10, m.label
            assert abs(J[sig.n, 0]) <= 1e-10, m.label


class TestSharpness:
    def test_embed_attains_equalities(self):
        for sig in TARGETS:
            r = audit(by_label(sig, "embed"))
            assert r.lam == pytest.approx(1.0, abs=1e-10)
            assert r.lower_bound == pytest.approx(1.0, abs=1e-10)
            assert r.tangential_norm == pytest.approx(1.0, abs=1e-10)
            assert r.sqrt_lambda == pytest.approx(1.0, abs=1e-10)

    def test_rotation_fixing_p(self):
        r = audit(by_label(DomainSig(1, 1), "rotation"))
        assert r.lam == pytest.approx(1.0, abs=1e-10)
        assert r.tangential_norm == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("c", [0.1, 0.3, 0.5])
    def test_mobius_equality_cases(self, c):
        r = audit(by_label(DomainSig(2, 3), f"mobius c={c}"))
        expected = (1 - c) / (1 + c)
        assert r.lam == pytest.approx(expected, abs=1e-12)
        assert r.lam >= r.lower_bound - 1e-10
        assert abs(r.lam - r.lower_bound) <= 1e-10
        assert r.tangential_norm == 0.0

    def test_mobius_03_value(self):
        r = audit(by_label(DomainSig(1, 1), "mobius c=0.3"))
        assert abs(r.lam - 7.0 / 13.0) <= 1e-9

    def test_power_map_strict_inequality(self):
        r = audit(by_label(DomainSig(1, 1), "power k=2"))
        assert r.lam == pytest.approx(2.0, abs=1e-12)
        assert r.lower_bound == pytest.approx(1.0, abs=1e-12)
        assert r.lam > r.lower_bound + 0.5
        assert r.tangential_norm == pytest.approx(math.sqrt(2.0), abs=1e-12)
        assert r.tangential_norm <= r.sqrt_lambda + 1e-8


class TestFiniteDifferencePath:
    def test_fd_matches_analytic(self):
        for sig in (DomainSig(1, 1), DomainSig(2, 3)):
            for m in builtin_examples(sig):
                fd = finite_difference_jacobian(m.eval, source_base_point())
                analytic = m.jac(source_base_point()).entries
                assert np.max(np.abs(fd - analytic)) <= 1e-7, m.label

    def test_audit_without_analytic_jacobian(self):
        sig = DomainSig(2, 3)
        for m in builtin_examples(sig):
            fd_map = MapUnderTest(sig, m.eval, None, m.label)
            r_fd = audit(fd_map, tol=1e-6)
            r_an = audit(m, tol=1e-6)
            assert r_fd.lam == pytest.approx(r_an.lam, abs=1e-9)
            assert r_fd.tangential_norm == pytest.approx(r_an.tangential_norm, abs=1e-9)
            assert r_fd.pass_i and r_fd.pass_ii


class TestAuditErrors:
    def test_wrong_base_point(self):
        sig = DomainSig(1, 1)

        def ev(p):
            return Point(p.z[0], p.w[0] / 2)

        with pytest.raises(InvalidParametersError):
            audit(MapUnderTest(sig, ev, None, "halved"))

    def test_non_holomorphic_map(self):
        sig = DomainSig(1, 1)

        def ev(p):
            return Point(np.conj(p.z[0]), p.w[0])

        with pytest.raises(NotHolomorphicError):
            audit(MapUnderTest(sig, ev, None, "conjugate"))
