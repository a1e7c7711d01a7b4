import pytest

from fbhmetric.verify import (
    SUITE_NAMES,
    check_bridge_identity,
    check_dominance_attainment,
    check_invariance,
    check_jacobians,
    probe_seams,
    run_all,
    run_suite,
)


class TestSuitesPass:
    def test_jacobians(self):
        report = check_jacobians(seed=42, trials=60)
        assert report.failures == 0
        assert report.worst_residual <= 1e-6

    def test_invariance(self):
        report = check_invariance(seed=42, trials=60)
        assert report.failures == 0
        assert report.worst_residual <= 1e-8

    def test_dominance(self):
        report = check_dominance_attainment(seed=42, trials=60)
        assert report.failures == 0
        assert all(rec["precomposed_bound"] <= 1 + 1e-8 for rec in report.details)
        # residual is the attainment defect |K - 1|
        assert all(rec["residual"] <= 1e-6 for rec in report.details)

    def test_bridge(self):
        report = check_bridge_identity(seed=42, trials=60)
        assert report.failures == 0
        assert report.worst_residual <= 1e-9


class TestDeterminism:
    def test_repeat_runs_identical(self):
        a = run_suite("invariance", seed=7, trials=12)
        b = run_suite("invariance", seed=7, trials=12)
        assert a.to_dict() == b.to_dict()

    def test_worker_count_does_not_change_report(self):
        a = run_suite("bridge", seed=7, trials=12, workers=1)
        b = run_suite("bridge", seed=7, trials=12, workers=2)
        assert a.to_dict() == b.to_dict()

    def test_different_seeds_differ(self):
        a = run_suite("bridge", seed=7, trials=12)
        b = run_suite("bridge", seed=8, trials=12)
        assert a.to_dict() != b.to_dict()


class TestProbeSeams:
    def test_structure_and_informational_status(self, tmp_path):
        out = tmp_path / "sweep.csv"
        report = probe_seams((0.3, 0.5), out=out)
        assert report.suite == "seams"
        assert report.failures == 0
        # root-at-branch-point seam is closed by the bridge identity
        assert report.worst_residual <= 1e-8
        rows = out.read_text().splitlines()
        assert rows[0] == "b,v,K2"
        assert len(rows) == 1 + 2 * 2 * 5
        jumps = report.details[0]["v_threshold_jumps"]
        assert len(jumps) == 5
        assert jumps[-1] <= jumps[0]

    def test_center_limit_recorded(self):
        report = probe_seams((0.5,))
        assert report.details[-1]["limit_K2_X_direction"] <= 1e-1


class TestRunAll:
    def test_all_suites_present_and_green(self):
        reports = run_all(seed=3, trials=16)
        assert [r.suite for r in reports] == list(SUITE_NAMES)
        assert sum(r.failures for r in reports) == 0

    def test_unknown_suite_rejected(self):
        from fbhmetric.errors import FbhMetricError

        with pytest.raises(FbhMetricError):
            run_suite("nope", seed=1, trials=4)
