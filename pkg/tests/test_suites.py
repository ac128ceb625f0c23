import pytest

from checks.suites import DEFAULT_TOLERANCES, SUITES, CheckReport, run_suite

FAST_SUITES = ["factorization", "jacobi", "casimir", "groupoid", "identities"]


@pytest.mark.parametrize("name", FAST_SUITES)
def test_suites_pass_with_default_tolerance(name):
    report = run_suite(name, samples=20, seed=7)
    assert report.tolerance == DEFAULT_TOLERANCES[name]
    assert report.passed, report.to_dict()
    assert all(case["count"] > 0 for case in report.cases)


def test_circle_geometry_suite():
    report = run_suite("circle-geometry", samples=10, seed=7)
    assert report.passed, report.to_dict()
    names = {case["name"] for case in report.cases}
    assert {"no_great_circles", "rest_is_point", "perpendicularity_agreement", "lemma_coverage"} <= names


def test_suites_are_reproducible():
    first = run_suite("groupoid", samples=10, seed=11).to_dict()
    second = run_suite("groupoid", samples=10, seed=11).to_dict()
    assert first == second


def test_zero_tolerance_fails():
    report = run_suite("factorization", samples=20, seed=7, tolerance=0.0)
    assert not report.passed
    assert report.to_dict()["pass"] is False


def test_report_layout():
    report = CheckReport("casimir", seed=1, samples=3, tolerance=1e-13)
    report.add_case("a", [1e-15, 2e-15])
    report.add_case("b", [])
    result = report.to_dict()
    assert list(result) == ["suite", "seed", "samples", "tolerance", "max_residual", "pass", "cases"]
    assert result["max_residual"] == 2e-15
    assert result["pass"] is True
    assert result["cases"][1] == {"name": "b", "count": 0, "max_residual": 0.0, "pass": True}


def test_every_suite_has_a_tolerance():
    assert set(SUITES) == set(DEFAULT_TOLERANCES)
