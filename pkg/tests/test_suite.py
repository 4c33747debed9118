"""
Tests for the seeded property suites
"""
import json

import pytest

from src.algebra.lie import builtin_spec
from src.cli import suite
from src.cli.suite import AREAS, PROPERTIES, Property, report_to_json, run_suite
from src.errors import InputError


def test_property_table_is_consistent():
    names = [p.name for p in PROPERTIES]
    assert len(names) == len(set(names))
    assert {p.area for p in PROPERTIES} == set(AREAS)


def test_structure_areas_pass_on_abelian2(tmp_path):
    report, path, _ = run_suite(builtin_spec("abelian2"), seed=3, trials=2, max_deg=1,
                                only=["algebra", "lie", "forms"], report_dir=tmp_path)
    assert report.passed
    assert path is None
    assert all(r.status == "pass" for r in report.properties)
    print(f"✓ {len(report.properties)} structural properties pass on abelian2")


def test_non_unimodular_spec_skips_convolution(tmp_path):
    report, path, _ = run_suite(builtin_spec("aff1"), seed=1, trials=1, max_deg=1,
                                only=["lie", "convolution"], report_dir=tmp_path)
    assert report.passed
    by_name = {r.name: r for r in report.properties}
    assert by_name["leibniz"].status == "pass"
    assert by_name["coboundary_hodge"].status == "skip"
    assert by_name["unit_laws"].detail == "requires unimodular"


def test_properties_are_sorted_by_area(tmp_path):
    report, _, _ = run_suite(builtin_spec("abelian2"), seed=0, trials=1, max_deg=1,
                             only=["forms", "algebra"], report_dir=tmp_path)
    areas = [r.area for r in report.properties]
    assert areas == sorted(areas, key=AREAS.index)
    assert areas[0] == "algebra"


def test_invalid_arguments():
    spec = builtin_spec("abelian2")
    with pytest.raises(InputError):
        run_suite(spec, seed=0, trials=0, max_deg=1)
    with pytest.raises(InputError):
        run_suite(spec, seed=0, trials=1, max_deg=1, only=["geometry"])


def test_failure_writes_counterexample(tmp_path, monkeypatch):
    failing = Property("always_fails", "algebra", lambda spec, gen: {"detail": "boom", "x": 1})
    monkeypatch.setattr(suite, "PROPERTIES", (failing,))
    report, path, _ = run_suite(builtin_spec("so3"), seed=9, trials=3, max_deg=1,
                                timings=True, report_dir=tmp_path)
    assert not report.passed
    assert path == tmp_path / "valconv-so3-9-counterexample.json"
    data = json.loads(path.read_text())
    assert data["counterexamples"][0]["property"] == "always_fails"
    assert data["counterexamples"][0]["trial"] == 0
    result = report.properties[0]
    assert result.status == "fail" and result.detail == "boom"
    assert result.seconds is not None
    assert "wall_time" in report_to_json(report)


def test_same_seed_same_report(tmp_path):
    spec = builtin_spec("abelian2")
    first, _, _ = run_suite(spec, seed=5, trials=2, max_deg=1, only=["forms"], report_dir=tmp_path)
    second, _, _ = run_suite(spec, seed=5, trials=2, max_deg=1, only=["forms"], report_dir=tmp_path)
    assert report_to_json(first) == report_to_json(second)


def test_s3_identities_area(tmp_path):
    report, _, _ = run_suite(builtin_spec("so3"), seed=0, trials=1, max_deg=1, only=["s3"],
                             report_dir=tmp_path)
    assert report.passed
    assert [r.name for r in report.properties] == ["s3_identities"]


@pytest.mark.parametrize("name", ["so3", "h3"])
def test_coboundary_hodge_sign_is_exact(name, monkeypatch):
    spec = builtin_spec(name)
    assert suite.check_coboundary_hodge(spec, None) is None
    original = spec.coboundary_blade
    monkeypatch.setattr(spec, "coboundary_blade",
                        lambda I: {J: -v for J, v in original(I).items()})
    failure = suite.check_coboundary_hodge(spec, None)
    assert failure is not None and failure["grade"] == 1
    print(f"✓ A flipped coboundary sign is caught on {name}")


def test_valuation_properties_run_on_h3(tmp_path):
    report, _, _ = run_suite(builtin_spec("h3"), seed=7, trials=3, max_deg=2,
                             only=["valuations"], report_dir=tmp_path)
    assert report.passed, [r.detail for r in report.properties if r.status == "fail"]
    by_name = {r.name: r for r in report.properties}
    for name in ("primitive", "well_defined", "haar_unit", "mu_character"):
        assert by_name[name].status == "pass"
    assert by_name["well_defined"].trials >= 1
    assert by_name["euler_laws"].status == "skip"
    print("✓ Well-definedness checked on h3 with exact inputs")


def test_uncounted_trials_are_reported(tmp_path, monkeypatch):
    coinciding = Property("gauges", "valuations", lambda spec, gen: suite.UNCOUNTED)
    monkeypatch.setattr(suite, "PROPERTIES", (coinciding,))
    report, path, _ = run_suite(builtin_spec("so3"), seed=1, trials=3, max_deg=1,
                                report_dir=tmp_path)
    result = report.properties[0]
    assert result.status == "pass"
    assert result.trials == 0
    assert result.detail == "3 of 3 trials uncounted"
    assert path is None


ACCEPTANCE_SPECS = ["abelian2", "abelian3", "abelian4", "h3", "so3"]


@pytest.mark.slow
@pytest.mark.parametrize("name", ACCEPTANCE_SPECS)
def test_full_suite_at_acceptance_size(name, tmp_path):
    report, path, _ = run_suite(builtin_spec(name), seed=7, trials=50, max_deg=2,
                                report_dir=tmp_path)
    assert report.passed, [r.detail for r in report.properties if r.status == "fail"]
    assert path is None
    by_name = {r.name: r for r in report.properties}
    for prop in ("unit_laws", "associativity", "lowest_term", "filtration", "primitive"):
        assert by_name[prop].trials == 50
    if name in ("h3", "so3"):
        assert by_name["well_defined"].trials >= 20
    print(f"✓ Full suite passes on {name} at 50 trials")


@pytest.mark.slow
@pytest.mark.parametrize("name", ACCEPTANCE_SPECS)
def test_differential_structure_at_acceptance_size(name, tmp_path):
    report, _, _ = run_suite(builtin_spec(name), seed=11, trials=100, max_deg=2,
                             only=["forms"], report_dir=tmp_path)
    assert report.passed, [r.detail for r in report.properties if r.status == "fail"]
    by_name = {r.name: r for r in report.properties}
    for prop in ("d_total_squared", "tilde_round_trip", "closedness_criterion"):
        assert by_name[prop].trials == 100
