"""
Tests for JSON payloads of Lie algebras, forms, valuations and reports
"""
import json

import pytest
from pydantic import ValidationError

from src.algebra.lie import builtin_spec
from src.algebra.scalar import Scalar
from src.cli.schemas import (
    LieSpecModel, SuiteReportModel, form_from_json, form_to_json, lie_from_json, lie_to_json,
    load_lie, read_json, valuation_from_json, valuation_to_json, write_json,
)
from src.forms.basic import BasicForm, euler_volume_form
from src.forms.convolution import unit_form
from src.forms.generators import so3_family_form
from src.valuations.valuation import haar, so3_invariant_family
from src.errors import InputError, JacobiError


UNIT_PAYLOAD = {
    "degree": 3,
    "values": "dual",
    "terms": [{"k": 0, "dxi": [], "value": [1, 2, 3], "num": {"(0,0,0;0)": "1"}, "rpow": 0}],
}


def test_lie_corpus_files_match_builtins(project_root_dir):
    for name in ("abelian2", "abelian3", "so3", "h3", "aff1"):
        spec = lie_from_json(read_json(project_root_dir / "data" / "lie" / f"{name}.json"))
        assert spec == builtin_spec(name)
    print("✓ Lie corpus files agree with the built-in table")


def test_lie_round_trip(so3):
    assert lie_from_json(lie_to_json(so3)) == so3
    assert lie_from_json(LieSpecModel.model_config["json_schema_extra"]["example"]) == so3


def test_load_lie_sources(project_root_dir, h3):
    assert load_lie("h3") == h3
    assert load_lie(str(project_root_dir / "data" / "lie" / "h3.json")) == h3
    with pytest.raises(InputError):
        load_lie("no-such-algebra")


def test_invalid_lie_payloads():
    with pytest.raises(InputError):
        lie_from_json({"name": "bad", "dim": 0})
    with pytest.raises(InputError):
        lie_from_json({"name": "bad", "dim": 2, "brackets": [{"i": 1, "j": 2, "coeffs": {"2": "x"}}]})
    corrupted = {"name": "so3", "dim": 3, "brackets": [
        {"i": 1, "j": 2, "coeffs": {"3": "1", "1": "1"}},
        {"i": 2, "j": 3, "coeffs": {"1": "1"}},
        {"i": 3, "j": 1, "coeffs": {"2": "1"}},
    ]}
    with pytest.raises(JacobiError):
        lie_from_json(corrupted)


def test_read_json_errors(tmp_path):
    with pytest.raises(InputError):
        read_json(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(InputError):
        read_json(broken)


def test_write_json_creates_directories(tmp_path):
    target = tmp_path / "nested" / "out.json"
    write_json({"a": 1}, target)
    assert json.loads(target.read_text()) == {"a": 1}


def test_form_payload_parses_to_unit_form(so3):
    assert form_from_json(UNIT_PAYLOAD, so3) == unit_form(so3)


def test_form_payload_errors(so3):
    bad_key = json.loads(json.dumps(UNIT_PAYLOAD))
    bad_key["terms"][0]["num"] = {"(0,0;0)": "1"}
    with pytest.raises(InputError):
        form_from_json(bad_key, so3)
    bad_weight = json.loads(json.dumps(UNIT_PAYLOAD))
    bad_weight["terms"][0]["num"] = {"(1,0,0;0)": "1"}
    with pytest.raises(InputError):
        form_from_json(bad_weight, so3)
    bad_k = json.loads(json.dumps(UNIT_PAYLOAD))
    bad_k["terms"][0]["k"] = 1
    with pytest.raises(InputError):
        form_from_json(bad_k, so3)
    with pytest.raises(InputError):
        form_from_json({"degree": 3, "values": "mixed", "terms": []}, so3)


def test_forms_survive_serialization(so3):
    tau = so3_family_form(so3, 1, Scalar.pi(1), -2)
    assert form_from_json(form_to_json(tau), so3) == tau
    vol = euler_volume_form(3)
    parsed = form_from_json(form_to_json(vol), so3)
    assert isinstance(parsed, BasicForm) and parsed == vol


def test_valuation_payloads(so3):
    for v in (haar(so3), so3_invariant_family(so3, 1, 2, 3, Scalar.pi(-1))):
        data = valuation_to_json(v)
        assert data["lie"] == "so3"
        assert valuation_from_json(data) == v
    with pytest.raises(InputError):
        valuation_from_json({"c": "0", "lie": "so3", "tau": {"degree": 2, "values": "scalar"}})


def test_suite_report_model():
    example = SuiteReportModel.model_config["json_schema_extra"]["example"]
    report = SuiteReportModel(**example)
    assert report.passed
    assert report.properties[0].status == "pass"
    with pytest.raises(ValidationError):
        SuiteReportModel(**{**example, "trials": 0})
