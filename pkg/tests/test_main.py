"""
Tests for the valconv command line
"""
import json

import pytest

from src.cli.main import build_parser, main
from src.cli.schemas import form_to_json, read_json, valuation_to_json, write_json
from src.forms.convolution import unit_form
from src.forms.basic import euler_volume_form
from src.forms.generators import so3_family_form
from src.valuations.valuation import haar, so3_invariant_family


@pytest.fixture(autouse=True)
def plain_output(monkeypatch):
    monkeypatch.setenv("VALCONV_COLOR", "0")


def test_parser_requires_a_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_lie_check(capsys):
    assert main(["lie", "check", "so3"]) == 0
    assert "unimodular: yes" in capsys.readouterr().out
    assert main(["lie", "check", "data/lie/aff1.json"]) == 0
    assert "unimodular: no (tr ad_e1 = 1)" in capsys.readouterr().out


def test_invalid_input_exit_code(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    assert main(["lie", "check", str(broken)]) == 2
    assert "InputError" in capsys.readouterr().err


def test_forms_convolve_and_d(tmp_path, so3):
    lhs, rhs, out = tmp_path / "lhs.json", tmp_path / "rhs.json", tmp_path / "out.json"
    write_json(form_to_json(unit_form(so3)), lhs)
    write_json(form_to_json(so3_family_form(so3, 1, 2, 3)), rhs)
    assert main(["forms", "convolve", str(lhs), str(rhs), "--lie", "so3", "--out", str(out)]) == 0
    assert read_json(out) == form_to_json(so3_family_form(so3, 1, 2, 3))
    assert main(["forms", "d", str(rhs), "--lie", "so3", "--out", str(out)]) == 0
    assert read_json(out)["degree"] == 4
    assert read_json(out)["terms"] == []


def test_forms_degree_error_exit_code(tmp_path, so3, capsys):
    lhs = tmp_path / "low.json"
    write_json({"degree": 1, "values": "dual", "terms": []}, lhs)
    assert main(["forms", "convolve", str(lhs), str(lhs), "--lie", "so3"]) == 1
    assert "DegreeError" in capsys.readouterr().err


def test_forms_integrate(tmp_path, capsys):
    path = tmp_path / "vol.json"
    write_json(form_to_json(euler_volume_form(3)), path)
    assert main(["forms", "integrate", str(path), "--lie", "so3"]) == 0
    assert "integral: 4*pi" in capsys.readouterr().out


def test_val_convolve_and_validate(tmp_path, so3, capsys):
    phi, out = tmp_path / "phi.json", tmp_path / "prod.json"
    write_json(valuation_to_json(so3_invariant_family(so3, 1, 2, 3, 4)), phi)
    unit = tmp_path / "haar.json"
    write_json(valuation_to_json(haar(so3)), unit)
    assert main(["val", "convolve", str(unit), str(phi), "--out", str(out)]) == 0
    assert read_json(out) == read_json(phi)
    assert main(["val", "validate", str(phi)]) == 0
    out_text = capsys.readouterr().out
    assert "✓ vertical" in out_text and "✓ primitive" in out_text


def test_s3_commands(capsys):
    assert main(["s3", "verify"]) == 0
    assert "❌" not in capsys.readouterr().out
    assert main(["s3", "table", "--basis", "mu", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["basis"] == ["mu0", "mu1", "mu2", "mu3"]
    assert main(["s3", "table"]) == 0
    assert capsys.readouterr().out.startswith("| ")


def test_suite_command(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["suite", "--lie", "abelian2", "--seed", "4", "--trials", "1", "--max-deg", "1",
                 "--only", "algebra", "lie", "--format", "json", "--out", str(out),
                 "--report-dir", str(tmp_path)])
    assert code == 0
    printed = json.loads(capsys.readouterr().out)
    assert printed == read_json(out)
    assert printed["spec"] == "abelian2" and printed["passed"]


def test_suite_rejects_negative_degree(capsys):
    assert main(["suite", "--lie", "so3", "--max-deg", "-1"]) == 2
