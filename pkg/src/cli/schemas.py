"""
JSON payloads for Lie algebras, forms, valuations and suite reports
"""
import json
import re
from pathlib import Path
from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.algebra.exterior import DUAL, PRIMAL, index_set
from src.algebra.lie import BUILTIN_SPECS, LieAlgebraSpec, builtin_spec
from src.algebra.scalar import Scalar
from src.config import load_config
from src.forms.basic import SCALAR, BasicForm
from src.forms.bigraded import BigradedForm
from src.forms.coefficients import SphereCoefficient
from src.errors import InputError

ScalarJSON = Union[str, int, Dict[str, str]]

NUM_KEY = re.compile(r"^\(\s*([0-9,\s]*?)\s*;\s*(-?\d+)\s*\)$")


class BracketModel(BaseModel):
    """One structure-constant entry [e_i, e_j] = sum_k coeffs[k] e_k"""
    i: int = Field(..., ge=1, description="Left basis index (1-based)")
    j: int = Field(..., ge=1, description="Right basis index (1-based)")
    coeffs: Dict[str, str] = Field(default_factory=dict, description="Target index -> rational")


class LieSpecModel(BaseModel):
    """Lie algebra given by rational structure constants"""
    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "name": "so3",
                "dim": 3,
                "brackets": [
                    {"i": 1, "j": 2, "coeffs": {"3": "1"}},
                    {"i": 2, "j": 3, "coeffs": {"1": "1"}},
                    {"i": 3, "j": 1, "coeffs": {"2": "1"}},
                ],
            }
        }
    )

    name: str = Field(..., min_length=1)
    dim: int = Field(..., ge=1, le=8, description="Dimension n of the Lie algebra")
    brackets: List[BracketModel] = Field(default_factory=list)


class FormTermModel(BaseModel):
    """coeff dxi_I (x) v_V with coeff = sum num[(alpha;e)] xi**alpha r**(e + rpow)"""
    k: int = Field(..., ge=0, description="Sphere degree, equal to len(dxi)")
    dxi: List[int] = Field(default_factory=list)
    value: List[int] = Field(default_factory=list)
    num: Dict[str, ScalarJSON] = Field(..., description="'(xi-exponents;r-exponent)' -> coefficient")
    rpow: int = 0


class FormModel(BaseModel):
    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "degree": 3,
                "values": "dual",
                "terms": [{"k": 0, "dxi": [], "value": [1, 2, 3], "num": {"(0,0,0;0)": "1"},
                           "rpow": 0}],
            }
        }
    )

    degree: int = Field(..., ge=0, description="Total degree p (sphere degree for scalar forms)")
    values: Literal["dual", "primal", "scalar"]
    terms: List[FormTermModel] = Field(default_factory=list)


class ValuationModel(BaseModel):
    """{c, tau} pair over a named Lie algebra"""
    c: ScalarJSON = "0"
    tau: FormModel
    lie: str = Field(..., min_length=1)


class PropertyResultModel(BaseModel):
    name: str
    area: str
    status: Literal["pass", "fail", "skip"]
    trials: int = Field(0, ge=0)
    detail: Optional[str] = None
    counterexample: Optional[dict] = None
    seconds: Optional[float] = None


class SuiteReportModel(BaseModel):
    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "suite": "valconv",
                "spec": "so3",
                "seed": 42,
                "trials": 20,
                "max_deg": 2,
                "passed": True,
                "properties": [{"name": "unit_laws", "area": "convolution", "status": "pass",
                                "trials": 20}],
            }
        }
    )

    suite: str
    spec: str
    seed: int
    trials: int = Field(..., ge=1)
    max_deg: int = Field(..., ge=0)
    passed: bool
    properties: List[PropertyResultModel] = Field(default_factory=list)
    wall_time: Optional[float] = None


# parsing helpers


def _validate(model_cls, data):
    try:
        return model_cls.model_validate(data)
    except ValidationError as e:
        raise InputError(f"invalid {model_cls.__name__} payload: {e.errors()[0]['msg']} "
                         f"at {list(e.errors()[0]['loc'])}") from e


def read_json(path):
    try:
        with open(path, "r") as f:
            return json.load(f)
    except FileNotFoundError as e:
        raise InputError(f"file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON in {path}: {e.msg} (line {e.lineno})") from e


def write_json(data, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write("\n")


def scalar_to_json(value):
    value = Scalar.coerce(value)
    return str(value.rational_value()) if value.is_rational() else value.to_json()


# Lie algebras


def lie_from_json(data):
    model = _validate(LieSpecModel, data)
    try:
        entries = [(b.i, b.j, {int(k): v for k, v in b.coeffs.items()}) for b in model.brackets]
        return LieAlgebraSpec.from_entries(model.name, model.dim, entries)
    except ValueError as e:
        if isinstance(e, InputError):
            raise
        raise InputError(str(e)) from e


def lie_to_json(spec):
    return {
        "name": spec.name,
        "dim": spec.n,
        "brackets": [{"i": i, "j": j, "coeffs": {str(k): str(v) for k, v in sorted(c.items())}}
                     for i, j, c in spec.entries()],
    }


def load_lie(source):
    """Built-in name, a name in the Lie corpus directory, or a JSON path"""
    if source in BUILTIN_SPECS:
        return builtin_spec(source)
    path = Path(source)
    if not path.exists():
        candidate = Path(load_config()["paths"]["lie_dir"]) / f"{source}.json"
        if candidate.exists():
            path = candidate
    return lie_from_json(read_json(path))


# forms


def _parse_num_key(key, n):
    match = NUM_KEY.match(key)
    if not match:
        raise InputError(f"bad monomial key {key!r}; expected '(a1,...,an;e)'")
    exps = [int(x) for x in match.group(1).split(",") if x.strip()]
    if len(exps) != n or any(a < 0 for a in exps):
        raise InputError(f"monomial key {key!r} needs {n} non-negative exponents")
    return tuple(exps), int(match.group(2))


def _coefficient(term, n):
    weight = -term.k
    terms = {}
    for key, raw in term.num.items():
        alpha, r_exp = _parse_num_key(key, n)
        if sum(alpha) + r_exp + term.rpow != weight:
            raise InputError(f"monomial {key} with rpow {term.rpow} has weight "
                             f"{sum(alpha) + r_exp + term.rpow}, expected {weight}")
        for m, q in Scalar.from_json(raw).terms.items():
            full = alpha + (m,)
            terms[full] = terms.get(full, 0) + q
    return SphereCoefficient(n, weight, terms)


def _basic_terms(model, n, space):
    buckets = {}
    for term in model.terms:
        I = index_set(term.dxi, n)
        V = index_set(term.value, n)
        if len(I) != term.k:
            raise InputError(f"term declares k={term.k} but has dxi {term.dxi}")
        if space == SCALAR and V:
            raise InputError("scalar-valued forms carry no value blade")
        bucket = buckets.setdefault(term.k, {})
        coeff = _coefficient(term, n)
        bucket[(I, V)] = bucket[(I, V)] + coeff if (I, V) in bucket else coeff
    return buckets


def form_from_json(data, spec):
    """BigradedForm for dual/primal payloads, BasicForm for scalar ones"""
    model = _validate(FormModel, data)
    n = spec.n
    space = {"dual": DUAL, "primal": PRIMAL, "scalar": SCALAR}[model.values]
    buckets = _basic_terms(model, n, space)
    if space == SCALAR:
        extra = set(buckets) - {model.degree}
        if extra:
            raise InputError(f"scalar form of degree {model.degree} has terms of degree {extra}")
        return BasicForm(n, model.degree, SCALAR, buckets.get(model.degree, {}))
    components = {k: BasicForm(n, k, space, terms) for k, terms in buckets.items()}
    return BigradedForm(spec, model.degree, space, components)


def _terms_to_json(form):
    out = []
    for (I, V), coeff in sorted(form.terms.items()):
        num = {}
        for alpha, value in sorted(coeff.polynomial().items()):
            key = "(" + ",".join(map(str, alpha)) + f";{coeff.weight - sum(alpha)})"
            num[key] = scalar_to_json(value)
        out.append({"k": form.degree, "dxi": list(I), "value": list(V), "num": num, "rpow": 0})
    return out


def form_to_json(form):
    if isinstance(form, BasicForm):
        return {"degree": form.degree, "values": "scalar", "terms": _terms_to_json(form)}
    terms = []
    for k in sorted(form.components):
        terms.extend(_terms_to_json(form.components[k]))
    return {"degree": form.degree, "values": form.space, "terms": terms}


# valuations


def valuation_from_json(data, spec=None):
    from src.valuations.valuation import InvariantValuation

    model = _validate(ValuationModel, data)
    spec = spec or load_lie(model.lie)
    tau = form_from_json(model.tau.model_dump(), spec)
    if not isinstance(tau, BigradedForm):
        raise InputError("a valuation needs a dual- or primal-valued tau")
    return InvariantValuation(Scalar.from_json(model.c), tau)


def valuation_to_json(v):
    return {"c": v.c.to_json(), "tau": form_to_json(v.tau), "lie": v.spec.name}
