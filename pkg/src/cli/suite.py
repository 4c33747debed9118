"""
Seeded property suites over a Lie algebra.

Every property either runs once (exhaustive checks) or once per trial with
its own child seed, so a failing trial replays from (seed, trial index).
A check returns None on success or a counterexample payload.
"""
import logging
import time
from dataclasses import dataclass
from itertools import product
from pathlib import Path

from src.algebra.exterior import DUAL, PRIMAL, MultiVector, blades, hodge_blade, hodge_inverse_blade
from src.algebra.lie import builtin_spec, is_unimodular, koszul_boundary, leibniz_defect
from src.algebra.scalar import Scalar
from src.cli.schemas import (
    PropertyResultModel, SuiteReportModel, form_to_json, valuation_to_json, write_json,
)
from src.config import load_config
from src.forms.basic import SCALAR, BasicForm, sphere_integrate
from src.forms.wedge_convolution import wedge_convolve
from src.forms.bigraded import (
    BigradedForm, as_tilde, d_total, is_closed_n_form, tilde, tilde_d_total, untilde,
)
from src.forms.convolution import (
    convolve_forms, is_ad_invariant, lowest_term, mu_component, unit_form,
)
from src.forms.generators import FormGenerator, child_seeds, make_rng, so3_invariant_forms
from src.valuations import s3
from src.valuations.primitive import find_primitive
from src.valuations.valuation import (
    InvariantValuation, convolve_valuations, euler_characteristic, haar, intrinsic_family,
    mu_of, push_forward, so3_invariant_family, zero_valuation,
)
from src.errors import InputError, ValconvError

logger = logging.getLogger(__name__)

AREAS = ("algebra", "lie", "forms", "convolution", "valuations", "s3")

# draws of psi per trial before a well_defined trial is left uncounted
GAUGE_ATTEMPTS = 4
UNCOUNTED = "uncounted"


@dataclass(frozen=True)
class Property:
    name: str
    area: str
    check: object
    unimodular: bool = False
    exhaustive: bool = False


def _fail(detail, **inputs):
    payload = {"detail": detail}
    for key, value in inputs.items():
        if isinstance(value, (BasicForm, BigradedForm)):
            payload[key] = form_to_json(value)
        elif isinstance(value, InvariantValuation):
            payload[key] = valuation_to_json(value)
        elif isinstance(value, Scalar):
            payload[key] = value.to_json()
        else:
            payload[key] = value
    return payload


def _is_so3(spec):
    return spec == builtin_spec("so3")


def _pick(gen, low, high):
    return int(gen.rng.integers(low, high + 1))


# algebra


def check_scalar_laws(spec, gen):
    a, b, c = gen.scalar(), gen.scalar(), gen.scalar()
    if (a + b) * c != a * c + b * c or a * (b * c) != (a * b) * c or (a * b) / b != a:
        return _fail("field laws fail", a=a, b=b, c=c)
    return None


def check_hodge_round_trip(spec, gen):
    n = spec.n
    for grade in range(n + 1):
        for I in blades(n, grade):
            s1, J = hodge_inverse_blade(I, n)
            s2, K = hodge_blade(J, n)
            if K != I or s1 * s2 != 1:
                return _fail("hodge(hodge_inverse(e*_I)) != e*_I", blade=list(I))
    return None


# lie structure


def check_jacobi(spec, gen):
    bad = spec.jacobi_violations()
    return _fail("Jacobi identity fails", triples=bad) if bad else None


def check_boundary_squared(spec, gen):
    n = spec.n
    for grade in range(2, n + 1):
        for J in blades(n, grade):
            X = MultiVector.blade(PRIMAL, n, J)
            if not koszul_boundary(spec, koszul_boundary(spec, X)).is_zero():
                return _fail("boundary squared does not vanish", blade=list(J))
    return None


def check_coboundary_hodge(spec, gen):
    """On dual grade g, d* = (-1)^(n-g) *d*^{-1}"""
    n = spec.n
    for grade in range(n):
        sign = -1 if (n - grade) % 2 else 1
        for I in blades(n, grade):
            direct = dict(spec.coboundary_blade(I))
            s1, Ic = hodge_inverse_blade(I, n)
            via = {}
            for J, v in spec.boundary_blade(Ic).items():
                s2, Jc = hodge_blade(J, n)
                via[Jc] = via.get(Jc, 0) + sign * s1 * s2 * v
            via = {J: v for J, v in via.items() if v}
            if direct != via:
                return _fail(f"d* != {sign:+d} *d*^{{-1}}", grade=grade, blade=list(I))
    return None


def check_leibniz(spec, gen):
    """Zero defect on unimodular specs; a nonzero witness otherwise"""
    n = spec.n
    unimodular = is_unimodular(spec).unimodular
    for k in range(n):
        for A, B in product(blades(n, k + 1), blades(n, n - k)):
            X = MultiVector.blade(PRIMAL, n, A)
            Y = MultiVector.blade(PRIMAL, n, B)
            defect = leibniz_defect(spec, X, Y)
            if defect and unimodular:
                return _fail("Leibniz defect on a unimodular spec", X=list(A), Y=list(B),
                             defect=defect)
            if defect and not unimodular:
                return None
    if unimodular:
        return None
    return _fail("non-unimodular spec without a Leibniz witness")


# forms


def check_d_sphere_squared(spec, gen):
    n = spec.n
    if n < 2:
        return None
    k = _pick(gen, 0, n - 2)
    omega = gen.basic_form(n, k, PRIMAL, _pick(gen, 0, n))
    if not omega.d().d().is_zero():
        return _fail("d(d omega) != 0", omega=omega)
    return None


def check_basic_invariants(spec, gen):
    n = spec.n
    tau = gen.bigraded(spec, _pick(gen, 0, 2 * n - 1))
    try:
        tau.check_invariants()
    except ValconvError as e:
        return _fail(f"generated form is not basic: {e}", tau=tau)
    return None


def check_tilde_round_trip(spec, gen):
    tau = gen.bigraded(spec, _pick(gen, 0, 2 * spec.n - 1))
    if untilde(tilde(tau)) != tau:
        return _fail("untilde(tilde(tau)) != tau", tau=tau)
    return None


def check_d_total_squared(spec, gen):
    n = spec.n
    if 2 * n - 3 < 0:
        return None
    tau = gen.bigraded(spec, _pick(gen, 0, 2 * n - 3))
    if not d_total(d_total(tau)).is_zero():
        return _fail("d_total(d_total(tau)) != 0", tau=tau)
    return None


def check_commuting_square(spec, gen):
    tau = gen.bigraded(spec, _pick(gen, 0, 2 * spec.n - 2))
    if tilde(d_total(tau)) != tilde_d_total(tilde(tau)):
        return _fail("tilde(d_total tau) != tilde_d_total(tilde tau)", tau=tau)
    return None


def check_closedness_criterion(spec, gen):
    n = spec.n
    for tau in (gen.bigraded(spec, n), gen.closed_form(spec)):
        if is_closed_n_form(tau) != d_total(tau).is_zero():
            return _fail("closedness criterion disagrees with d_total", tau=tau)
    return None


def check_stokes(spec, gen):
    n = spec.n
    if n < 2:
        return None
    omega = gen.basic_form(n, n - 2, SCALAR, 0)
    value = sphere_integrate(omega.d())
    if value:
        return _fail("integral of an exact form is nonzero", omega=omega, value=value)
    return None


# convolution


def _convolvable_degrees(gen, n, count):
    """Degrees n..2n-1 whose iterated products stay in range"""
    while True:
        degrees = [_pick(gen, n, 2 * n - 1) for _ in range(count)]
        if sum(degrees) - (count - 1) * n <= 2 * n - 1:
            return degrees


def check_unit_laws(spec, gen):
    unit = unit_form(spec)
    zeta = gen.bigraded(spec, _pick(gen, 0, 2 * spec.n - 1))
    if convolve_forms(unit, zeta) != zeta or convolve_forms(zeta, unit) != zeta:
        return _fail("unit law fails", zeta=zeta)
    return None


def check_associativity(spec, gen):
    p, q, r = _convolvable_degrees(gen, spec.n, 3)
    tau, zeta, kappa = (gen.bigraded(spec, d) for d in (p, q, r))
    left = convolve_forms(convolve_forms(tau, zeta), kappa)
    right = convolve_forms(tau, convolve_forms(zeta, kappa))
    if left != right:
        return _fail("(tau*zeta)*kappa != tau*(zeta*kappa)", tau=tau, zeta=zeta, kappa=kappa)
    return None


def check_lowest_term(spec, gen):
    n = spec.n
    p, q = _convolvable_degrees(gen, n, 2)
    tau, zeta = gen.bigraded(spec, p), gen.bigraded(spec, q)
    j, expected = lowest_term(tau, zeta)
    if j is None or j > n - 1:
        return None
    product_tilde = as_tilde(convolve_forms(tau, zeta))
    if product_tilde.component(j) != expected:
        return _fail("lowest sphere-degree term is not the signed wedge", tau=tau, zeta=zeta)
    return None


def check_filtration(spec, gen):
    n = spec.n
    p, q = _convolvable_degrees(gen, n, 2)
    a = _pick(gen, 0, n - 1)
    b = _pick(gen, 0, n - 1)
    tau, zeta = gen.bigraded(spec, p, max_k=a), gen.bigraded(spec, q, max_k=b)
    top = convolve_forms(tau, zeta).max_sphere_degree()
    if top is not None and top > a + b:
        return _fail(f"product has sphere degree {top} > {a + b}", tau=tau, zeta=zeta)
    return None


def check_abelian_reduction(spec, gen):
    if spec.brackets:
        return None
    p, q = _convolvable_degrees(gen, spec.n, 2)
    tau, zeta = gen.bigraded(spec, p), gen.bigraded(spec, q)
    if convolve_forms(tau, zeta) != wedge_convolve(tau, zeta):
        return _fail("convolution differs from the wedge-product convolution", tau=tau, zeta=zeta)
    return None


def check_bi_invariance(spec, gen):
    p, q = _convolvable_degrees(gen, spec.n, 2)
    if _is_so3(spec):
        tau, zeta = so3_invariant_forms(spec, p, gen), so3_invariant_forms(spec, q, gen)
    else:
        tau, zeta = gen.bigraded(spec, p), gen.bigraded(spec, q)
    if not (is_ad_invariant(tau) and is_ad_invariant(zeta)):
        return _fail("generated inputs are not invariant", tau=tau, zeta=zeta)
    if not is_ad_invariant(convolve_forms(tau, zeta)):
        return _fail("product of invariant forms is not invariant", tau=tau, zeta=zeta)
    return None


def check_mu_multiplicative(spec, gen):
    tau, zeta = gen.closed_form(spec), gen.closed_form(spec)
    if mu_component(convolve_forms(tau, zeta)) != mu_component(tau) * mu_component(zeta):
        return _fail("mu is not multiplicative", tau=tau, zeta=zeta)
    return None


# valuations


def random_family_member(spec, gen):
    """Random valid invariant valuation, or None when the spec has no family"""
    if _is_so3(spec):
        return so3_invariant_family(spec, gen.scalar(), gen.scalar(), gen.scalar(), gen.scalar())
    if not spec.brackets:
        return intrinsic_family(spec, [gen.scalar() for _ in range(spec.n)], gen.scalar())
    return None


def check_primitive(spec, gen):
    tau = gen.closed_form(spec)
    pair = find_primitive(tau)
    constant = {0: tau.components[0]} if 0 in tau.components else {}
    rest = tau - BigradedForm(spec, spec.n, DUAL, constant)
    if d_total(pair.omega) != rest:
        return _fail("d_total(omega) != tau - tau_0", tau=tau)
    if push_forward(pair.omega):
        return _fail("primitive has nonzero push-forward", tau=tau)
    return None


def random_exact_valuation(spec, gen):
    """{c, d_total(omega') + tau_0} for a random (n-1)-form omega'"""
    return InvariantValuation(gen.scalar(), gen.closed_form(spec))


def random_valuation(spec, gen):
    """A family member when the spec has an invariant family, else an exact valuation"""
    phi = random_family_member(spec, gen)
    return phi if phi is not None else random_exact_valuation(spec, gen)


def _distinct_gauges(tau):
    return find_primitive(tau).omega != find_primitive(tau, reverse=True).omega


def check_well_defined(spec, gen):
    """Same product under two distinct primitives of psi; uncounted when the gauges coincide"""
    phi = random_valuation(spec, gen)
    for _ in range(GAUGE_ATTEMPTS):
        psi = random_exact_valuation(spec, gen)
        if _distinct_gauges(psi.tau):
            break
    else:
        return UNCOUNTED
    first = convolve_valuations(phi, psi)
    second = convolve_valuations(phi, psi, reverse=True)
    if first != second:
        return _fail("convolution depends on the primitive", phi=phi, psi=psi)
    return None


def check_haar_unit(spec, gen):
    phi = random_valuation(spec, gen)
    unit = haar(spec)
    if convolve_valuations(unit, phi) != phi or convolve_valuations(phi, unit) != phi:
        return _fail("Haar valuation is not a unit", phi=phi)
    return None


def check_euler_laws(spec, gen):
    phi = random_family_member(spec, gen)
    if phi is None:
        return None
    chi = euler_characteristic(spec)
    if convolve_valuations(phi, chi) != chi.scale(mu_of(phi)):
        return _fail("phi * chi != mu(phi) chi", phi=phi)
    if convolve_valuations(chi, phi) != chi.scale(mu_of(phi)):
        return _fail("chi * psi != mu(psi) chi", psi=phi)
    return None


def check_mu_character(spec, gen):
    phi, psi = random_valuation(spec, gen), random_valuation(spec, gen)
    if mu_of(convolve_valuations(phi, psi)) != mu_of(phi) * mu_of(psi):
        return _fail("mu(phi*psi) != mu(phi) mu(psi)", phi=phi, psi=psi)
    return None


def check_valuation_associativity(spec, gen):
    phi, psi, kappa = (random_family_member(spec, gen) for _ in range(3))
    if phi is None:
        return None
    left = convolve_valuations(convolve_valuations(phi, psi), kappa)
    right = convolve_valuations(phi, convolve_valuations(psi, kappa))
    if left != right:
        return _fail("valuation convolution is not associative", phi=phi, psi=psi, kappa=kappa)
    return None


def check_chi_nilpotent(spec, gen):
    chi = euler_characteristic(spec)
    if convolve_valuations(chi, chi) != zero_valuation(spec):
        return _fail("chi * chi != 0")
    return None


def check_family_algebra(spec, gen):
    if not _is_so3(spec):
        return None
    alg = s3.family_algebra(spec)
    mu = [mu_of(b) for b in s3.family_basis(spec)]
    problems = []
    if not alg.is_commutative():
        problems.append("not commutative")
    if not alg.is_associative():
        problems.append("not associative")
    if not alg.is_unit(alg.index("haar")):
        problems.append("haar is not the unit")
    if not s3.character_check(alg, mu):
        problems.append("mu is not a character")
    if s3.chi_ideal_failures(alg, "chi", mu):
        problems.append("chi does not span a nilpotent ideal")
    return _fail("; ".join(problems), table=alg.to_json()) if problems else None


# S^3 tables


def check_s3_identities(spec, gen):
    failed = [name for name, ok in s3.verification_checks() if not ok]
    return _fail("; ".join(failed)) if failed else None


PROPERTIES = (
    Property("scalar_field_laws", "algebra", check_scalar_laws),
    Property("hodge_round_trip", "algebra", check_hodge_round_trip, exhaustive=True),
    Property("jacobi", "lie", check_jacobi, exhaustive=True),
    Property("boundary_squared", "lie", check_boundary_squared, exhaustive=True),
    Property("coboundary_hodge", "lie", check_coboundary_hodge, unimodular=True, exhaustive=True),
    Property("leibniz", "lie", check_leibniz, exhaustive=True),
    Property("d_sphere_squared", "forms", check_d_sphere_squared),
    Property("basic_invariants", "forms", check_basic_invariants),
    Property("tilde_round_trip", "forms", check_tilde_round_trip),
    Property("d_total_squared", "forms", check_d_total_squared),
    Property("tilde_commuting_square", "forms", check_commuting_square, unimodular=True),
    Property("closedness_criterion", "forms", check_closedness_criterion, unimodular=True),
    Property("stokes", "forms", check_stokes),
    Property("unit_laws", "convolution", check_unit_laws, unimodular=True),
    Property("associativity", "convolution", check_associativity, unimodular=True),
    Property("lowest_term", "convolution", check_lowest_term, unimodular=True),
    Property("filtration", "convolution", check_filtration, unimodular=True),
    Property("abelian_reduction", "convolution", check_abelian_reduction, unimodular=True),
    Property("bi_invariance", "convolution", check_bi_invariance, unimodular=True),
    Property("mu_multiplicative", "convolution", check_mu_multiplicative, unimodular=True),
    Property("primitive", "valuations", check_primitive, unimodular=True),
    Property("well_defined", "valuations", check_well_defined, unimodular=True),
    Property("haar_unit", "valuations", check_haar_unit, unimodular=True),
    Property("euler_laws", "valuations", check_euler_laws, unimodular=True),
    Property("mu_character", "valuations", check_mu_character, unimodular=True),
    Property("valuation_associativity", "valuations", check_valuation_associativity,
             unimodular=True),
    Property("chi_nilpotent", "valuations", check_chi_nilpotent, unimodular=True,
             exhaustive=True),
    Property("family_algebra", "valuations", check_family_algebra, unimodular=True,
             exhaustive=True),
    Property("s3_identities", "s3", check_s3_identities, exhaustive=True),
)


def _skip_reason(prop, spec, unimodular):
    if prop.unimodular and not unimodular:
        return "requires unimodular"
    if prop.name == "abelian_reduction" and spec.brackets:
        return "requires an abelian spec"
    if prop.name in ("euler_laws", "valuation_associativity") and spec.brackets \
            and not _is_so3(spec):
        return f"no invariant valuation family for {spec.name}"
    if prop.name == "bi_invariance" and spec.brackets and not _is_so3(spec):
        return "no invariant form generator for this spec"
    if prop.name == "family_algebra" and not _is_so3(spec):
        return "requires so3"
    return None


def run_property(prop, spec, seeds, max_deg):
    """Returns (PropertyResultModel without timing, counterexample or None)"""
    runs = seeds[:1] if prop.exhaustive else seeds
    uncounted = 0
    for index, trial_seed in enumerate(runs):
        gen = FormGenerator(make_rng(trial_seed), max_deg=max_deg)
        logger.debug("%s trial %d seed %d", prop.name, index, trial_seed)
        try:
            failure = prop.check(spec, gen)
        except ValconvError as e:
            failure = {"detail": f"{type(e).__name__}: {e}"}
        if failure == UNCOUNTED:
            uncounted += 1
            continue
        if failure is not None:
            counterexample = {"property": prop.name, "trial": index, "trial_seed": trial_seed,
                              **failure}
            return PropertyResultModel(name=prop.name, area=prop.area, status="fail",
                                       trials=index + 1, detail=failure["detail"],
                                       counterexample=counterexample), counterexample
    detail = f"{uncounted} of {len(runs)} trials uncounted" if uncounted else None
    return PropertyResultModel(name=prop.name, area=prop.area, status="pass",
                               trials=len(runs) - uncounted, detail=detail), None


def run_suite(spec, seed, trials, max_deg, only=None, timings=False, report_dir=None,
              suite_name="valconv"):
    """Run every selected property; write a counterexample file on failure"""
    if trials < 1:
        raise InputError(f"--trials must be at least 1, got {trials}")
    areas = set(only or AREAS)
    unknown = areas - set(AREAS)
    if unknown:
        raise InputError(f"unknown suite areas {sorted(unknown)}; choose from {list(AREAS)}")
    unimodular = is_unimodular(spec).unimodular
    seeds = child_seeds(seed, trials)
    logger.info("suite %s on %s: seed %d, %d trials", suite_name, spec.name, seed, trials)
    started = time.perf_counter()
    results = []
    counterexamples = []
    for prop in sorted(PROPERTIES, key=lambda p: (AREAS.index(p.area), p.name)):
        if prop.area not in areas:
            continue
        reason = _skip_reason(prop, spec, unimodular)
        if reason:
            results.append(PropertyResultModel(name=prop.name, area=prop.area, status="skip",
                                               detail=reason))
            continue
        t0 = time.perf_counter()
        result, counterexample = run_property(prop, spec, seeds, max_deg)
        if timings:
            result.seconds = round(time.perf_counter() - t0, 3)
        results.append(result)
        if counterexample:
            counterexamples.append(counterexample)
    elapsed = time.perf_counter() - started
    report = SuiteReportModel(
        suite=suite_name, spec=spec.name, seed=seed, trials=trials, max_deg=max_deg,
        passed=not counterexamples, properties=results,
        wall_time=round(elapsed, 3) if timings else None)
    path = None
    if counterexamples:
        report_dir = Path(report_dir or load_config()["suite"]["report_dir"])
        path = report_dir / f"{suite_name}-{spec.name}-{seed}-counterexample.json"
        write_json({"suite": suite_name, "spec": spec.name, "seed": seed,
                    "counterexamples": counterexamples}, path)
    logger.info("suite finished in %.2fs (%d properties)", elapsed, len(results))
    return report, path, elapsed


def report_to_json(report):
    return report.model_dump(exclude_none=True)
