"""
Invariant valuations as {c, tau} pairs and their convolution.

c is a constant and tau a closed vertical form of degree n with zero
top-sphere integral. The convolution is

    phi * psi = {c_phi mu(psi) + pi_*(tau_phi * omega_psi), tau_phi * tau_psi}

with omega_psi a primitive of psi whose push-forward equals c_psi.
"""
import logging
from dataclasses import dataclass, field

from src.algebra.exterior import PRIMAL
from src.algebra.scalar import Scalar
from src.forms.basic import euler_volume_form
from src.forms.bigraded import (
    BigradedForm, as_dual, as_tilde, closedness_defects, untilde, verticality_witness,
)
from src.forms.coefficients import sphere_moment
from src.forms.convolution import convolve_forms, mu_component, unit_form
from src.forms.generators import intrinsic_form, so3_family_form
from src.errors import (
    DegreeError, InvalidValuationError, PreconditionError, SolverError, SpecMismatchError,
)
from src.valuations.primitive import find_primitive

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InvariantValuation:
    c: Scalar
    tau: BigradedForm

    def __post_init__(self):
        object.__setattr__(self, "c", Scalar.coerce(self.c))
        if self.tau.degree != self.tau.n:
            raise DegreeError(f"valuation forms have degree n={self.tau.n}, got {self.tau.degree}")
        object.__setattr__(self, "tau", as_dual(self.tau))

    @property
    def spec(self):
        return self.tau.spec

    def _check(self, other):
        if self.spec != other.spec:
            raise SpecMismatchError(f"valuations over {self.spec.name} and {other.spec.name}")

    def __add__(self, other):
        self._check(other)
        return InvariantValuation(self.c + other.c, self.tau + other.tau)

    def __neg__(self):
        return InvariantValuation(-self.c, -self.tau)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        factor = Scalar.coerce(factor)
        return InvariantValuation(self.c * factor, self.tau.scale(factor))

    def __rmul__(self, factor):
        return self.scale(factor)


@dataclass
class ValidationReport:
    checks: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(self.checks.values())

    def failures(self):
        return sorted(name for name, ok in self.checks.items() if not ok)


def validate(v, window=None):
    """Run the verticality, closedness, top-integral and primitive checks"""
    report = ValidationReport()
    tau = v.tau
    witness = verticality_witness(tau)
    report.checks["vertical"] = witness is None
    if witness is not None:
        report.details["vertical"] = f"sphere degree {witness[0]}, term {witness[1]}"
    bad = closedness_defects(tau)
    report.checks["closed"] = not bad
    if bad:
        report.details["closed"] = f"sphere degrees {bad}"
    n = tau.n
    top = as_tilde(tau).components.get(n - 1) if n > 1 else None
    integrals = top.integrate_values() if top is not None else {}
    report.checks["top_integral"] = not integrals
    if integrals:
        report.details["top_integral"] = {str(V): str(s) for V, s in sorted(integrals.items())}
    if report.checks["closed"] and report.checks["top_integral"]:
        try:
            find_primitive(tau, window=window)
            report.checks["primitive"] = True
        except (SolverError, PreconditionError) as e:
            report.checks["primitive"] = False
            report.details["primitive"] = str(e)
    else:
        report.checks["primitive"] = False
        report.details["primitive"] = "skipped: preconditions fail"
    logger.debug("validation of %s-valuation: %s", v.spec.name, report.checks)
    return report


def mu_of(v):
    """Haar coefficient of v (probability normalization)"""
    return mu_component(v.tau)


def haar(spec):
    return InvariantValuation(Scalar.zero(), unit_form(spec))


def euler_characteristic(spec):
    return InvariantValuation(Scalar.one(), BigradedForm.zero(spec, spec.n))


def zero_valuation(spec):
    return InvariantValuation(Scalar.zero(), BigradedForm.zero(spec, spec.n))


def euler_primitive(spec):
    """(n-1)-form with omega~_{n-1} = vol_S / |S^{n-1}| (x) e_[n]; pushes forward to 1"""
    n = spec.n
    area = sphere_moment((0,) * n)
    full = tuple(range(1, n + 1))
    top = euler_volume_form(n, PRIMAL, full).scale(area.inverse())
    return untilde(BigradedForm(spec, n - 1, PRIMAL, {n - 1: top}))


def push_forward(omega):
    """pi_* of a dual-valued (n-1)-form: integral of its scalar-valued top component"""
    n = omega.n
    if omega.degree != n - 1:
        raise DegreeError(f"push-forward of a degree-{omega.degree} form; expected {n - 1}")
    top = as_dual(omega).components.get(n - 1)
    if top is None:
        return Scalar.zero()
    return top.integrate_values().get((), Scalar.zero())


def convolve_valuations(phi, psi, strict=False, window=None, reverse=False):
    """phi * psi for a bi-invariant phi"""
    phi._check(psi)
    spec = phi.spec
    primitive = find_primitive(psi.tau, window=window, reverse=reverse)
    omega = primitive.omega
    if psi.c:
        omega = omega + euler_primitive(spec).scale(psi.c)
    correction = push_forward(convolve_forms(phi.tau, omega, strict=strict))
    c = phi.c * mu_of(psi) + correction
    tau = convolve_forms(phi.tau, psi.tau, strict=strict)
    logger.debug("convolved valuations over %s: c = %s", spec.name, c)
    return InvariantValuation(c, tau)


def so3_invariant_family(spec, a, b, b2, c):
    """Bi-invariant valuation {c, tau} on so3 with tau~ = a + b beta + b2 (gamma + 2 vol_S *xi / r)"""
    return InvariantValuation(c, so3_family_form(spec, a, b, b2))


def intrinsic_family(spec, coeffs, c):
    """Translation-invariant valuation on an abelian spec with tau~ = sum_k a_k beta**k / k!"""
    return InvariantValuation(c, intrinsic_form(spec, coeffs))


def require_valid(v):
    report = validate(v)
    if not report.passed:
        raise InvalidValuationError(f"invalid valuation: failing checks {report.failures()}")
    return v
