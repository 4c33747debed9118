"""
Left-invariant forms on the cosphere bundle, decomposed by sphere degree.

A BigradedForm of total degree p over a Lie algebra of dimension n stores
components tau_k (sphere degree k). Dual-valued components take values in
Lambda^{p-k} g* (x) e_[n]; their tilde images take values in Lambda^{n-p+k} g.
"""
import logging

from src.algebra.exterior import DUAL, PRIMAL, hodge_blade, hodge_inverse_blade
from src.forms.basic import BasicForm
from src.errors import DegreeError, InputError, SpecMismatchError

logger = logging.getLogger(__name__)


def component_range(n, p):
    """Sphere degrees k carried by a degree-p form"""
    return range(max(0, p - n), min(p, n - 1) + 1)


def value_grade(n, p, k, space):
    return p - k if space == DUAL else n - p + k


class BigradedForm:
    __slots__ = ("spec", "degree", "space", "components")

    def __init__(self, spec, degree, space, components=None):
        if space not in (DUAL, PRIMAL):
            raise InputError(f"bigraded forms are dual- or primal-valued, got {space!r}")
        n = spec.n
        if not 0 <= degree <= 2 * n - 1:
            raise DegreeError(f"degree {degree} out of range 0..{2 * n - 1}")
        self.spec = spec
        self.degree = degree
        self.space = space
        self.components = {}
        allowed = component_range(n, degree)
        for k, form in (components or {}).items():
            if form is None or form.is_zero():
                continue
            if k not in allowed:
                raise DegreeError(f"degree-{degree} form has no sphere-degree-{k} component")
            if form.degree != k or form.n != n:
                raise DegreeError(f"component {k} has sphere degree {form.degree}")
            grade = value_grade(n, degree, k, space)
            if any(g != grade for g in form.value_grades()):
                raise DegreeError(
                    f"component {k} must take values of grade {grade}, got {form.value_grades()}")
            self.components[k] = form if form.space == space else form.with_space(space)

    @property
    def n(self):
        return self.spec.n

    @classmethod
    def zero(cls, spec, degree, space=DUAL):
        return cls(spec, degree, space)

    def component(self, k):
        form = self.components.get(k)
        if form is None:
            return BasicForm.zero(self.n, max(0, min(k, self.n)), self.space)
        return form

    def is_zero(self):
        return not self.components

    def max_sphere_degree(self):
        return max(self.components, default=None)

    def coefficient_degree(self):
        return max((f.coefficient_degree() for f in self.components.values()), default=0)

    def check_invariants(self):
        for form in self.components.values():
            form.check_invariants()
        return True

    def _check(self, other):
        if not isinstance(other, BigradedForm):
            raise InputError(f"expected BigradedForm, got {type(other).__name__}")
        if self.spec != other.spec:
            raise SpecMismatchError(f"forms over {self.spec.name} and {other.spec.name}")
        if (self.degree, self.space) != (other.degree, other.space):
            raise DegreeError(f"cannot combine degree {self.degree}/{self.space} "
                              f"with {other.degree}/{other.space}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.components)
        for k, form in other.components.items():
            out[k] = out[k] + form if k in out else form
        return BigradedForm(self.spec, self.degree, self.space, out)

    def __neg__(self):
        return BigradedForm(self.spec, self.degree, self.space,
                            {k: -f for k, f in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        return BigradedForm(self.spec, self.degree, self.space,
                            {k: f.scale(factor) for k, f in self.components.items()})

    def __rmul__(self, factor):
        return self.scale(factor)

    def __eq__(self, other):
        if not isinstance(other, BigradedForm):
            return NotImplemented
        return (self.spec == other.spec and self.degree == other.degree
                and self.space == other.space and self.components == other.components)

    def __hash__(self):
        return hash((self.degree, self.space, frozenset(self.components.items())))

    def __repr__(self):
        body = ", ".join(f"{k}: {f!r}" for k, f in sorted(self.components.items()))
        return f"BigradedForm({self.spec.name}, p={self.degree}, {self.space}, {{{body}}})"


def tilde(tau):
    """Apply *^{-1} to every value: e*_I (x) e_[n] -> perm_sign(I^c, I) e_{I^c}"""
    if tau.space != DUAL:
        raise InputError("tilde expects a dual-valued form")
    n = tau.n
    table = lambda V: dict([_signed(hodge_inverse_blade(V, n))])
    return BigradedForm(tau.spec, tau.degree, PRIMAL,
                        {k: f.map_values(table, PRIMAL) for k, f in tau.components.items()})


def untilde(tau_tilde):
    if tau_tilde.space != PRIMAL:
        raise InputError("untilde expects a primal-valued form")
    n = tau_tilde.n
    table = lambda V: dict([_signed(hodge_blade(V, n))])
    return BigradedForm(tau_tilde.spec, tau_tilde.degree, DUAL,
                        {k: f.map_values(table, DUAL) for k, f in tau_tilde.components.items()})


def _signed(sign_blade):
    sign, blade = sign_blade
    return blade, sign


def as_tilde(tau):
    return tau if tau.space == PRIMAL else tilde(tau)


def as_dual(tau):
    return tau if tau.space == DUAL else untilde(tau)


def boundary_values(spec, form):
    """Koszul boundary applied in the value slot"""
    return form.map_values(spec.boundary_blade)


def coboundary_values(spec, form):
    return form.map_values(spec.coboundary_blade)


def d_total(tau):
    """(d tau)_k = d tau_{k-1} + (-1)^{k+1} d* tau_k on dual-valued forms"""
    if tau.space != DUAL:
        raise InputError("d_total expects a dual-valued form; use tilde_d_total on tilde forms")
    n, p = tau.n, tau.degree
    if p + 1 > 2 * n - 1:
        raise DegreeError(f"d_total of a degree-{p} form leaves the range 0..{2 * n - 1}")
    out = {}
    for k in component_range(n, p + 1):
        part = coboundary_values(tau.spec, tau.component(k)) if k in tau.components else None
        if part is not None and k % 2 == 0:
            part = -part
        if k - 1 in tau.components:
            dk = tau.components[k - 1].d()
            part = dk if part is None else dk + part
        if part is not None and part:
            out[k] = part
    return BigradedForm(tau.spec, p + 1, DUAL, out)


def tilde_d_total(tau_tilde):
    """(d~tau)_k = d tau~_{k-1} + (-1)^{n-p+1} boundary(tau~_k)"""
    if tau_tilde.space != PRIMAL:
        raise InputError("tilde_d_total expects a primal-valued form")
    n, p = tau_tilde.n, tau_tilde.degree
    if p + 1 > 2 * n - 1:
        raise DegreeError(f"tilde_d_total of a degree-{p} form leaves the range 0..{2 * n - 1}")
    negate = (n - p + 1) % 2 == 1
    out = {}
    for k in component_range(n, p + 1):
        part = boundary_values(tau_tilde.spec, tau_tilde.component(k)) \
            if k in tau_tilde.components else None
        if part is not None and negate:
            part = -part
        if k - 1 in tau_tilde.components:
            dk = tau_tilde.components[k - 1].d()
            part = dk if part is None else dk + part
        if part is not None and part:
            out[k] = part
    return BigradedForm(tau_tilde.spec, p + 1, PRIMAL, out)


def _require_top_degree(tau):
    if tau.degree != tau.n:
        raise DegreeError(f"expected a degree-{tau.n} form, got degree {tau.degree}")


def closedness_defects(tau):
    """Sphere degrees k where d tau~_{k-1} != boundary(tau~_k)"""
    _require_top_degree(tau)
    tt = as_tilde(tau)
    bad = []
    for k in range(1, tau.n):
        lhs = tt.component(k - 1).d()
        rhs = boundary_values(tau.spec, tt.component(k)) if k in tt.components \
            else BasicForm.zero(tau.n, k, PRIMAL)
        if lhs != rhs:
            bad.append(k)
    return bad


def is_closed_n_form(tau):
    return not closedness_defects(tau)


def verticality_witness(tau):
    """First (k, term) where xi ^ value does not vanish, or None"""
    _require_top_degree(tau)
    dual = as_dual(tau)
    for k, form in sorted(dual.components.items()):
        product = form.wedge_xi_values()
        if product:
            key = min(product.terms)
            return k, key
    return None


def is_vertical(tau):
    return verticality_witness(tau) is None
