"""
Convolution of bigraded invariant forms.

On tilde components the product is

    (tau~ * zeta~)_j = sum_{k+l >= j} eps(p, q, k, l, j) S_{k+l-j}(tau~_k, zeta~_l)

with S_r(a, b) = sum over r-subsets K of iota_{e_K#} a ^ iota_{e*_K} b, where
e_i# is the coadjoint field of e_i acting on the sphere slot and e*_i contracts
the value slot. The result has degree p + q - n.
"""
import logging
from itertools import combinations

from src.algebra.exterior import DUAL, PRIMAL, contract_blade
from src.algebra.lie import coadjoint_field
from src.algebra.scalar import Scalar
from src.forms.basic import BasicForm
from src.forms.bigraded import BigradedForm, as_tilde, component_range, untilde
from src.forms.coefficients import SphereCoefficient
from src.errors import DegreeError, InvalidValuationError, InvarianceError, SpecMismatchError

logger = logging.getLogger(__name__)


def epsilon_sign(p, q, k, l, j, n):
    """(-1)^((n+q)(n+p+l+j) + k(l+j+1))"""
    exponent = (n + q) * (n + p + l + j) + k * (l + j + 1)
    return -1 if exponent % 2 else 1


def coadjoint_fields(spec):
    return [coadjoint_field(spec, i) for i in range(1, spec.n + 1)]


def _contract_values(form, K):
    """iota_{e*_{k1}} o ... o iota_{e*_{kr}} on primal values"""
    for i in reversed(K):
        form = form.map_values(lambda V, i=i: dict([_signed(contract_blade(i, V))])
                               if i in V else {})
    return form


def _signed(sign_rest):
    sign, rest = sign_rest
    return rest, sign


def hat_S(r, tau_k, zeta_l, spec, fields=None):
    """S_r(tau~_k (x) zeta~_l) on primal-valued basic forms"""
    n = spec.n
    if tau_k.n != n or zeta_l.n != n:
        raise SpecMismatchError(f"forms of dimension {tau_k.n}/{zeta_l.n} over {spec.name}")
    out_degree = tau_k.degree - r + zeta_l.degree
    if r < 0 or r > tau_k.degree or out_degree > n:
        return BasicForm.zero(n, max(0, min(out_degree, n)), PRIMAL)
    if r == 0:
        return tau_k.wedge(zeta_l)
    fields = fields if fields is not None else coadjoint_fields(spec)
    if all(f.is_zero() for f in fields):
        return BasicForm.zero(n, out_degree, PRIMAL)
    total = BasicForm.zero(n, out_degree, PRIMAL)
    for K in combinations(range(1, n + 1), r):
        if any(fields[i - 1].is_zero() for i in K):
            continue
        left = tau_k
        for i in reversed(K):
            left = left.contract_field(fields[i - 1])
            if not left:
                break
        if not left:
            continue
        right = _contract_values(zeta_l, K)
        if not right:
            continue
        total = total + left.wedge(right)
    return total


def unit_form(spec):
    """The degree-n form whose only component is tau_0 = e*_[n] (x) e_[n]"""
    n = spec.n
    full = tuple(range(1, n + 1))
    tau0 = BasicForm(n, 0, DUAL, {((), full): SphereCoefficient.constant(n, 1)})
    return BigradedForm(spec, n, DUAL, {0: tau0})


def invariance_defect(tau):
    """First (i, k) with L_{e_i#} tau~_k != ad_{e_i} . tau~_k, or None"""
    spec = tau.spec
    tt = as_tilde(tau)
    for i, field in enumerate(coadjoint_fields(spec), start=1):
        for k, form in sorted(tt.components.items()):
            lie = form.lie_derivative(field) if not field.is_zero() \
                else BasicForm.zero(spec.n, k, PRIMAL)
            action = form.map_values(lambda V, i=i: spec.ad_blade(i, V))
            if lie != action:
                return i, k
    return None


def is_ad_invariant(tau):
    return invariance_defect(tau) is None


def convolve_forms(tau, zeta, strict=False):
    """tau * zeta for dual-valued forms of degrees p, q; degree p + q - n"""
    if tau.spec != zeta.spec:
        raise SpecMismatchError(f"cannot convolve forms over {tau.spec.name} and {zeta.spec.name}")
    spec = tau.spec
    n, p, q = spec.n, tau.degree, zeta.degree
    s = p + q - n
    if s < 0:
        raise DegreeError(f"degree underflow: {p} + {q} < n = {n}; the product vanishes")
    if s > 2 * n - 1:
        raise DegreeError(f"degree {s} exceeds {2 * n - 1}; the product vanishes")
    if strict and not is_ad_invariant(tau):
        raise InvarianceError(f"left factor is not bi-invariant (defect {invariance_defect(tau)})")
    tt, zt = as_tilde(tau), as_tilde(zeta)
    fields = coadjoint_fields(spec)
    out = {}
    for j in component_range(n, s):
        part = BasicForm.zero(n, j, PRIMAL)
        for k, tk in tt.components.items():
            for l, zl in zt.components.items():
                r = k + l - j
                if r < 0:
                    continue
                term = hat_S(r, tk, zl, spec, fields)
                if term:
                    part = part + term if epsilon_sign(p, q, k, l, j, n) > 0 else part - term
        if part:
            out[j] = part
    logger.debug("convolved degree %d and %d over %s", p, q, spec.name)
    result = BigradedForm(spec, s, PRIMAL, out)
    return untilde(result)


def lowest_term(tau, zeta):
    """(j, expected) with j = kmax + lmax and expected = eps * tau~_kmax ^ zeta~_lmax"""
    tt, zt = as_tilde(tau), as_tilde(zeta)
    kmax, lmax = tt.max_sphere_degree(), zt.max_sphere_degree()
    if kmax is None or lmax is None:
        return None, None
    n = tau.n
    j = kmax + lmax
    product = tt.components[kmax].wedge(zt.components[lmax])
    if epsilon_sign(tau.degree, zeta.degree, kmax, lmax, j, n) < 0:
        product = -product
    return j, product


def mu_component(tau):
    """Constant value of tau~_0 for a degree-n form"""
    if tau.degree != tau.n:
        raise DegreeError(f"mu is defined on degree-{tau.n} forms, got {tau.degree}")
    tt = as_tilde(tau)
    form = tt.components.get(0)
    if form is None:
        return Scalar.zero()
    coeff = form.terms.get(((), ()))
    if len(form.terms) != 1 or coeff is None or not coeff.is_constant():
        raise InvalidValuationError("tau~_0 is not constant; the form is not closed")
    return coeff.constant_value()
