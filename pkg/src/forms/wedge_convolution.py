"""
Reference convolution for abelian Lie algebras, computed as a wedge product.

Translation-invariant forms on R^n x S^{n-1} are convolved by

    tau * zeta = *_1^{-1}(*_1 tau ^' *_1 zeta)

where *_1 applies the Hodge star to the translation factor and ^' is the
wedge product of forms written translation-part first. This module works
only with dual-valued components. It never touches the tilde side, so the
convolution module can be checked against it.
"""
import logging
from math import comb

from src.algebra.exterior import DUAL, complement, perm_sign, wedge_blades
from src.forms.basic import BasicForm, _add_into
from src.forms.bigraded import BigradedForm, as_dual
from src.errors import DegreeError, InputError, SpecMismatchError

logger = logging.getLogger(__name__)


def _parity(exponent):
    return -1 if exponent % 2 else 1


def _honest_terms(tau):
    """Rewrite kappa (x) gamma as gamma ^ kappa: {(G, K): coeff}"""
    out = {}
    for form in as_dual(tau).components.values():
        for (I, V), c in form.terms.items():
            out[(V, I)] = c if _parity(len(I) * len(V)) > 0 else -c
    return out


def star_one(terms, n):
    """*_1 on honest terms: (gamma ^ kappa) -> (-1)^C(n-|gamma|, 2) (*gamma) ^ kappa"""
    out = {}
    for (G, K), c in terms.items():
        Gc = complement(G, n)
        sign = perm_sign(G, Gc) * _parity(comb(n - len(G), 2))
        _add_into(out, (Gc, K), c if sign > 0 else -c)
    return out


def star_one_inverse(terms, n):
    out = {}
    for (G, K), c in terms.items():
        Gc = complement(G, n)
        sign = perm_sign(Gc, G) * _parity(comb(len(G), 2))
        _add_into(out, (Gc, K), c if sign > 0 else -c)
    return out


def honest_wedge(left, right, n):
    """(g1 ^ k1) ^ (g2 ^ k2) = (-1)^(|k1||g2|) (g1 ^ g2) ^ (k1 ^ k2)"""
    out = {}
    for (G1, K1), c1 in left.items():
        for (G2, K2), c2 in right.items():
            if len(K1) + len(K2) > n - 1:
                continue
            s_g, G = wedge_blades(G1, G2)
            if not s_g:
                continue
            s_k, K = wedge_blades(K1, K2)
            if not s_k:
                continue
            sign = s_g * s_k * _parity(len(K1) * len(G2))
            product = c1 * c2
            _add_into(out, (G, K), product if sign > 0 else -product)
    return out


def wedge_convolve(tau, zeta):
    """Wedge-product convolution of dual-valued forms over an abelian spec"""
    if tau.spec != zeta.spec:
        raise SpecMismatchError(f"cannot convolve forms over {tau.spec.name} and {zeta.spec.name}")
    spec = tau.spec
    if spec.brackets:
        raise InputError(f"the wedge-product convolution needs an abelian spec, got {spec.name}")
    n = spec.n
    s = tau.degree + zeta.degree - n
    if not 0 <= s <= 2 * n - 1:
        raise DegreeError(f"degree {s} out of range 0..{2 * n - 1}")
    product = honest_wedge(star_one(_honest_terms(tau), n), star_one(_honest_terms(zeta), n), n)
    components = {}
    for (G, K), c in star_one_inverse(product, n).items():
        sign = _parity(len(K) * len(G))
        bucket = components.setdefault(len(K), {})
        _add_into(bucket, (K, G), c if sign > 0 else -c)
    logger.debug("wedge-product convolution of degrees %d and %d", tau.degree, zeta.degree)
    return BigradedForm(spec, s, DUAL, {
        k: BasicForm(n, k, DUAL, terms) for k, terms in components.items() if terms})
