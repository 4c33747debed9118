"""
Primitive construction for closed invariant n-forms.

Given a closed degree-n form tau with zero top-sphere integral, find an
(n-1)-form omega with d_total(omega) = tau - tau_0 and vanishing
push-forward. On tilde components this means omega~_{n-1} = 0 and, going
down in sphere degree,

    d omega~_k = tau~_{k+1} - boundary(omega~_{k+1}),   k = n-2, ..., 0,

each step an exact linear system over basic forms whose coefficients have
bounded polynomial degree.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from src.algebra.exterior import PRIMAL, blades
from src.config import load_config
from src.forms.basic import BasicForm
from src.forms.bigraded import (
    BigradedForm, as_tilde, boundary_values, closedness_defects, tilde_d_total, untilde,
)
from src.forms.coefficients import SphereCoefficient
from src.algebra.linalg import solve_sparse
from src.errors import DegreeError, PreconditionError, SolverError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrimitivePair:
    """omega with d_total(omega) = tau - tau_0, and the certified residual (zero)"""

    omega: BigradedForm
    residual: BigradedForm
    window: int = 0


def reduced_exponents(n, max_degree):
    """Exponent vectors with |alpha| <= max_degree and alpha_n <= 1"""
    out = []
    for alpha in product(range(max_degree + 1), repeat=n):
        if sum(alpha) <= max_degree and alpha[-1] <= 1:
            out.append(alpha)
    return out


def ansatz_element(n, k, alpha, J, V):
    """xi**alpha r**(-|alpha|-k-1) iota_E(dxi_J) (x) e_V, a basic k-form"""
    terms = {}
    for pos, j in enumerate(J):
        exponent = list(alpha)
        exponent[j - 1] += 1
        coeff = SphereCoefficient.from_scalar(n, -1 if pos % 2 else 1, -k, exponent)
        key = (J[:pos] + J[pos + 1:], tuple(V))
        terms[key] = terms[key] + coeff if key in terms else coeff
    return BasicForm(n, k, PRIMAL, terms)


def _rows(form):
    """Flatten a basic form into {(I, V, alpha): Scalar}"""
    out = {}
    for (I, V), coeff in form.terms.items():
        for alpha, value in coeff.polynomial().items():
            out[(I, V, alpha)] = value
    return out


@lru_cache(maxsize=None)
def _derivative_rows(n, k, alpha, J):
    """Rows of d(ansatz_element) with the value blade left out"""
    out = []
    for (I, _), coeff in ansatz_element(n, k, alpha, J, ()).d().terms.items():
        for (beta, m), q in coeff.rational_terms().items():
            if m:
                raise SolverError("ansatz elements must have rational coefficients")
            out.append(((I, beta), q))
    return tuple(out)


def solve_sphere_step(target, k, window, reverse=False):
    """Some basic k-form w with d w = target, coefficient degree <= window, or None"""
    n = target.n
    values = sorted({V for (_, V) in target.terms})
    basis = []
    columns = []
    for V in values:
        for J in blades(n, k + 1):
            for alpha in reduced_exponents(n, window):
                basis.append((alpha, J, V))
                columns.append({(I, V, beta): q for (I, beta), q in _derivative_rows(n, k, alpha, J)})
    logger.debug("sphere degree %d: %d unknowns at window %d", k, len(basis), window)
    solution = solve_sparse(columns, _rows(target), reverse=reverse)
    if solution is None:
        return None
    result = BasicForm.zero(n, k, PRIMAL)
    for x, (alpha, J, V) in zip(solution, basis):
        if x:
            result = result + ansatz_element(n, k, alpha, J, V).scale(x)
    return result


def check_preconditions(tau):
    n = tau.n
    if tau.degree != n:
        raise DegreeError(f"primitives are built for degree-{n} forms, got {tau.degree}")
    bad = closedness_defects(tau)
    if bad:
        raise PreconditionError(f"form is not closed (sphere degrees {bad})")
    top = as_tilde(tau).components.get(n - 1)
    if top is not None and n > 1:
        integrals = top.integrate_values()
        if integrals:
            raise PreconditionError(
                f"top sphere component integrates to {dict(sorted(integrals.items()))}, not 0")


def find_primitive(tau, window=None, reverse=False, config=None):
    """Primitive omega of tau - tau_0 with omega~_{n-1} = 0; raises SolverError when
    every degree window fails"""
    config = config or load_config()
    solver = config["solver"]
    check_preconditions(tau)
    spec, n = tau.spec, tau.n
    tt = as_tilde(tau)
    base = window if window is not None else tt.coefficient_degree() + solver["window_margin"]
    windows = [base + i * solver["escalation_step"] for i in range(solver["escalations"] + 1)]

    omega = {}
    above = BasicForm.zero(n, n - 1, PRIMAL)
    for k in range(n - 2, -1, -1):
        target = tt.component(k + 1)
        if above:
            target = target - boundary_values(spec, above)
        if not target:
            above = BasicForm.zero(n, k, PRIMAL)
            continue
        step = None
        for D in windows:
            step = solve_sphere_step(target, k, D, reverse=reverse)
            if step is not None:
                break
            logger.debug("no primitive at sphere degree %d in window %d, escalating", k, D)
        if step is None:
            raise SolverError(f"no primitive at sphere degree {k} within window {windows[-1]}",
                              k=k, window=windows[-1])
        omega[k] = step
        above = step

    omega_tilde = BigradedForm(spec, n - 1, PRIMAL, omega)
    tau_tilde_rest = BigradedForm(spec, n, PRIMAL,
                                  {k: f for k, f in tt.components.items() if k != 0})
    residual = untilde(tau_tilde_rest - tilde_d_total(omega_tilde))
    if not residual.is_zero():
        raise SolverError(f"primitive residual does not vanish: {residual!r}")
    return PrimitivePair(untilde(omega_tilde), residual, windows[0])
