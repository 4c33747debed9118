"""
Finite-dimensional convolution algebras, with the bi-invariant valuation
algebra of S^3 in the Crofton (nu) and intrinsic-volume (mu) bases.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from src.algebra.linalg import field_det, field_inverse, field_nullspace, field_rank, solve_sparse
from src.algebra.scalar import Scalar
from src.errors import AlgebraError, InputError
from src.valuations.templates import TemplateData

logger = logging.getLogger(__name__)


def _zero_vector(dim):
    return [Scalar.zero()] * dim


class FinDimAlgebra:
    """Algebra over Q(pi) given by structure constants m_ij^k.

    table[(i, j)] is the coordinate vector of b_i * b_j. Missing pairs are zero.
    """

    def __init__(self, labels, table, unit=None):
        self.labels = tuple(labels)
        dim = len(self.labels)
        self.table = {}
        for (i, j), vector in table.items():
            if len(vector) != dim:
                raise InputError(f"product b{i}*b{j} has {len(vector)} coordinates, expected {dim}")
            self.table[(i, j)] = [Scalar.coerce(v) for v in vector]
        self.unit = unit

    @classmethod
    def from_products(cls, labels, products, symmetric=True, unit=None):
        """products: {(label_i, label_j): {label_k: Scalar}}"""
        index = {name: i for i, name in enumerate(labels)}
        table = {}
        for (a, b), combination in products.items():
            vector = _zero_vector(len(labels))
            for name, coeff in combination.items():
                vector[index[name]] = Scalar.coerce(coeff)
            table[(index[a], index[b])] = vector
            if symmetric:
                table[(index[b], index[a])] = vector
        return cls(labels, table, unit=None if unit is None else index[unit])

    @property
    def dim(self):
        return len(self.labels)

    def index(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise AlgebraError(f"unknown basis element {label!r}") from None

    def basis_vector(self, i):
        vector = _zero_vector(self.dim)
        vector[i] = Scalar.one()
        return vector

    def element(self, combination):
        """{label: Scalar} -> coordinate vector"""
        vector = _zero_vector(self.dim)
        for label, coeff in combination.items():
            vector[self.index(label)] = Scalar.coerce(coeff)
        return vector

    def product(self, i, j):
        return self.table.get((i, j), _zero_vector(self.dim))

    def multiply(self, x, y):
        out = _zero_vector(self.dim)
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, m in enumerate(self.product(i, j)):
                    if m:
                        out[k] = out[k] + ab * m
        return out

    def power(self, x, exponent):
        if exponent == 0:
            if self.unit is None:
                raise AlgebraError("x**0 needs a unital algebra")
            return self.basis_vector(self.unit)
        result = x
        for _ in range(exponent - 1):
            result = self.multiply(result, x)
        return result

    def is_commutative(self):
        return all(self.product(i, j) == self.product(j, i)
                   for i in range(self.dim) for j in range(i + 1, self.dim))

    def associativity_failures(self):
        bad = []
        for i, j, k in product(range(self.dim), repeat=3):
            left = self.multiply(self.product(i, j), self.basis_vector(k))
            right = self.multiply(self.basis_vector(i), self.product(j, k))
            if left != right:
                bad.append((self.labels[i], self.labels[j], self.labels[k]))
        return bad

    def is_associative(self):
        return not self.associativity_failures()

    def is_unit(self, i):
        return all(self.product(i, j) == self.basis_vector(j)
                   and self.product(j, i) == self.basis_vector(j) for j in range(self.dim))

    def multiplication_matrix(self, x):
        """Column j holds x * b_j"""
        columns = [self.multiply(x, self.basis_vector(j)) for j in range(self.dim)]
        return [[columns[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def transport(self, change, labels):
        """Structure constants in the basis c_i = sum_a change[i][a] b_a"""
        inverse = field_inverse(change)
        table = {}
        for i, j in product(range(self.dim), repeat=2):
            product_old = self.multiply(change[i], change[j])
            table[(i, j)] = [sum((product_old[a] * inverse[a][k] for a in range(self.dim)),
                                 Scalar.zero()) for k in range(self.dim)]
        unit = None
        if self.unit is not None:
            unit_coords = [inverse[self.unit][k] for k in range(self.dim)]
            unit = next((k for k in range(self.dim) if unit_coords == self.basis_vector(k)), None)
        return FinDimAlgebra(labels, table, unit=unit)

    def __eq__(self, other):
        if not isinstance(other, FinDimAlgebra):
            return NotImplemented
        return self.labels == other.labels and all(
            self.product(i, j) == other.product(i, j)
            for i, j in product(range(self.dim), repeat=2))

    def _format(self, vector):
        parts = [f"{coeff}*{label}" if coeff != 1 else label
                 for label, coeff in zip(self.labels, vector) if coeff]
        return " + ".join(parts) if parts else "0"

    def to_json(self):
        products = {}
        for i in range(self.dim):
            for j in range(i, self.dim):
                vector = self.product(i, j)
                products[f"{self.labels[i]}*{self.labels[j]}"] = {
                    label: _scalar_text(c) for label, c in zip(self.labels, vector) if c}
        return {"basis": list(self.labels), "products": products}

    def to_markdown(self):
        cells = [[""] + list(self.labels)]
        for i in range(self.dim):
            cells.append([self.labels[i]] + [self._format(self.product(i, j))
                                             for j in range(self.dim)])
        widths = [max(len(row[c]) for row in cells) for c in range(len(cells[0]))]
        lines = []
        for r, row in enumerate(cells):
            lines.append("| " + " | ".join(cell.ljust(w) for cell, w in zip(row, widths)) + " |")
            if r == 0:
                lines.append("|" + "|".join("-" * (w + 2) for w in widths) + "|")
        return "\n".join(lines)


def _scalar_text(value):
    return str(value.rational_value()) if value.is_rational() else value.to_json()


@dataclass(frozen=True)
class GradedInvolution:
    """Eigenvalue +1 or -1 per basis label"""

    eigenvalues: tuple

    @classmethod
    def of(cls, mapping):
        for label, sign in mapping.items():
            if sign not in (1, -1):
                raise InputError(f"eigenvalue of {label} must be +1 or -1, got {sign}")
        return cls(tuple(sorted(mapping.items())))

    def sign(self, label):
        value = dict(self.eigenvalues).get(label)
        if value is None:
            raise AlgebraError(f"basis element {label} is not graded")
        return value


# the S^3 tables

NU_LABELS = ("nu0", "nu1", "nu2", "nu3")
MU_LABELS = ("mu0", "mu1", "mu2", "mu3")
PI2_QUARTER = Scalar.pi(2, Fraction(1, 4))


def nu_table():
    products = {(f"nu{k}", "nu3"): {f"nu{k}": 1} for k in range(4)}
    products.update({
        ("nu1", "nu1"): {"nu3": 4},
        ("nu0", "nu0"): {},
        ("nu0", "nu2"): {},
        ("nu2", "nu2"): {"nu1": PI2_QUARTER, "nu3": PI2_QUARTER * -2},
        ("nu0", "nu1"): {"nu0": 2},
        ("nu1", "nu2"): {"nu0": 2, "nu2": -2},
    })
    return FinDimAlgebra.from_products(NU_LABELS, products, unit="nu3")


def mu_table():
    two_pi2 = Scalar.pi(2, 2)
    products = {(f"mu{k}", "mu3"): {f"mu{k}": two_pi2} for k in range(4)}
    products.update({
        ("mu1", "mu1"): {"mu1": Scalar.pi(1, 2), "mu3": Fraction(3, 2)},
        ("mu0", "mu0"): {},
        ("mu0", "mu2"): {},
        ("mu2", "mu2"): {"mu1": PI2_QUARTER * Scalar.pi(1, 4), "mu3": PI2_QUARTER * -6},
        ("mu0", "mu1"): {"mu0": Scalar.pi(1, 3)},
        ("mu1", "mu2"): {"mu0": Scalar.pi(2, 4), "mu2": Scalar.pi(1, -1)},
    })
    return FinDimAlgebra.from_products(MU_LABELS, products)


def basis_change():
    """Rows express mu_0..mu_3 in the nu basis"""
    z = Scalar.zero()
    return [
        [Scalar.one(), z, z, z],
        [z, Scalar.pi(1), z, Scalar.pi(1)],
        [z, z, Scalar.pi(1, 2), z],
        [z, z, z, Scalar.pi(2, 2)],
    ]


def nu_to_mu():
    return nu_table().transport(basis_change(), MU_LABELS)


def nu_grading():
    return GradedInvolution.of({"nu0": 1, "nu1": -1, "nu2": 1, "nu3": -1})


def mu_grading():
    return GradedInvolution.of({"mu0": 1, "mu1": -1, "mu2": 1, "mu3": -1})


NU_CHARACTER = (Scalar.zero(), Scalar.coerce(2), Scalar.zero(), Scalar.one())
MU_CHARACTER = (Scalar.zero(), Scalar.pi(1, 3), Scalar.zero(), Scalar.pi(2, 2))
# nu_0 = chi is 1 on a point; the Crofton and Haar valuations vanish there
NU_POINT_EVALUATION = (Scalar.one(), Scalar.zero(), Scalar.zero(), Scalar.zero())


def basis_change_template_failures(data=None):
    """Bodies on which mu_i != sum_a change[i][a] nu_a"""
    data = data or TemplateData.great_spheres()
    change = basis_change()
    bad = []
    for i, body in product(range(4), data.bodies):
        expected = sum((change[i][a] * data.value(f"nu{a}", body) for a in range(4)),
                       Scalar.zero())
        if data.value(f"mu{i}", body) != expected:
            bad.append((f"mu{i}", body))
    return bad


# predicates


def ev_check(alg, grading, dim_group):
    """Every product b_i * b_j lies in the eigenspace (-1)**dim_group e_i e_j"""
    twist = -1 if dim_group % 2 else 1
    signs = [grading.sign(label) for label in alg.labels]
    for i, j in product(range(alg.dim), repeat=2):
        predicted = twist * signs[i] * signs[j]
        for k, coeff in enumerate(alg.product(i, j)):
            if coeff and signs[k] != predicted:
                logger.debug("%s*%s has a %s component off the predicted eigenspace",
                             alg.labels[i], alg.labels[j], alg.labels[k])
                return False
    return True


def character_check(alg, mu):
    """mu(b_i * b_j) == mu(b_i) mu(b_j) for all basis pairs"""
    mu = [Scalar.coerce(v) for v in mu]
    for i, j in product(range(alg.dim), repeat=2):
        value = sum((c * m for c, m in zip(alg.product(i, j), mu)), Scalar.zero())
        if value != mu[i] * mu[j]:
            return False
    return True


def pairing_matrix(alg, eval_at_e):
    """M_ij = (b_i * b_j)(e); returns (M, det, nonsingular)"""
    e = [Scalar.coerce(v) for v in eval_at_e]
    M = [[sum((c * v for c, v in zip(alg.product(i, j), e)), Scalar.zero())
          for j in range(alg.dim)] for i in range(alg.dim)]
    det = field_det(M)
    return M, det, bool(det)


def quotient_iso_check(alg, generator, relation):
    """Does t -> generator induce alg = Q(pi)[t]/(relation)?

    relation lists coefficients from t**0 upwards and must be monic of degree dim.
    """
    if alg.unit is None:
        raise AlgebraError("quotient check needs a unital algebra")
    if not alg.is_commutative():
        raise AlgebraError("quotient check needs a commutative algebra")
    relation = [Scalar.coerce(c) for c in relation]
    degree = len(relation) - 1
    if degree != alg.dim:
        return False
    powers = [alg.power(generator, e) for e in range(degree + 1)]
    if field_rank(powers[:degree]) != degree:
        return False
    total = _zero_vector(alg.dim)
    for coeff, vector in zip(relation, powers):
        if coeff:
            total = [t + coeff * v for t, v in zip(total, vector)]
    return all(not t for t in total)


def truncated_polynomial_algebra(m):
    """Q[t]/(t**m) on the basis 1, t, ..., t**(m-1)"""
    labels = ["1"] + [f"t{e}" if e > 1 else "t" for e in range(1, m)]
    table = {}
    for i, j in product(range(m), repeat=2):
        vector = _zero_vector(m)
        if i + j < m:
            vector[i + j] = Scalar.one()
        table[(i, j)] = vector
    return FinDimAlgebra(labels, table, unit=0)


def nilradical_basis(alg):
    """Radical of the trace form tr(L_{x y}); every basis vector is checked nilpotent"""
    if not alg.is_commutative():
        raise AlgebraError("nilradical computation needs a commutative algebra")
    traces = [[_trace(alg.multiplication_matrix(alg.product(i, j))) for j in range(alg.dim)]
              for i in range(alg.dim)]
    basis = field_nullspace(traces, alg.dim)
    for x in basis:
        if any(alg.power(x, alg.dim + 1)):
            raise AlgebraError(f"trace-form radical element {alg._format(x)} is not nilpotent")
    return basis


def _trace(matrix):
    return sum((matrix[i][i] for i in range(len(matrix))), Scalar.zero())


def nilradical_dim(alg):
    return len(nilradical_basis(alg))


def chi_ideal_failures(alg, chi_label, mu):
    """Basis elements x with chi * x != mu(x) chi"""
    c = alg.index(chi_label)
    bad = []
    for x in range(alg.dim):
        expected = [Scalar.coerce(mu[x]) if k == c else Scalar.zero() for k in range(alg.dim)]
        if alg.product(c, x) != expected:
            bad.append(alg.labels[x])
    return bad


# form-level algebra of the rotation-invariant family

FAMILY_LABELS = ("chi", "haar", "beta", "gamma")


def family_basis(spec):
    from src.valuations.valuation import so3_invariant_family

    return [
        so3_invariant_family(spec, 0, 0, 0, 1),
        so3_invariant_family(spec, 1, 0, 0, 0),
        so3_invariant_family(spec, 0, 1, 0, 0),
        so3_invariant_family(spec, 0, 0, 1, 0),
    ]


def _flatten(tau):
    out = {}
    for k, form in tau.components.items():
        for (I, V), coeff in form.terms.items():
            for alpha, value in coeff.polynomial().items():
                out[(k, I, V, alpha)] = value
    return out


def decompose(v, basis):
    """Coordinates of v in a family basis whose forms have rational coefficients"""
    columns = []
    for b in basis:
        column = {}
        for key, value in _flatten(b.tau).items():
            column[key] = value.rational_value()
        column[("c",)] = b.c.rational_value()
        columns.append(column)
    rhs = _flatten(v.tau)
    rhs[("c",)] = v.c
    solution = solve_sparse(columns, rhs)
    if solution is None:
        raise AlgebraError("product leaves the span of the family")
    return solution


def family_algebra(spec):
    """Convolution table of the so3 family, computed from forms"""
    from src.valuations.valuation import convolve_valuations

    basis = family_basis(spec)
    table = {}
    for i, j in product(range(len(basis)), repeat=2):
        table[(i, j)] = decompose(convolve_valuations(basis[i], basis[j]), basis)
        logger.debug("family product %s*%s = %s", FAMILY_LABELS[i], FAMILY_LABELS[j], table[(i, j)])
    return FinDimAlgebra(FAMILY_LABELS, table, unit=1)


def verification_checks():
    """(name, passed) for every table-level identity of the S^3 algebra"""
    nu, mu = nu_table(), mu_table()
    model = truncated_polynomial_algebra(4)
    g = nu.element({"nu2": Scalar.pi(-1)})
    _, det, regular = pairing_matrix(nu, NU_POINT_EVALUATION)
    nil_nu, nil_model = nilradical_dim(nu), nilradical_dim(model)
    return [
        ("nu table commutative and associative", nu.is_commutative() and nu.is_associative()),
        ("mu table commutative and associative", mu.is_commutative() and mu.is_associative()),
        ("nu3 is the unit", nu.is_unit(nu.index("nu3"))),
        ("basis change transports nu to mu", nu_to_mu() == mu),
        ("basis change matches template data", not basis_change_template_failures()),
        ("Euler-Verdier grading (nu)", ev_check(nu, nu_grading(), 3)),
        ("Euler-Verdier grading (mu)", ev_check(mu, mu_grading(), 3)),
        ("character (0, 2, 0, 1) on nu", character_check(nu, NU_CHARACTER)),
        ("character (0, 3pi, 0, 2pi^2) on mu", character_check(mu, MU_CHARACTER)),
        (f"pairing at a point is perfect (det {det})", regular),
        ("t -> nu2/pi gives Q[t]/(t^2 + t^4)", quotient_iso_check(nu, g, [0, 0, 1, 0, 1])),
        (f"nilradical dims {nil_nu} < {nil_model}", nil_nu < nil_model),
        ("chi spans a nilpotent ideal", not chi_ideal_failures(nu, "nu0", NU_CHARACTER)),
    ]
