"""
Template bodies on S^3: a point and the great spheres S^0, ..., S^3.

Evaluations of the Euler characteristic, the intrinsic volumes mu_0..mu_3
and the Crofton valuations nu_0..nu_3 on these bodies determine linear
relations between the two bases.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from src.algebra.linalg import field_solve
from src.algebra.scalar import Scalar
from src.errors import AlgebraError

logger = logging.getLogger(__name__)

BODIES = ("point", "S0", "S1", "S2", "S3")


def unit_ball_volume(k):
    """omega_k: pi**m / m! for k = 2m, 2**(m+1) pi**m / (2m+1)!! for k = 2m+1"""
    if k < 0:
        raise AlgebraError(f"no unit ball of dimension {k}")
    m, odd = divmod(k, 2)
    if not odd:
        return Scalar.pi(m, Fraction(1, factorial(m)))
    double_factorial = factorial(2 * m + 1) // (2 ** m * factorial(m))
    return Scalar.pi(m, Fraction(2 ** (m + 1), double_factorial))


def euler_of_sphere(i):
    """chi(S^i), with S^{-1} and lower empty"""
    return 0 if i < 0 else 1 + (-1) ** i


def intrinsic_volume_of_sphere(j, i):
    """mu_j on the great sphere S^i of the unit S^3"""
    if j == i:
        return unit_ball_volume(i + 1) * (i + 1)
    if j < i and (i - j) % 2 == 0:
        return unit_ball_volume(i + 1) * unit_ball_volume(i + 1 - j).inverse() * (2 * comb(i + 1, j))
    return Scalar.zero()


@dataclass
class TemplateData:
    """values[(valuation, body)] = Scalar"""

    bodies: tuple
    values: dict = field(default_factory=dict)

    def value(self, valuation, body):
        key = (valuation, body)
        if key not in self.values:
            raise AlgebraError(f"no template value for {valuation} on {body}")
        return self.values[key]

    def valuations(self):
        return sorted({v for v, _ in self.values})

    @classmethod
    def great_spheres(cls):
        values = {}
        for body in BODIES:
            i = None if body == "point" else int(body[1:])
            values[("chi", body)] = Scalar.one() if i is None else Scalar.coerce(euler_of_sphere(i))
            for j in range(4):
                if i is None:
                    values[(f"mu{j}", body)] = Scalar.one() if j == 0 else Scalar.zero()
                else:
                    values[(f"mu{j}", body)] = intrinsic_volume_of_sphere(j, i)
            values[("nu0", body)] = values[("chi", body)]
            values[("nu1", body)] = Scalar.zero() if i is None else Scalar.coerce(euler_of_sphere(i - 1))
            values[("nu2", body)] = Scalar.zero() if i is None else Scalar.coerce(euler_of_sphere(i - 2))
            values[("nu3", body)] = values[("mu3", body)] * Scalar.pi(-2, Fraction(1, 2))
        return cls(BODIES, values)


def solve_equations(rows, rhs, unknowns):
    """Exact solution of rows . x = rhs as {unknown: Scalar}"""
    solution = field_solve([[Scalar.coerce(v) for v in row] for row in rows],
                           [Scalar.coerce(v) for v in rhs])
    return dict(zip(unknowns, solution))


def template_solve(data, target, ansatz, bodies=None):
    """Coefficients x with target = sum_a x_a * ansatz[a] on every template body"""
    bodies = bodies or data.bodies
    rows = [[data.value(a, body) for a in ansatz] for body in bodies]
    rhs = [data.value(target, body) for body in bodies]
    logger.debug("template method for %s on %s", target, list(bodies))
    return solve_equations(rows, rhs, ansatz)
