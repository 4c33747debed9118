"""
Exception hierarchy for valconv
"""


class ValconvError(Exception):
    """Base class for every error raised by the package"""


class InputError(ValconvError, ValueError):
    """Malformed input: bad JSON, index sets, space or dimension mismatch"""


class JacobiError(InputError):
    """Structure constants violate the Jacobi identity"""


class DegreeError(InputError):
    """Degree or grade outside the admissible range"""


class SpecMismatchError(InputError):
    """Operands were built over different Lie algebras"""


class InvalidValuationError(ValconvError):
    """A {c, tau} pair does not describe a valid invariant valuation"""


class InvarianceError(ValconvError):
    """Strict mode: the left factor is not bi-invariant"""


class PreconditionError(ValconvError):
    """Primitive solver precondition violated"""


class SolverError(ValconvError):
    """No primitive found in any degree window"""

    def __init__(self, message, k=None, window=None):
        super().__init__(message)
        self.k = k
        self.window = window


class AlgebraError(ValconvError):
    """Invalid operation on a finite-dimensional algebra table"""
