"""Exception types raised across the package."""


class HyperPoincareError(Exception):
    """Base class for all errors raised here."""


class NotGCM(HyperPoincareError, ValueError):
    """Input matrix is not a generalized Cartan matrix."""


class Disconnected(HyperPoincareError, ValueError):
    """Dynkin diagram has more than one connected component."""


class Singular(HyperPoincareError, ArithmeticError):
    """Cartan matrix has zero determinant."""


class UnknownType(HyperPoincareError, ValueError):
    """Unrecognised finite or affine type name."""


class NonUnitConstant(HyperPoincareError, ArithmeticError):
    """Series divisor does not have constant term +1 or -1."""


class GuardExceedsTruncation(HyperPoincareError, ValueError):
    pass


class TruncationTooShallow(HyperPoincareError, ValueError):
    """Not enough coefficients to decide polynomiality of a denominator."""


class NegativeCoefficient(HyperPoincareError, ArithmeticError):
    """A quotient series that should count coset representatives went negative."""

    def __init__(self, order, value):
        super().__init__(f"negative coefficient {value} at order {order}")
        self.order = order
        self.value = value


class LevelNotEnumerated(HyperPoincareError, ValueError):
    pass


class NotFinite(HyperPoincareError, ValueError):
    """Enumeration hit its depth cap without the frontier emptying."""


class BudgetExceeded(HyperPoincareError, MemoryError):
    """Frontier grew beyond the configured element or byte budget."""


class Mismatch(HyperPoincareError, AssertionError):
    """Two routes to the same coefficient disagree."""

    def __init__(self, order, expected, got, what="coefficient"):
        super().__init__(f"{what} mismatch at order {order}: expected {expected}, got {got}")
        self.order = order
        self.expected = expected
        self.got = got


class SchemaError(HyperPoincareError, ValueError):
    """Malformed algebra definition or catalog override file."""
