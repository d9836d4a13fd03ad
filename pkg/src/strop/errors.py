"""Exception types shared across the package.

Every error raised on a contract violation subclasses StropError, so callers
can catch one type at the workbench boundary.
"""


class StropError(Exception):
    pass


class ParseError(StropError):
    """Malformed description file or scalar literal."""


class NonSimplicialInput(StropError):
    """Facet list with repeated vertices or vertices out of range."""


class NotPure(StropError):
    """Maximal simplices of unequal dimension where purity is required."""


class NotOrientable(StropError):
    """No +-1 top-cycle exists over the requested ring."""


class MismatchedComplex(StropError):
    """Operands built over different simplicial complexes."""


class IntegerRingNotSupported(StropError):
    """Field-only operation invoked over the integers."""


class CompositeNotZero(StropError):
    """Consecutive differentials failed to compose to zero."""


class DegreeOutOfWindow(StropError):
    """Requested total degree (or arity) not covered by the window."""


class MismatchedWindow(StropError):
    """Operands built over different Hochschild windows."""


class WindowTooSmall(StropError):
    """Requested degrees provably need a larger tensor-length bound."""

    def __init__(self, message, degree=None, needed=None):
        super().__init__(message)
        self.degree = degree
        self.needed = needed


class InvalidCactus(StropError):
    """Operation invoked on a configuration that fails validation."""


class ArityMismatch(StropError):
    """Composition arity does not match the number of supplied inputs."""


class OracleScaleExceeded(StropError):
    """Brute-force comparison requested beyond its size bounds."""
