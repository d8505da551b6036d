"""Exception hierarchy shared by all modules.

Every error raised on purpose by the library derives from
:class:`MultboundError`; the CLI maps these to exit code 1.
"""


class MultboundError(Exception):
    """Base class for library errors."""


class DimensionMismatch(MultboundError, ValueError):
    pass


class ZeroPolynomialError(MultboundError, ValueError):
    pass


class LaurentError(MultboundError, ValueError):
    """A non-Laurent (ordinary) polynomial was required."""


class ParseError(MultboundError, ValueError):
    pass


class GuardError(MultboundError, ValueError):
    """A desk-scale guard (dimension or box size) was exceeded."""


class PolytopeError(MultboundError, ValueError):
    pass


class SeriesError(MultboundError, ArithmeticError):
    pass


class SingularPointError(SeriesError):
    pass


class ResonanceError(SeriesError):
    def __init__(self, k, message=None):
        self.k = k
        super().__init__(message or f"resonance at order k={k}: k*I - J is singular")


class InconsistentBasePoint(SeriesError):
    pass


class PreconditionError(MultboundError, ValueError):
    pass


class CapExhausted(MultboundError, RuntimeError):
    pass


class BoundInputError(MultboundError, ValueError):
    pass


class TruncationReached(SeriesError):
    """A coefficient beyond a germ's stored truncation order was requested."""

    def __init__(self, order):
        self.order = order
        super().__init__(f"germ is only known to order {order}")
