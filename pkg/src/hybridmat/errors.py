"""Exception types raised across the package."""


class HybridMatError(Exception):
    """Base class for all errors raised by :mod:`hybridmat`."""


class UnboundParameter(HybridMatError, LookupError):
    def __init__(self, name):
        super().__init__(f"parameter {name!r} is not bound")
        self.name = name


class NonAffineExpression(HybridMatError, ValueError):
    """A size expression would contain a product of parameters."""


class EndpointMismatch(HybridMatError, ValueError):
    """Two intervals do not share the junction endpoint required to concatenate."""


class FlavorMismatch(HybridMatError, ValueError):
    """Two interval flavors do not meet at the same side of the junction point."""


class ArityMismatch(HybridMatError, ValueError):
    pass


class ShapeMismatch(HybridMatError, ValueError):
    pass


class UndefinedTermForced(HybridMatError):
    """A term with nonzero net multiplicity was evaluated outside its domain."""

    def __init__(self, symbol, point):
        super().__init__(f"term {symbol} is undefined at {point}")
        self.symbol = symbol
        self.point = point


class DivisionByZero(HybridMatError, ZeroDivisionError):
    """A surviving factor with negative exponent evaluated to zero."""
