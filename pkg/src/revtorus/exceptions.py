"""Exception hierarchy.

Every domain error carries its class name into CLI output, so the names
double as stable error codes.
"""


class RevTorusError(Exception):
    """Base class for all domain errors raised by this package."""


class NonUnimodular(RevTorusError, ValueError):
    pass


class PreconditionViolated(RevTorusError, ValueError):
    pass


class NotInvolution(RevTorusError, ValueError):
    pass


class TrivialInvolution(RevTorusError, ValueError):
    """Raised for A = +Id or A = -Id where a nontrivial involution is needed."""


class SquareOrNonpositive(RevTorusError, ValueError):
    pass


class LimitZero(RevTorusError, ValueError):
    pass


class NotHyperbolic(RevTorusError, ValueError):
    pass


class WrongOrientation(RevTorusError, ValueError):
    pass


class NotReversor(RevTorusError, ValueError):
    pass


class NotAReversiblePair(RevTorusError, ValueError):
    pass


class NoConvergence(RevTorusError, ArithmeticError):
    """Finite-time Oseledets directions did not settle.

    This is the expected outcome for maps without a hyperbolic splitting
    (zero exponents), not a failure of the harness.
    """


class NonRational(RevTorusError, TypeError):
    pass
