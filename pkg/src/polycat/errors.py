"""Exception and warning types raised across polycat."""


class PolycatError(Exception):
    """Base class for all polycat errors."""


class DomainError(PolycatError, ValueError):
    """A Gaussian parameter lies outside the region where the integral converges."""


class RangeError(PolycatError, ValueError):
    """A group index (order, representation label, element index) is out of range."""


class DegenerateState(PolycatError):
    """The symmetric projection of the seed state vanishes.

    Attributes
    ----------
    lam : int or None
        Offending irreducible-representation label, when known.
    gram_sum : float
        The Gram double sum that fell below threshold.
    """

    def __init__(self, message, lam=None, gram_sum=0.0):
        super().__init__(message)
        self.lam = lam
        self.gram_sum = gram_sum


class ConsistencyError(PolycatError):
    """A closed form produced a value that violates a physical identity."""


class ConvergenceError(PolycatError):
    """Adaptive quadrature ran out of budget before meeting its tolerance."""


class NumericalInstability(PolycatError):
    """A closed-form denominator is too close to zero to evaluate reliably."""


class ParseError(PolycatError, ValueError):
    """Malformed scenario text."""


class ValidationError(PolycatError, ValueError):
    """Scenario text parsed, but its values violate an invariant."""


class BoundaryWarning(UserWarning):
    """A finite evaluation window clips a non-negligible part of the distribution."""
