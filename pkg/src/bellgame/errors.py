"""Exception types raised by the engines and the command-line front-end."""

from __future__ import annotations


class BellGameError(Exception):
    """Base class for all errors raised by this package."""


class InconsistentTable(BellGameError):
    """A utility table falls outside the symmetric, Bell-coupled family."""


class BadMixture(BellGameError):
    """Hidden-variable mixture weights are negative or do not sum to one."""


class SignAssumptionViolated(BellGameError):
    """The Bell coefficient 2*s1 - s2 - s3 is not strictly negative.

    ``value`` carries the quantity the caller asked for, evaluated anyway,
    so that boundary cases can still be reported.
    """

    def __init__(self, message: str, value=None):
        super().__init__(message)
        self.value = value


class InvalidPhase(BellGameError):
    """Gauge phases whose sum is not a multiple of 2*pi."""


class InvalidIndices(BellGameError):
    """Equilibrium-family indices violating the mod-4 selection rule."""


class ConstraintViolated(BellGameError):
    """The fairness constraint fails, so a common quantum payoff is undefined."""


class BoundViolated(BellGameError):
    """A CHSH value exceeded the Tsirelson bound (numerical bug)."""


class ParseError(BellGameError):
    """Malformed game-spec document."""


class SamplingExhausted(BellGameError):
    """The rejection sampler used up its attempt budget."""


class ConsistencyFailure(BellGameError):
    """Optimizer output disagrees with the analytic optimum."""
