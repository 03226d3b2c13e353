"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class PoleError(DomainError):
    """The gamma function was evaluated at zero or a negative integer."""


class QuadratureError(RuntimeError):
    """Adaptive integration exhausted its budget without meeting tolerance."""


class BracketError(RuntimeError):
    """A root or optimum search could not establish a valid bracket."""


class PreconditionError(ValueError):
    """A search predicate does not hold at the supplied interval endpoints."""


class InfeasibleRateError(ValueError):
    """The requested arrival rate exceeds what the link can sustain."""


class QueueOverflowError(RuntimeError):
    """The simulated queue exceeded the stability guard."""


class ConfigError(ValueError):
    """Invalid or unknown configuration input."""
