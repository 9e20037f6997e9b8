"""Exception hierarchy."""


class DomainError(ValueError):
    """An argument violates an operation's precondition."""


class PoleError(DomainError):
    """Gamma evaluated at a non-positive integer."""


class FormatOverflowError(DomainError, OverflowError):
    """The result does not fit in binary64."""


class BracketError(DomainError):
    """A root-finding bracket does not straddle the target."""


class NonConvergenceError(RuntimeError):
    """A series hit its term cap before meeting its stopping rule."""


class IntegrandError(ArithmeticError):
    """The integrand returned NaN or an infinity."""


class UncoveredCaseError(DomainError):
    """No closed-form special case exists for the requested parameters."""


class SlowTailWarning(RuntimeWarning):
    """The integrand decays too slowly for absolute convergence."""
