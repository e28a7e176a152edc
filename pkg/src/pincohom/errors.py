"""Exception types raised across the package."""


class PincohomError(Exception):
    """Base class for every error raised by this package."""


class InputError(PincohomError, ValueError):
    """Malformed or inconsistent user input (CLI exit code 2)."""


class ClosureExceedsCap(InputError):
    pass


class NotInvertible(InputError):
    pass


class NotOrthogonal(InputError):
    pass


class NotAHomomorphism(InputError):
    pass


class NotNormal(InputError):
    pass


class MismatchedAmbient(PincohomError, ValueError):
    """Two cohomology objects live over different groups or coefficients."""


class NonF2Coefficients(PincohomError, ValueError):
    pass


class NotElementaryAbelian(PincohomError, ValueError):
    pass


class NoSolution(PincohomError, ArithmeticError):
    """A linear system that must be solvable was not; indicates a bug."""


class InvalidCocycle(InputError):
    pass


class InvalidExtension(InputError):
    pass


class DimensionMismatch(PincohomError, ValueError):
    pass


class ScalarMismatch(PincohomError, ArithmeticError):
    """Two Clifford monomials expected to be proportional were not."""


class DimensionTooSmall(InputError):
    pass


class EquivalenceDisagreement(PincohomError, AssertionError):
    """Class comparison and the brute-force equivalence search disagreed."""


class LiftCheckFailed(PincohomError, AssertionError):
    """Verdict from class arithmetic differs from the explicit lifting search."""
