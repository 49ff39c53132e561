"""Exception and warning types shared across the package."""


class AnisosenseError(Exception):
    """Base class for all package errors."""


class ConfigurationError(AnisosenseError, ValueError):
    """Invalid or inconsistent configuration / parameters."""


class NumericalError(AnisosenseError, ArithmeticError):
    """Base class for failures of a numerical evaluation."""


class DomainError(NumericalError, ValueError):
    """Argument outside the mathematical domain of a function."""


class ValidityError(NumericalError, ValueError):
    """Argument outside the documented validity range of an approximation."""


class SingularityError(NumericalError, ZeroDivisionError):
    """Evaluation at a singular point (e.g. y_nu at z = 0)."""


class ResonanceError(NumericalError, ZeroDivisionError):
    """Vanishing denominator at a lossless resonance pole."""


class DegenerateMatrixError(NumericalError, ZeroDivisionError):
    """T-matrix element used as a divisor vanished."""


class PeakNotFoundError(NumericalError, LookupError):
    """No local extremum found in the requested window."""


class PeakTruncationError(NumericalError, LookupError):
    """Half-maximum crossing lies outside the analysis window."""


class NonlocalRegimeWarning(UserWarning):
    """Nanoribbon closer than the local-response validity boundary."""


class TruncationWarning(UserWarning):
    """Multipole sum did not converge at the requested truncation order."""


class PerturbativeWarning(UserWarning):
    """Probe not weak compared to the pump; linearisation may be poor."""
