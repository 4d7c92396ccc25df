"""Exception hierarchy.

Three families matter to callers: bad user input (``CurveError``), arithmetic
misuse (``ArithmeticDomainError``) and failed self-checks
(``InternalCheckError``). The command line maps them to exit codes 2, 3 and 3.
"""

from __future__ import annotations


class DivFrobError(Exception):
    """Base class for every error raised by this package."""


# --- arithmetic -------------------------------------------------------------


class ArithmeticDomainError(DivFrobError):
    """An arithmetic operation was called outside its domain."""


class ModulusMismatch(ArithmeticDomainError):
    pass


class BothZero(ArithmeticDomainError):
    pass


class ConstantTermZero(ArithmeticDomainError):
    pass


class NotDivisibleByP(ArithmeticDomainError):
    pass


class InexactDivision(ArithmeticDomainError):
    pass


# --- curve validation -------------------------------------------------------


class CurveError(DivFrobError):
    """The curve data violates a hypothesis. ``hint`` suggests a remedy."""

    def __init__(self, message: str, hint: str | None = None):
        super().__init__(message)
        self.hint = hint


class NotPrime(CurveError):
    pass


class ModulusTooLarge(CurveError):
    pass


class InvalidExponent(CurveError):
    pass


class NNotCoprimeToP(CurveError):
    pass


class BadDegreeResidue(CurveError):
    pass


class DegreeDivisibleByP(CurveError):
    pass


class LeadingCoeffNotUnit(CurveError):
    pass


class NotSeparable(CurveError):
    pass


class RootAtZero(CurveError):
    pass


class NoShiftExists(CurveError):
    pass


class NotHyperelliptic(CurveError):
    pass


# --- self-checks ------------------------------------------------------------


class InternalCheckError(DivFrobError):
    """A mathematical identity that must hold did not. Always a bug."""


class LiftIdentityFailed(InternalCheckError):
    pass


class SingularMatrix(InternalCheckError):
    pass


class OracleInconsistency(InternalCheckError):
    """The structural computation produced a non-global differential."""


class ChartMismatch(InternalCheckError):
    pass


class TruncationInsufficient(InternalCheckError):
    pass
