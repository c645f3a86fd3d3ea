"""Exception hierarchy.

Every error raised by the package derives from :class:`RankMetricError` so
callers (and the CLI) can catch one type.  Hypothesis gates and verification
failures are kept apart because the CLI maps them to different exit codes.
"""

from __future__ import annotations


class RankMetricError(Exception):
    """Base class for all package errors."""


class ParamViolation(RankMetricError, ValueError):
    """A parameter constraint of a construction does not hold."""


class FieldTooLarge(ParamViolation):
    pass


class FieldMismatch(RankMetricError, TypeError):
    pass


class DivisionByZero(RankMetricError, ZeroDivisionError):
    pass


class NonDivisorDegree(ParamViolation):
    pass


class NonIntegerExponent(RankMetricError, ArithmeticError):
    pass


class ZeroPolynomial(RankMetricError, ValueError):
    pass


class DependentBasis(RankMetricError, ValueError):
    pass


class DependentPoints(RankMetricError, ValueError):
    pass


class LengthMismatch(RankMetricError, ValueError):
    pass


class DimensionMismatch(RankMetricError, ValueError):
    pass


class AmbientMismatch(RankMetricError, ValueError):
    pass


class ZeroScalar(RankMetricError, ValueError):
    pass


class DegenerateCode(ParamViolation):
    """The code has a single codeword, so distances are undefined."""


class BudgetExceeded(RankMetricError):
    pass


class NegativeRadicand(RankMetricError, ValueError):
    pass


class HypothesisViolation(RankMetricError):
    """A theorem hypothesis failed; ``hypothesis`` names the inequality."""

    def __init__(self, hypothesis: str, detail: str = "") -> None:
        self.hypothesis = hypothesis
        self.detail = detail
        msg = f"hypothesis violated: {hypothesis}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class FamilyNotInPol(HypothesisViolation):
    pass


class ContainmentFailure(RankMetricError):
    """A word that must be a codeword is not one."""


class VerificationFailure(RankMetricError):
    """A promised lower bound or witness property did not hold."""
