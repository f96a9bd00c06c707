"""
Exception hierarchy shared by the library, the CLI and the HTTP routers.

Every error also derives from the nearest builtin so plain ``except ValueError``
style handlers keep working. ``exit_code`` is what the CLI returns for it.
"""

from typing import Any, Dict

INVALID_INPUT = 2
VERIFICATION_FAILED = 1


class QWeylError(Exception):
    exit_code = INVALID_INPUT

    def to_payload(self) -> Dict[str, Any]:
        return {
            "error": type(self).__name__,
            "message": str(self),
            "exit_code": self.exit_code,
        }


class ScalarDivisionError(QWeylError, ZeroDivisionError):
    pass


class SqrtNotRepresentableError(QWeylError, ValueError):
    """The square root does not live in any multiquadratic extension of Q(i)."""


class DimensionMismatchError(QWeylError, ValueError):
    pass


class InvalidRankError(QWeylError, ValueError):
    pass


class NotARootError(QWeylError, ValueError):
    pass


class InvalidAlgebraError(QWeylError, ValueError):
    pass


class AlgebraMismatchError(QWeylError, ValueError):
    pass


class DegenerateFormError(QWeylError, ValueError):
    pass


class UnknownGeneratorError(QWeylError, KeyError):
    def __str__(self) -> str:
        # KeyError quotes its argument; keep the plain message
        return str(self.args[0]) if self.args else ""


class NonDominantWeightError(QWeylError, ValueError):
    pass


class NotHighestWeightError(QWeylError, ValueError):
    pass


class HypothesisViolationError(QWeylError, ValueError):
    """Theorem hypotheses fail, so nothing was tested."""


class InvalidJobError(QWeylError, ValueError):
    """Malformed coefficient spec, weight string or psi file."""


class DepthOverflowError(QWeylError, RuntimeError):
    exit_code = VERIFICATION_FAILED


class NonScalarSquareError(QWeylError, RuntimeError):
    exit_code = VERIFICATION_FAILED


class VerificationError(QWeylError, RuntimeError):
    exit_code = VERIFICATION_FAILED


