"""Exception hierarchy.

Every error may carry a JSON path (``$.gamma[0]``) when it was raised while
loading a document, so the CLI can point at the offending field.
"""

from __future__ import annotations


class BraidedGroupoidError(Exception):
    def __init__(self, message: str, path: str | None = None, **details):
        super().__init__(message)
        self.message = message
        self.path = path
        self.details = details

    def to_dict(self) -> dict:
        out = {"error": type(self).__name__, "message": self.message}
        if self.path is not None:
            out["path"] = self.path
        if self.details:
            out["details"] = {k: _jsonable(v) for k, v in self.details.items()}
        return out


def _jsonable(value):
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if hasattr(value, "item"):
        return value.item()
    return value


# group-core
class GroupAxiomError(BraidedGroupoidError, ValueError):
    pass


class NotAssociative(GroupAxiomError):
    pass


class NoIdentity(GroupAxiomError):
    pass


class NoInverse(GroupAxiomError):
    pass


class UnknownFamily(BraidedGroupoidError, ValueError):
    pass


class SizeLimitExceeded(BraidedGroupoidError, ValueError):
    pass


class NotASubgroup(BraidedGroupoidError, ValueError):
    pass


# factorization
class DatumError(BraidedGroupoidError, ValueError):
    pass


class CosetCoverFailure(DatumError):
    pass


class ConjugateIntersectionFailure(DatumError):
    pass


class BadSection(DatumError):
    pass


class PhiNotIso(DatumError):
    pass


class PhiMissing(BraidedGroupoidError):
    pass


# groupoid engine
class NotComposable(BraidedGroupoidError, ValueError):
    pass


# verifier
class RouteDisagreement(BraidedGroupoidError, AssertionError):
    """The three braidedness routes returned different verdicts."""


# constructors
class InvalidInput(BraidedGroupoidError, ValueError):
    pass


class HandyAxiomViolation(BraidedGroupoidError, ValueError):
    pass


class NotBraidedGroup(BraidedGroupoidError, ValueError):
    pass


class NotHandy(BraidedGroupoidError, ValueError):
    pass


class NotBraided(BraidedGroupoidError, ValueError):
    pass


class PsiCocycleViolation(BraidedGroupoidError, ValueError):
    pass


class PsiNotCentral(BraidedGroupoidError, ValueError):
    pass


class HypothesisFailure(BraidedGroupoidError, ValueError):
    pass


class ClosedFormMismatch(BraidedGroupoidError, AssertionError):
    pass


# io / search
class SchemaError(BraidedGroupoidError, ValueError):
    pass


class SinkFailure(BraidedGroupoidError, OSError):
    pass


class ReconstructionError(BraidedGroupoidError, AssertionError):
    """Data recovered from a handy datum failed a property it must have."""
