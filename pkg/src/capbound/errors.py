"""Exception hierarchy.

Every library error carries a stable ``kind`` string (the class name) and a
``details`` mapping so the command-line layer can serialize it without
inspecting messages.
"""
from __future__ import annotations

from typing import Any


class CapacityError(Exception):
    """Base class for domain errors raised by this package."""

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.details = details

    @property
    def kind(self) -> str:
        return type(self).__name__

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "message": str(self), **self.details}


class ValidationError(CapacityError, ValueError):
    pass


class EmptyInput(ValidationError):
    pass


class NegativeEntry(ValidationError):
    pass


class SumNotOne(ValidationError):
    pass


class RaggedMatrix(ValidationError):
    pass


class TooFewRows(ValidationError):
    pass


class TooFewColumns(ValidationError):
    pass


class RowNotDistribution(ValidationError):
    pass


class LengthMismatch(CapacityError, ValueError):
    pass


class AlphaOutOfRange(CapacityError, ValueError):
    pass


class SingularAtZero(CapacityError, ZeroDivisionError):
    pass


class NoConvergence(CapacityError, RuntimeError):
    pass


class IdenticalRows(CapacityError, ValueError):
    pass


class RhoOutOfRange(CapacityError, ValueError):
    pass


class NonUnique(CapacityError, ValueError):
    pass


class ResidualTooLarge(CapacityError, ValueError):
    pass


class DeltaOutOfRange(CapacityError, ValueError):
    pass


class TargetOutOfRange(CapacityError, ValueError):
    pass


class Infeasible(CapacityError, ValueError):
    pass


class TooManySymbols(CapacityError, ValueError):
    pass
