# Copyright (c) 2026, paleywiener developers
# License: GNU General Public License v3
"""
paleywiener Exception Hierarchy

Provides a consistent exception hierarchy for every numerical pipeline.
All custom exceptions inherit from PaleyWienerError so a runner can catch
them with a single except clause and serialize them into a report.
"""

from __future__ import annotations

from typing import Any


class PaleyWienerError(Exception):
    """Base exception for all paleywiener errors.

    Example:
        try:
            design_widths(theta, support_budget=4.0)
        except PaleyWienerError as e:
            report["error"] = e.to_dict()
    """

    default_code: str | None = None

    def __init__(self, message: str, code: str | None = None, details: dict[str, Any] | None = None):
        super().__init__(message)
        self.message = message
        self.code = code or self.default_code
        self.details = details or {}

    def __str__(self) -> str:
        if self.code:
            return f"[{self.code}] {self.message}"
        return self.message

    def to_dict(self) -> dict[str, Any]:
        """Convert exception to dictionary for JSON reports."""
        return {
            "error": self.__class__.__name__,
            "message": self.message,
            "code": self.code,
            "details": self.details,
        }


# Envelopes


class EnvelopeError(PaleyWienerError):
    """Invalid decay profile."""

    default_code = "ENVELOPE_ERROR"


class NegativeEnvelope(EnvelopeError):
    """A sampled θ(t) was negative."""

    default_code = "NEGATIVE_ENVELOPE"


class NonFiniteSample(EnvelopeError):
    """θ returned NaN or an infinity."""

    default_code = "NON_FINITE_SAMPLE"


class NotMonotone(EnvelopeError):
    """Envelope flagged (or required) non-decreasing failed a spot check."""

    default_code = "NOT_MONOTONE"


class EnvelopeSpecError(EnvelopeError):
    """Unparseable envelope specification string."""

    default_code = "ENVELOPE_SPEC"


# Grids


class GridError(PaleyWienerError):
    """Problem with a sampling grid."""

    default_code = "GRID_ERROR"


class GridTooCoarse(GridError):
    """Grid cannot represent the requested data without aliasing or truncation."""

    default_code = "GRID_TOO_COARSE"


# Construction


class ConstructionError(PaleyWienerError):
    """The constructive pipeline refused or failed."""

    default_code = "CONSTRUCTION_ERROR"


class DivergentLogIntegral(ConstructionError):
    """No non-zero compactly supported function can satisfy a Divergent envelope."""

    default_code = "DIVERGENT_LOG_INTEGRAL"


class InconclusiveLogIntegral(ConstructionError):
    """The classifier could not decide; construction is not attempted."""

    default_code = "INCONCLUSIVE_LOG_INTEGRAL"


class BudgetExhausted(ConstructionError):
    """No design with at most K_max widths passed its certificate."""

    default_code = "BUDGET_EXHAUSTED"


class AnnihilatedSymmetrization(ConstructionError):
    """Every candidate shift symmetrized to (numerically) zero."""

    default_code = "ANNIHILATED_SYMMETRIZATION"


# Half-plane


class HalfPlaneError(PaleyWienerError):
    """Error in the upper half-plane machinery."""

    default_code = "HALFPLANE_ERROR"


class InsufficientCoverage(HalfPlaneError):
    """Boundary grid and tail model leave Poisson kernel mass unaccounted for."""

    default_code = "INSUFFICIENT_COVERAGE"


class DegenerateData(HalfPlaneError):
    """Data vanish identically, nothing to fit."""

    default_code = "DEGENERATE_DATA"


class NotAdmissible(HalfPlaneError):
    """Test function is not bounded by 1 on the axes of the closed upper half-plane."""

    default_code = "NOT_ADMISSIBLE"


class InvalidBoundaryData(HalfPlaneError):
    """Boundary log-modulus data violate their invariants."""

    default_code = "INVALID_BOUNDARY_DATA"


# Motion group


class MotionGroupError(PaleyWienerError):
    """Error in the motion-group machinery."""

    default_code = "MOTION_GROUP_ERROR"


class BandCapExceeded(MotionGroupError):
    """Requested mode index beyond the implementation band cap."""

    default_code = "BAND_CAP_EXCEEDED"


class OverflowGuard(MotionGroupError):
    """Complex radius would overflow exp()."""

    default_code = "OVERFLOW_GUARD"


# Configuration / validation


class ConfigError(PaleyWienerError):
    """Invalid experiment configuration.

    Attributes:
        field: Offending field, if known
        errors: Individual messages
        line, column: Position in a JSON config file, if known
    """

    def __init__(
        self,
        message: str,
        field: str | None = None,
        errors: list[str] | None = None,
        line: int | None = None,
        column: int | None = None,
    ):
        details: dict[str, Any] = {}
        if field:
            details["field"] = field
        if errors:
            details["errors"] = errors
        if line is not None:
            details["line"] = line
            details["column"] = column
        super().__init__(message, code="CONFIG_ERROR", details=details)
        self.field = field
        self.errors = errors or []
        self.line = line
        self.column = column


class PaleyWienerValidationError(PaleyWienerError):
    """Validation error for operation inputs.

    Attributes:
        field: Field that failed validation
        errors: List of validation errors
    """

    def __init__(self, message: str, field: str | None = None, errors: list[str] | None = None):
        super().__init__(message, code="VALIDATION_ERROR", details={"field": field, "errors": errors or []})
        self.field = field
        self.errors = errors or []


__all__ = [
    "PaleyWienerError",
    "EnvelopeError",
    "NegativeEnvelope",
    "NonFiniteSample",
    "NotMonotone",
    "EnvelopeSpecError",
    "GridError",
    "GridTooCoarse",
    "ConstructionError",
    "DivergentLogIntegral",
    "InconclusiveLogIntegral",
    "BudgetExhausted",
    "AnnihilatedSymmetrization",
    "HalfPlaneError",
    "InsufficientCoverage",
    "DegenerateData",
    "NotAdmissible",
    "InvalidBoundaryData",
    "MotionGroupError",
    "BandCapExceeded",
    "OverflowGuard",
    "ConfigError",
    "PaleyWienerValidationError",
]
