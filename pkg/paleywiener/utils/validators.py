# -*- coding: utf-8 -*-
# Copyright (c) 2026, paleywiener developers
# License: GNU General Public License v3

"""
Validation Utilities for paleywiener

Chainable field validation for experiment parameters, run before any
numerical work so that bad inputs fail with field-level diagnostics.
"""

import math
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

from paleywiener.exceptions import PaleyWienerValidationError


@dataclass
class ValidationError:
    """Single validation error"""

    field: str
    message: str
    code: str = "invalid"
    value: Any = None


@dataclass
class ValidationResult:
    """Result of validation"""

    is_valid: bool
    errors: list[ValidationError]

    def raise_if_invalid(self):
        """Raise PaleyWienerValidationError if invalid"""
        if not self.is_valid:
            error_messages = [f"{e.field}: {e.message}" for e in self.errors]
            raise PaleyWienerValidationError(
                "Validation failed: {}".format("; ".join(error_messages)),
                field=self.errors[0].field,
                errors=error_messages,
            )


def _as_float(value: Any) -> float | None:
    if isinstance(value, bool):
        return None
    try:
        result = float(value)
    except (ValueError, TypeError):
        return None
    return result


class Validator:
    """Chainable field validator"""

    def __init__(self):
        self._errors: list[ValidationError] = []
        self._current_field: str | None = None
        self._current_value: Any = None
        self._skip_remaining = False

    def field(self, name: str, value: Any) -> "Validator":
        """Start validating a new field"""
        self._current_field = name
        self._current_value = value
        self._skip_remaining = False
        return self

    def _add_error(self, message: str, code: str = "invalid"):
        self._errors.append(
            ValidationError(
                field=self._current_field or "unknown",
                message=message,
                code=code,
                value=self._current_value,
            )
        )

    def required(self, message: str | None = None) -> "Validator":
        if self._skip_remaining:
            return self
        if self._current_value is None or self._current_value == "":
            self._add_error(message or "This field is required", "required")
            self._skip_remaining = True
        return self

    def optional(self) -> "Validator":
        if self._current_value is None or self._current_value == "":
            self._skip_remaining = True
        return self

    def number(self, message: str | None = None) -> "Validator":
        if self._skip_remaining:
            return self
        val = _as_float(self._current_value)
        if val is None or not math.isfinite(val):
            self._add_error(message or "Must be a finite number", "type")
            self._skip_remaining = True
        return self

    def integer(self, message: str | None = None) -> "Validator":
        if self._skip_remaining:
            return self
        if isinstance(self._current_value, bool) or not isinstance(self._current_value, int):
            self._add_error(message or "Must be an integer", "type")
            self._skip_remaining = True
        return self

    def between(self, min_val: float, max_val: float, message: str | None = None) -> "Validator":
        if self._skip_remaining:
            return self
        val = _as_float(self._current_value)
        if val is None:
            self._add_error("Must be a number", "type")
        elif val < min_val or val > max_val:
            self._add_error(message or f"Must be between {min_val} and {max_val}", "range")
        return self

    def positive(self, message: str | None = None) -> "Validator":
        if self._skip_remaining:
            return self
        val = _as_float(self._current_value)
        if val is None:
            self._add_error("Must be a number", "type")
        elif val <= 0:
            self._add_error(message or "Must be positive", "positive")
        return self

    def non_negative(self, message: str | None = None) -> "Validator":
        if self._skip_remaining:
            return self
        val = _as_float(self._current_value)
        if val is None:
            self._add_error("Must be a number", "type")
        elif val < 0:
            self._add_error(message or "Must be non-negative", "non_negative")
        return self

    def nonzero(self, message: str | None = None) -> "Validator":
        if self._skip_remaining:
            return self
        val = _as_float(self._current_value)
        if val is None:
            self._add_error("Must be a number", "type")
        elif val == 0:
            self._add_error(message or "Must be non-zero", "nonzero")
        return self

    def even(self, message: str | None = None) -> "Validator":
        if self._skip_remaining:
            return self
        if not isinstance(self._current_value, int) or self._current_value % 2:
            self._add_error(message or "Must be an even integer", "even")
        return self

    def in_list(self, valid_values: list, message: str | None = None) -> "Validator":
        if self._skip_remaining:
            return self
        if self._current_value not in valid_values:
            self._add_error(
                message or "Must be one of: {}".format(", ".join(str(v) for v in valid_values)),
                "choices",
            )
        return self

    def custom(self, validator_func: Callable[[Any], bool], message: str) -> "Validator":
        if self._skip_remaining:
            return self
        if not validator_func(self._current_value):
            self._add_error(message, "custom")
        return self

    def validate(self) -> ValidationResult:
        return ValidationResult(is_valid=len(self._errors) == 0, errors=self._errors.copy())


# Domain validators


def validate_grid(dim: int, half_width: float, points: int, prefix: str = "grid") -> ValidationResult:
    """Validate a uniform centered grid specification"""
    v = Validator()
    v.field(f"{prefix}.dim", dim).required().integer().in_list([1, 2, 3])
    v.field(f"{prefix}.half_width", half_width).required().number().positive()
    v.field(f"{prefix}.points", points).required().integer().even().between(4, 1 << 16)
    return v.validate()


def validate_log_integral_args(t_max: float, windows: int) -> ValidationResult:
    """Preconditions of the log-integral classifiers"""
    return (
        Validator()
        .field("t_max", t_max)
        .required()
        .number()
        .custom(lambda x: float(x) >= 1.0, "t_max must be at least 1")
        .field("windows", windows)
        .required()
        .integer()
        .custom(lambda x: x >= 4, "At least 4 windows are required")
        .validate()
    )


def validate_or_throw(result: ValidationResult):
    """Raise exception if validation failed"""
    result.raise_if_invalid()
