# -*- coding: utf-8 -*-
# Copyright (c) 2026, paleywiener developers
# License: GNU General Public License v3

"""
Structured Logging Utilities for paleywiener

Provides correlation IDs and JSON-line logging for tracing one experiment
run across the numerical modules.
"""

import json
import logging
import uuid
from contextlib import contextmanager
from contextvars import ContextVar
from datetime import datetime, timezone
from typing import Any

APP_NAME = "paleywiener"

_correlation_id: ContextVar[str | None] = ContextVar("pw_correlation_id", default=None)
_log_context: ContextVar[dict[str, Any] | None] = ContextVar("pw_log_context", default=None)


class CorrelationContext:
    """Manages correlation ID for run tracing"""

    @classmethod
    def get_id(cls) -> str:
        """Get or create correlation ID for the current run"""
        correlation_id = _correlation_id.get()
        if not correlation_id:
            correlation_id = cls._generate_id()
            _correlation_id.set(correlation_id)
        return correlation_id

    @classmethod
    def set_id(cls, correlation_id: str):
        """Set correlation ID (the CLI sets one per invocation)"""
        _correlation_id.set(correlation_id)

    @classmethod
    def _generate_id(cls) -> str:
        """Generate a short, unique correlation ID"""
        return uuid.uuid4().hex[:12]

    @classmethod
    def clear(cls):
        _correlation_id.set(None)


class StructuredLogger:
    """
    Structured logger for paleywiener.

    Usage:
        logger = StructuredLogger("paleywiener.envelopes")
        logger.info("Classified", theta="sqrt", verdict="Convergent")
    """

    def __init__(self, name: str = APP_NAME):
        self.name = name
        self._logger = logging.getLogger(name)

    def _format_message(self, level: str, message: str, **kwargs) -> dict[str, Any]:
        """Format log entry as structured data"""
        entry: dict[str, Any] = {
            "timestamp": datetime.now(timezone.utc).isoformat().replace("+00:00", "Z"),
            "level": level.upper(),
            "app": APP_NAME,
            "logger": self.name,
            "correlation_id": CorrelationContext.get_id(),
            "message": message,
        }

        context = get_log_context()
        data = {**context, **kwargs}
        if data:
            entry["data"] = data

        return entry

    def _log(self, level: str, message: str, **kwargs):
        if not self._logger.isEnabledFor(getattr(logging, level.upper())):
            return
        entry = self._format_message(level, message, **kwargs)
        log_line = json.dumps(entry, default=str, ensure_ascii=False)
        getattr(self._logger, level.lower())(log_line)

    def debug(self, message: str, **kwargs):
        self._log("debug", message, **kwargs)

    def info(self, message: str, **kwargs):
        self._log("info", message, **kwargs)

    def warning(self, message: str, **kwargs):
        self._log("warning", message, **kwargs)

    def error(self, message: str, **kwargs):
        self._log("error", message, **kwargs)

    def experiment_event(
        self,
        command: str,
        outcome: str,
        exit_code: int | None = None,
        duration_ms: float | None = None,
        fingerprint: str | None = None,
        error: str | None = None,
        **extra,
    ):
        """Log the outcome of one CLI experiment with standard fields"""
        data: dict[str, Any] = {"command": command, "outcome": outcome}
        if exit_code is not None:
            data["exit_code"] = exit_code
        if duration_ms is not None:
            data["duration_ms"] = round(duration_ms, 2)
        if fingerprint:
            data["fingerprint"] = fingerprint
        if error:
            data["error"] = error
        data.update(extra)

        level = "error" if error else "info"
        self._log(level, f"Experiment {command} {outcome}", **data)


# Singleton logger instance
logger = StructuredLogger(APP_NAME)


def get_logger(name: str | None = None) -> StructuredLogger:
    """Get a logger instance"""
    if name is None:
        return logger
    return StructuredLogger(name)


def configure(level: str = "WARNING", stream=None) -> None:
    """Attach a plain stderr handler to the package root logger (idempotent)."""
    root = logging.getLogger(APP_NAME)
    root.setLevel(getattr(logging, level.upper(), logging.WARNING))
    if not any(getattr(h, "_pw_handler", False) for h in root.handlers):
        handler = logging.StreamHandler(stream)
        handler.setFormatter(logging.Formatter("%(message)s"))
        handler._pw_handler = True  # type: ignore[attr-defined]
        root.addHandler(handler)


@contextmanager
def log_context(**kwargs):
    """Context manager for adding extra context to all logs within block"""
    old_context = _log_context.get() or {}
    token = _log_context.set({**old_context, **kwargs})
    try:
        yield
    finally:
        _log_context.reset(token)


def get_log_context() -> dict:
    """Get current log context"""
    return dict(_log_context.get() or {})
