"""
paleywiener Logging Utilities

Standardized logging for numerical actions on top of the stdlib logging
tree under the ``paleywiener`` name. Structured JSON lines for the CLI live in
``paleywiener.utils.logging``; this module is the lightweight
``message | Data: {...}`` form used inside the numerical modules.
"""

import json
import logging
import time
import traceback
from functools import wraps


def get_logger():
    """Get paleywiener logger instance."""
    return logging.getLogger("paleywiener")


def log_info(message: str, data: dict | None = None):
    """
    Log info level message.

    Args:
        message: Log message
        data: Optional additional data to log
    """
    logger = get_logger()
    if data:
        logger.info(f"{message} | Data: {json.dumps(data, default=str)}")
    else:
        logger.info(message)


def log_debug(message: str, data: dict | None = None):
    """Log debug level message."""
    logger = get_logger()
    if not logger.isEnabledFor(logging.DEBUG):
        return
    if data:
        logger.debug(f"{message} | Data: {json.dumps(data, default=str)}")
    else:
        logger.debug(message)


def log_warning(message: str, data: dict | None = None):
    """Log warning level message."""
    logger = get_logger()
    if data:
        logger.warning(f"{message} | Data: {json.dumps(data, default=str)}")
    else:
        logger.warning(message)


def log_error(message: str, data: dict | None = None, exc: Exception | None = None):
    """
    Log error with optional traceback.

    Args:
        message: Error message
        data: Optional additional data
        exc: Optional exception object
    """
    error_details = {
        "message": message,
        "data": data,
        "traceback": traceback.format_exc() if exc else None,
    }
    get_logger().error(f"{message} | Details: {json.dumps(error_details, default=str)}")


def log_action(action_name: str):
    """
    Decorator to log function entry/exit and exceptions.

    Usage:
        @log_action("Classify envelope")
        def log_integral_1d(theta, ...):
            ...
    """

    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            logger = get_logger()
            func_name = func.__name__

            logger.debug(f"[{action_name}] Starting {func_name}")

            try:
                result = func(*args, **kwargs)
                logger.debug(f"[{action_name}] Completed {func_name}")
                return result
            except Exception as e:
                # expected domain refusals are logged by the caller
                from paleywiener.exceptions import PaleyWienerError

                if isinstance(e, PaleyWienerError):
                    log_debug(f"[{action_name}] {func_name} raised", {"error": e.to_dict()})
                else:
                    log_error(f"[{action_name}] Failed in {func_name}: {e!s}", exc=e)
                raise

        return wrapper

    return decorator


def _summarize(result):
    if isinstance(result, (dict, list, str, int, float, bool)):
        return result
    summary = getattr(result, "summary", None)
    if callable(summary):
        return summary()
    return str(type(result))


def log_experiment(name: str):
    """
    Decorator for long experiments with timing.

    Usage:
        @log_experiment("Plancherel consistency")
        def plancherel_consistency(...):
            ...
    """

    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.perf_counter()

            log_info(f"Experiment Started: {name}")

            try:
                result = func(*args, **kwargs)
                execution_time = time.perf_counter() - start_time

                log_info(
                    f"Experiment Completed: {name}",
                    {
                        "execution_time_seconds": round(execution_time, 3),
                        "result": _summarize(result),
                    },
                )

                return result
            except Exception as e:
                execution_time = time.perf_counter() - start_time
                log_warning(
                    f"Experiment Failed: {name}",
                    {"execution_time_seconds": round(execution_time, 3), "error": str(e)},
                )
                raise

        return wrapper

    return decorator
