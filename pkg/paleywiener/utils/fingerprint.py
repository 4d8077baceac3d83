# -*- coding: utf-8 -*-
# Copyright (c) 2026, paleywiener developers
# License: GNU General Public License v3

"""
Run Fingerprints for paleywiener

Deterministic keys for experiment runs and an in-process cache for pure
computations. Same operation and parameters always give the same key, which
is what makes artifacts reproducible and comparable across runs.
"""

import hashlib
import json
import threading
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any, TypeVar, cast

from paleywiener.logger import log_debug

T = TypeVar("T")


def generate_key(operation: str, **params) -> str:
    """Fingerprint of an operation and its parameters (16 hex digits)"""
    sorted_params = json.dumps(params, sort_keys=True, default=str)
    key_source = f"{operation}:{sorted_params}"
    return hashlib.sha256(key_source.encode()).hexdigest()[:16]


@dataclass
class CacheResult:
    """Result of a cache lookup"""

    is_hit: bool
    cached_result: Any | None = None
    key: str | None = None


class ResultCache:
    """
    Memoizes pure computations by fingerprint.

    Only use for functions of their parameters alone; every numerical
    operation in this package qualifies.
    """

    def __init__(self, namespace: str = "paleywiener", max_entries: int = 256):
        self.namespace = namespace
        self.max_entries = max_entries
        self._store: dict[str, Any] = {}
        self._lock = threading.Lock()

    def make_key(self, operation: str, **params) -> str:
        return f"{self.namespace}:{operation}:{generate_key(operation, **params)}"

    def check(self, key: str) -> CacheResult:
        with self._lock:
            if key in self._store:
                return CacheResult(is_hit=True, cached_result=self._store[key], key=key)
        return CacheResult(is_hit=False, key=key)

    def store(self, key: str, result: Any):
        with self._lock:
            if len(self._store) >= self.max_entries:
                self._store.pop(next(iter(self._store)))
            self._store[key] = result

    def clear(self):
        with self._lock:
            self._store.clear()

    def get_or_execute(self, operation: str, func: Callable[..., T], **params) -> tuple[T, bool]:
        """Execute function only if the same call is not cached"""
        key = self.make_key(operation, **params)
        check_result = self.check(key)

        if check_result.is_hit:
            log_debug(f"Cache hit for {operation}", {"key": key})
            return cast(T, check_result.cached_result), True

        result = func(**params)
        self.store(key, result)
        return result, False


# Singleton instance
result_cache = ResultCache("paleywiener")
