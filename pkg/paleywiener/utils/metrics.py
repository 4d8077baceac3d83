# -*- coding: utf-8 -*-
# Copyright (c) 2026, paleywiener developers
# License: GNU General Public License v3

"""
Metrics for paleywiener

In-process counters and timings for experiment runs. Nothing here
is written into artifacts; the CLI logs the summary.
"""

import threading
import time
from contextlib import contextmanager


class MetricsCollector:
    """Collects metrics for numerical operations"""

    KEY_PREFIX = "metrics:paleywiener"
    MAX_TIMINGS = 100

    def __init__(self):
        self._lock = threading.Lock()
        self._counters: dict[str, float] = {}
        self._timings: dict[str, list[float]] = {}

    def increment(self, name: str, value: float = 1, tags: dict | None = None):
        key = self._make_key(name, tags)
        with self._lock:
            self._counters[key] = self._counters.get(key, 0) + value

    def timing(self, name: str, duration_ms: float, tags: dict | None = None):
        key = self._make_key(f"{name}:timings", tags)
        with self._lock:
            timings = self._timings.setdefault(key, [])
            timings.append(duration_ms)
            del timings[: -self.MAX_TIMINGS]

    @contextmanager
    def timer(self, name: str, tags: dict | None = None):
        start = time.perf_counter()
        try:
            yield
        finally:
            duration_ms = (time.perf_counter() - start) * 1000
            self.timing(name, duration_ms, tags)

    def _make_key(self, name: str, tags: dict | None = None) -> str:
        key = f"{self.KEY_PREFIX}:{name}"
        if tags:
            tag_str = ":".join(f"{k}={v}" for k, v in sorted(tags.items()))
            key = f"{key}:{tag_str}"
        return key

    def get_counter(self, name: str, tags: dict | None = None) -> float:
        return self._counters.get(self._make_key(name, tags), 0)

    def get_timing_stats(self, name: str, tags: dict | None = None) -> dict:
        values = list(self._timings.get(self._make_key(f"{name}:timings", tags), []))

        if not values:
            return {"count": 0}

        return {
            "count": len(values),
            "min": min(values),
            "max": max(values),
            "avg": sum(values) / len(values),
            "p50": self._percentile(values, 50),
            "p95": self._percentile(values, 95),
            "p99": self._percentile(values, 99),
        }

    def _percentile(self, values: list[float], percentile: int) -> float:
        if not values:
            return 0
        sorted_values = sorted(values)
        index = int(len(sorted_values) * percentile / 100)
        return sorted_values[min(index, len(sorted_values) - 1)]

    def reset(self):
        with self._lock:
            self._counters.clear()
            self._timings.clear()


metrics = MetricsCollector()


def record_experiment(command: str, exit_code: int, duration_ms: float):
    """Record one CLI experiment"""
    metrics.increment("experiments_total", tags={"command": command})
    outcome = {0: "passed", 2: "failed"}.get(exit_code, "errored")
    metrics.increment(f"experiments_{outcome}", tags={"command": command})
    metrics.timing("experiment_latency", duration_ms, tags={"command": command})


def record_certificate(passed: bool):
    """Record an envelope certificate outcome"""
    metrics.increment("certificates_total")
    if passed:
        metrics.increment("certificates_passed")


def get_metrics_summary(command: str | None = None) -> dict:
    """Summary for logging at the end of a run"""
    tags = {"command": command} if command else None
    return {
        "experiments": metrics.get_counter("experiments_total", tags=tags),
        "certificates": {
            "total": metrics.get_counter("certificates_total"),
            "passed": metrics.get_counter("certificates_passed"),
        },
        "latency": metrics.get_timing_stats("experiment_latency", tags=tags),
    }
