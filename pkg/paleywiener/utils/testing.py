# -*- coding: utf-8 -*-
# Copyright (c) 2026, paleywiener developers
# License: GNU General Public License v3

"""
Test Utilities for paleywiener

Seeded generators, temporary output directories, log capture and a few
assertion helpers shared by the test suites.
"""

import io
import logging
import os
import shutil
import tempfile
from pathlib import Path

import numpy as np

DEFAULT_SEED = 20260417


def seeded_rng(seed: int = DEFAULT_SEED) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_points_upper_half_plane(
    count: int = 20, seed: int = DEFAULT_SEED, x_range=(-5.0, 5.0), y_range=(0.2, 3.0)
) -> np.ndarray:
    """Complex points x + iy drawn uniformly from a box in the upper half-plane"""
    rng = seeded_rng(seed)
    return rng.uniform(*x_range, size=count) + 1j * rng.uniform(*y_range, size=count)


class TemporaryOutputDir:
    """
    Temporary directory that also sets PALEYWIENER_OUTPUT_DIR.

    Usage:
        with TemporaryOutputDir() as out:
            main(["classify", "--theta", "sqrt"])
            report = load_json(out / "classify.json")
    """

    def __init__(self):
        self.path: Path | None = None
        self._previous: str | None = None

    def __enter__(self) -> Path:
        self.path = Path(tempfile.mkdtemp(prefix="pw-test-"))
        self._previous = os.environ.get("PALEYWIENER_OUTPUT_DIR")
        os.environ["PALEYWIENER_OUTPUT_DIR"] = str(self.path)
        return self.path

    def __exit__(self, *args):
        if self._previous is None:
            os.environ.pop("PALEYWIENER_OUTPUT_DIR", None)
        else:
            os.environ["PALEYWIENER_OUTPUT_DIR"] = self._previous
        if self.path is not None:
            shutil.rmtree(self.path, ignore_errors=True)


class CapturedLogs:
    """Capture records of the ``paleywiener`` logger tree"""

    def __init__(self, level: int = logging.DEBUG):
        self.level = level
        self.stream = io.StringIO()
        self._handler = logging.StreamHandler(self.stream)
        self._logger = logging.getLogger("paleywiener")
        self._previous_level = self._logger.level

    def __enter__(self) -> "CapturedLogs":
        self._handler.setLevel(self.level)
        self._logger.addHandler(self._handler)
        self._logger.setLevel(self.level)
        return self

    def __exit__(self, *args):
        self._logger.removeHandler(self._handler)
        self._logger.setLevel(self._previous_level)

    @property
    def lines(self) -> list[str]:
        return [line for line in self.stream.getvalue().splitlines() if line]

