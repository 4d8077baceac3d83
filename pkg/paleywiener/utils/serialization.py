# -*- coding: utf-8 -*-
# Copyright (c) 2026, paleywiener developers
# License: GNU General Public License v3

"""
Artifact Serialization for paleywiener

Every experiment writes a JSON report and, when it produces curves, a CSV
payload next to it. Output is a pure function of the inputs: keys are sorted,
floats are written with 17 significant digits, and nothing time-dependent is
recorded.
"""

import csv
import json
import math
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import Any

import numpy as np

FLOAT_FORMAT = ".17g"


def to_jsonable(value: Any) -> Any:
    """Convert numpy scalars/arrays and non-finite floats into JSON-safe values"""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        if math.isnan(value):
            return None
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": to_jsonable(value.real), "im": to_jsonable(value.imag)}
    if isinstance(value, Path):
        return str(value)
    return value


def dumps(payload: dict[str, Any]) -> str:
    return json.dumps(to_jsonable(payload), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(path: str | Path, payload: dict[str, Any]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(payload), encoding="utf-8")
    return path


def _format_cell(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return format(float(value), FLOAT_FORMAT)
    if isinstance(value, (np.integer, int)):
        return str(int(value))
    return str(value)


def write_csv(path: str | Path, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_format_cell(v) for v in row])
    return path


def read_csv(path: str | Path) -> tuple[list[str], np.ndarray]:
    """Read a numeric CSV artifact back as (columns, 2-D array)"""
    with Path(path).open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        columns = next(reader)
        data = [[float(cell) for cell in row] for row in reader if row]
    return columns, np.array(data, dtype=float).reshape(-1, len(columns))


def write_artifact(
    output_dir: str | Path,
    stem: str,
    report: dict[str, Any],
    columns: Sequence[str] | None = None,
    rows: Iterable[Sequence[Any]] | None = None,
) -> dict[str, Path]:
    """Write ``<stem>.json`` and, if columns are given, ``<stem>.csv``"""
    output_dir = Path(output_dir)
    written: dict[str, Path] = {}
    if columns is not None:
        written["csv"] = write_csv(output_dir / f"{stem}.csv", columns, rows or [])
        report = {**report, "payload": f"{stem}.csv"}
    written["json"] = write_json(output_dir / f"{stem}.json", report)
    return written


def load_json(path: str | Path) -> dict[str, Any]:
    return json.loads(Path(path).read_text(encoding="utf-8"))
