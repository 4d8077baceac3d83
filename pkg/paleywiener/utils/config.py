# -*- coding: utf-8 -*-
# Copyright (c) 2026, paleywiener developers
# License: GNU General Public License v3

"""
Configuration for paleywiener

Settings come from the environment; experiment parameters come from defaults,
then an optional JSON file, then explicit command-line flags.
"""

import json
import os
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any

from paleywiener.exceptions import ConfigError
from paleywiener.utils.validators import Validator

COMMANDS = [
    "classify",
    "construct",
    "slice-check",
    "poisson-check",
    "mn-transform",
    "mn-decay",
    "schrodinger-rn",
    "schrodinger-mn",
    "plancherel",
]

# Motion-group grids carry N² × M samples, so each command sizes its own box.
GRID_DEFAULTS: dict[str, dict[str, Any]] = {
    "default": {"dim": 2, "n": 256, "half_width": 2.0, "angles": 8, "tolerance": 1e-6},
    "mn-transform": {"n": 128, "half_width": 1.5},
    "mn-decay": {"n": 128, "half_width": 1.5},
    "schrodinger-rn": {"dim": 1, "n": 16384, "half_width": 256.0},
    "schrodinger-mn": {"n": 192, "half_width": 24.0},
    "plancherel": {"n": 128, "half_width": 5.5, "tolerance": 5e-3},
}


@dataclass(frozen=True)
class Settings:
    """Process-wide settings from the environment"""

    output_dir: Path
    log_level: str
    seed: int

    @classmethod
    def from_env(cls, environ: dict[str, str] | None = None) -> "Settings":
        env = os.environ if environ is None else environ
        try:
            seed = int(env.get("PALEYWIENER_SEED", "0"))
        except ValueError:
            raise ConfigError("PALEYWIENER_SEED must be an integer", field="PALEYWIENER_SEED")
        return cls(
            output_dir=Path(env.get("PALEYWIENER_OUTPUT_DIR") or "./pw-output"),
            log_level=(env.get("PALEYWIENER_LOG_LEVEL") or "WARNING").upper(),
            seed=seed,
        )


@dataclass
class ExperimentConfig:
    """Parameters of one CLI experiment"""

    command: str = "classify"
    theta: str = "sqrt"
    battery: bool = False
    n: int | None = None
    half_width: float | None = None
    angles: int | None = None
    band: int | None = None
    r: float = 1.0
    points: int = 161
    tolerance: float | None = None
    t0: float = 1.0
    dim: int | None = None
    support_budget: float = 2.0
    y_max: float = 1e4
    r_max: float = 30.0
    t_max: float = 2.0**20
    windows: int = 20
    directions: int = 8
    samples: int = 5
    input: str | None = None
    seed: int = 0
    output_dir: str = "./pw-output"

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def resolved(self) -> "ExperimentConfig":
        """Fill unset grid fields with the defaults of this command"""
        defaults = {**GRID_DEFAULTS["default"], **GRID_DEFAULTS.get(self.command, {})}
        data = self.to_dict()
        for key, value in defaults.items():
            if data.get(key) is None:
                data[key] = value
        return ExperimentConfig(**data)

    def fingerprint_params(self) -> dict[str, Any]:
        """Parameters that determine the artifacts"""
        params = self.to_dict()
        params.pop("output_dir")
        return params

    def merged(self, overrides: dict[str, Any]) -> "ExperimentConfig":
        """Copy with non-None overrides applied; unknown keys are rejected"""
        known = {f.name for f in fields(self)}
        unknown = sorted(set(overrides) - known)
        if unknown:
            raise ConfigError(
                "Unknown configuration field(s): {}".format(", ".join(unknown)),
                field=unknown[0],
                errors=[f"{name}: unknown field" for name in unknown],
            )
        data = self.to_dict()
        data.update({k: v for k, v in overrides.items() if v is not None})
        return ExperimentConfig(**data)


@dataclass
class ConfigIssue:
    """Configuration issue"""

    field: str
    message: str
    severity: str = "error"


@dataclass
class ConfigValidationResult:
    """Result of configuration validation"""

    is_valid: bool
    issues: list[ConfigIssue]

    def get_errors(self) -> list[ConfigIssue]:
        return [i for i in self.issues if i.severity == "error"]

    def get_warnings(self) -> list[ConfigIssue]:
        return [i for i in self.issues if i.severity == "warning"]

    def raise_if_invalid(self):
        errors = self.get_errors()
        if errors:
            raise ConfigError(
                "Invalid configuration: {}".format("; ".join(f"{i.field}: {i.message}" for i in errors)),
                field=errors[0].field,
                errors=[f"{i.field}: {i.message}" for i in errors],
            )


class ConfigValidator:
    """Validates an ExperimentConfig"""

    def validate(self, config: ExperimentConfig) -> ConfigValidationResult:
        issues: list[ConfigIssue] = []
        issues.extend(self._validate_fields(config))
        issues.extend(self._validate_grid(config))
        issues.extend(self._validate_input(config))

        is_valid = len([i for i in issues if i.severity == "error"]) == 0
        return ConfigValidationResult(is_valid=is_valid, issues=issues)

    def _validate_fields(self, config: ExperimentConfig) -> list[ConfigIssue]:
        v = Validator()
        v.field("command", config.command).required().in_list(COMMANDS)
        v.field("theta", config.theta).required()
        v.field("dim", config.dim).integer().in_list([1, 2, 3])
        v.field("angles", config.angles).integer().positive()
        v.field("band", config.band).optional().integer().non_negative()
        v.field("r", config.r).number().positive()
        v.field("points", config.points).integer().custom(lambda x: x >= 3, "At least 3 points are required")
        v.field("tolerance", config.tolerance).number().positive()
        v.field("t0", config.t0).number().nonzero()
        v.field("support_budget", config.support_budget).number().positive()
        v.field("y_max", config.y_max).number().custom(lambda x: float(x) > 1.0, "Must exceed 1")
        v.field("r_max", config.r_max).number().positive()
        v.field("t_max", config.t_max).number().custom(lambda x: float(x) >= 1.0, "Must be at least 1")
        v.field("windows", config.windows).integer().custom(lambda x: x >= 4, "At least 4 windows are required")
        v.field("directions", config.directions).integer().positive()
        v.field("samples", config.samples).integer().positive()
        v.field("seed", config.seed).integer().non_negative()
        return [ConfigIssue(e.field, e.message) for e in v.validate().errors]

    def _validate_grid(self, config: ExperimentConfig) -> list[ConfigIssue]:
        v = Validator()
        v.field("n", config.n).integer().even().between(4, 1 << 16)
        v.field("half_width", config.half_width).number().positive()
        issues = [ConfigIssue(e.field, e.message) for e in v.validate().errors]
        if config.command in ("mn-transform", "mn-decay", "schrodinger-mn", "plancherel") and isinstance(config.n, int):
            if config.n > 512:
                issues.append(
                    ConfigIssue("n", "Motion-group grids above 512 points per axis are slow", severity="warning")
                )
        return issues

    def _validate_input(self, config: ExperimentConfig) -> list[ConfigIssue]:
        if config.input is None:
            return []
        if not Path(config.input).is_file():
            return [ConfigIssue("input", f"Input file not found: {config.input}")]
        return []


def validate_config(config: ExperimentConfig) -> ConfigValidationResult:
    return ConfigValidator().validate(config)


def get_config_status(config: ExperimentConfig) -> dict:
    result = validate_config(config)
    return {
        "valid": result.is_valid,
        "errors": [{"field": i.field, "message": i.message} for i in result.get_errors()],
        "warnings": [{"field": i.field, "message": i.message} for i in result.get_warnings()],
    }


def read_config_file(path: str | Path) -> dict[str, Any]:
    """Parse a JSON config file into a flat dict of overrides"""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read config file {path}: {e}", field="config")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: {e.msg}", field="config", line=e.lineno, column=e.colno)
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a JSON object", field="config", line=1, column=1)
    return data


def load_config(
    command: str,
    config_path: str | Path | None = None,
    overrides: dict[str, Any] | None = None,
    settings: Settings | None = None,
) -> ExperimentConfig:
    """Defaults, then the JSON file, then explicit flags; validated."""
    settings = settings or Settings.from_env()
    config = ExperimentConfig(command=command, seed=settings.seed, output_dir=str(settings.output_dir))
    if config_path is not None:
        file_values = read_config_file(config_path)
        file_values.pop("command", None)
        config = config.merged(file_values)
    config = config.merged(dict(overrides or {}))
    config = config.resolved()
    validate_config(config).raise_if_invalid()
    return config
