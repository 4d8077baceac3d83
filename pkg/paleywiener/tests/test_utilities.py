"""
Tests for paleywiener Utility Infrastructure
Run with: pytest paleywiener/tests/test_utilities.py
"""

import json
import math
import unittest

import numpy as np


class TestConfigModule(unittest.TestCase):
    """Test configuration layering and validation."""

    def test_resolved_uses_command_defaults(self):
        from paleywiener.utils.config import ExperimentConfig

        config = ExperimentConfig(command="schrodinger-rn").resolved()
        self.assertEqual(config.dim, 1)
        self.assertEqual(config.n, 16384)
        self.assertEqual(config.angles, 8)
        self.assertIsNone(config.band)

    def test_resolved_keeps_explicit_values(self):
        from paleywiener.utils.config import ExperimentConfig

        config = ExperimentConfig(command="plancherel", n=64).resolved()
        self.assertEqual(config.n, 64)
        self.assertEqual(config.half_width, 5.5)
        self.assertEqual(config.tolerance, 5e-3)

    def test_merged_ignores_none(self):
        from paleywiener.utils.config import ExperimentConfig

        config = ExperimentConfig().merged({"theta": "linear", "t0": None})
        self.assertEqual(config.theta, "linear")
        self.assertEqual(config.t0, 1.0)

    def test_merged_rejects_unknown(self):
        from paleywiener.exceptions import ConfigError
        from paleywiener.utils.config import ExperimentConfig

        with self.assertRaises(ConfigError) as ctx:
            ExperimentConfig().merged({"colour": "red"})
        self.assertEqual(ctx.exception.details["field"], "colour")

    def test_default_config_valid(self):
        from paleywiener.utils.config import ExperimentConfig, validate_config

        self.assertTrue(validate_config(ExperimentConfig().resolved()).is_valid)

    def test_invalid_fields_reported(self):
        from paleywiener.utils.config import ExperimentConfig, validate_config

        config = ExperimentConfig(t0=0.0, windows=2, n=7).resolved()
        result = validate_config(config)
        self.assertFalse(result.is_valid)
        self.assertEqual({i.field for i in result.get_errors()}, {"t0", "windows", "n"})

    def test_large_motion_grid_warns(self):
        from paleywiener.utils.config import ExperimentConfig, get_config_status

        status = get_config_status(ExperimentConfig(command="mn-transform", n=1024).resolved())
        self.assertTrue(status["valid"])
        self.assertEqual(status["warnings"][0]["field"], "n")

    def test_read_config_file_position(self):
        """Syntax errors carry line and column."""
        from paleywiener.exceptions import ConfigError
        from paleywiener.utils.config import read_config_file
        from paleywiener.utils.testing import TemporaryOutputDir

        with TemporaryOutputDir() as out:
            path = out / "broken.json"
            path.write_text('{"theta": "sqrt",\n  "dim": }\n', encoding="utf-8")
            with self.assertRaises(ConfigError) as ctx:
                read_config_file(path)
        self.assertEqual(ctx.exception.details["line"], 2)
        self.assertEqual(ctx.exception.details["column"], 10)

    def test_read_config_file_not_object(self):
        from paleywiener.exceptions import ConfigError
        from paleywiener.utils.config import read_config_file
        from paleywiener.utils.testing import TemporaryOutputDir

        with TemporaryOutputDir() as out:
            path = out / "list.json"
            path.write_text("[1, 2]", encoding="utf-8")
            with self.assertRaises(ConfigError):
                read_config_file(path)

    def test_load_config_layers(self):
        """Flags override the file, the file overrides defaults."""
        from paleywiener.utils.config import Settings, load_config
        from paleywiener.utils.testing import TemporaryOutputDir

        with TemporaryOutputDir() as out:
            path = out / "config.json"
            path.write_text(json.dumps({"theta": "linear", "t0": 2.0, "command": "plancherel"}), encoding="utf-8")
            settings = Settings.from_env({"PALEYWIENER_SEED": "7", "PALEYWIENER_OUTPUT_DIR": str(out)})
            config = load_config("classify", path, {"t0": 3.0}, settings=settings)
        self.assertEqual(config.command, "classify")
        self.assertEqual(config.theta, "linear")
        self.assertEqual(config.t0, 3.0)
        self.assertEqual(config.seed, 7)

    def test_settings_bad_seed(self):
        from paleywiener.exceptions import ConfigError
        from paleywiener.utils.config import Settings

        with self.assertRaises(ConfigError):
            Settings.from_env({"PALEYWIENER_SEED": "seven"})

    def test_fingerprint_params_drop_output_dir(self):
        from paleywiener.utils.config import ExperimentConfig

        a = ExperimentConfig(output_dir="/tmp/a").resolved().fingerprint_params()
        b = ExperimentConfig(output_dir="/tmp/b").resolved().fingerprint_params()
        self.assertEqual(a, b)
        self.assertNotIn("output_dir", a)


class TestValidatorsModule(unittest.TestCase):
    """Test chainable validation."""

    def test_chain_collects_errors(self):
        from paleywiener.utils.validators import Validator

        result = (
            Validator()
            .field("n", 7).integer().even()
            .field("half_width", -1.0).number().positive()
            .field("band", None).optional().integer()
            .validate()
        )
        self.assertFalse(result.is_valid)
        self.assertEqual([e.field for e in result.errors], ["n", "half_width"])

    def test_bool_is_not_integer(self):
        from paleywiener.utils.validators import Validator

        self.assertFalse(Validator().field("n", True).integer().validate().is_valid)

    def test_non_finite_number(self):
        from paleywiener.utils.validators import Validator

        self.assertFalse(Validator().field("r", math.inf).number().validate().is_valid)

    def test_raise_if_invalid(self):
        from paleywiener.exceptions import PaleyWienerValidationError
        from paleywiener.utils.validators import validate_grid, validate_or_throw

        validate_or_throw(validate_grid(2, 1.5, 64))
        with self.assertRaises(PaleyWienerValidationError):
            validate_or_throw(validate_grid(4, 1.5, 64))

    def test_log_integral_args(self):
        from paleywiener.utils.validators import validate_log_integral_args

        self.assertTrue(validate_log_integral_args(2.0**20, 20).is_valid)
        self.assertFalse(validate_log_integral_args(0.5, 20).is_valid)
        self.assertFalse(validate_log_integral_args(2.0**20, 2).is_valid)


class TestSerializationModule(unittest.TestCase):
    """Test artifact writing."""

    def test_to_jsonable(self):
        from paleywiener.utils.serialization import to_jsonable

        data = to_jsonable({"a": np.int64(3), "b": math.nan, "c": -math.inf, "d": 1 + 2j, "e": np.arange(2)})
        self.assertEqual(data, {"a": 3, "b": None, "c": "-inf", "d": {"re": 1.0, "im": 2.0}, "e": [0, 1]})

    def test_dumps_sorted(self):
        from paleywiener.utils.serialization import dumps

        self.assertEqual(dumps({"b": 1, "a": 2}), dumps({"a": 2, "b": 1}))

    def test_write_artifact(self):
        from paleywiener.utils.serialization import load_json, read_csv, write_artifact
        from paleywiener.utils.testing import TemporaryOutputDir

        with TemporaryOutputDir() as out:
            written = write_artifact(out, "demo", {"passed": True}, ["r", "value"], [(0.5, 1.0 / 3.0), (1, 2)])
            report = load_json(written["json"])
            columns, data = read_csv(written["csv"])
        self.assertEqual(report["payload"], "demo.csv")
        self.assertEqual(columns, ["r", "value"])
        self.assertEqual(data.shape, (2, 2))
        self.assertEqual(data[0, 1], 1.0 / 3.0)

    def test_json_only_artifact(self):
        from paleywiener.utils.serialization import write_artifact
        from paleywiener.utils.testing import TemporaryOutputDir

        with TemporaryOutputDir() as out:
            written = write_artifact(out, "demo", {"passed": False})
            self.assertNotIn("csv", written)
            self.assertFalse((out / "demo.csv").exists())


class TestFingerprintModule(unittest.TestCase):
    """Test run fingerprints and the result cache."""

    def test_key_order_independent(self):
        from paleywiener.utils.fingerprint import generate_key

        a = generate_key("classify", theta="sqrt", windows=20)
        b = generate_key("classify", windows=20, theta="sqrt")
        self.assertEqual(a, b)
        self.assertEqual(len(a), 16)
        self.assertNotEqual(a, generate_key("classify", theta="linear", windows=20))

    def test_get_or_execute(self):
        from paleywiener.utils.fingerprint import ResultCache

        cache = ResultCache("test")
        calls = []

        def compute(x):
            calls.append(x)
            return x * 2

        self.assertEqual(cache.get_or_execute("double", compute, x=3), (6, False))
        self.assertEqual(cache.get_or_execute("double", compute, x=3), (6, True))
        self.assertEqual(calls, [3])

    def test_eviction(self):
        from paleywiener.utils.fingerprint import ResultCache

        cache = ResultCache("test", max_entries=2)
        keys = [cache.make_key("op", i=i) for i in range(3)]
        for i, key in enumerate(keys):
            cache.store(key, i)
        self.assertFalse(cache.check(keys[0]).is_hit)
        self.assertTrue(cache.check(keys[2]).is_hit)


class TestMetricsModule(unittest.TestCase):
    """Test in-process metrics."""

    def setUp(self):
        from paleywiener.utils.metrics import metrics

        metrics.reset()

    def test_timer(self):
        from paleywiener.utils.metrics import MetricsCollector

        collector = MetricsCollector()
        with collector.timer("step"):
            pass
        stats = collector.get_timing_stats("step")
        self.assertEqual(stats["count"], 1)
        self.assertGreaterEqual(stats["min"], 0.0)

    def test_record_experiment(self):
        from paleywiener.utils.metrics import get_metrics_summary, metrics, record_experiment

        record_experiment("classify", 0, 12.0)
        record_experiment("classify", 2, 8.0)
        summary = get_metrics_summary("classify")
        self.assertEqual(summary["experiments"], 2)
        self.assertEqual(summary["latency"]["count"], 2)
        self.assertEqual(metrics.get_counter("experiments_failed", tags={"command": "classify"}), 1)

    def test_record_certificate(self):
        from paleywiener.utils.metrics import get_metrics_summary, record_certificate

        record_certificate(True)
        record_certificate(False)
        self.assertEqual(get_metrics_summary()["certificates"], {"total": 2, "passed": 1})

    def test_reset_clears_counters_and_timings(self):
        """reset() empties every series the collector keeps."""
        from paleywiener.utils.metrics import MetricsCollector

        collector = MetricsCollector()
        collector.increment("runs", tags={"command": "classify"})
        collector.timing("step", 3.0)
        collector.reset()
        self.assertEqual(collector.get_counter("runs", tags={"command": "classify"}), 0)
        self.assertEqual(collector.get_timing_stats("step"), {"count": 0})


class TestLoggingModule(unittest.TestCase):
    """Test structured logging."""

    def tearDown(self):
        from paleywiener.utils.logging import CorrelationContext

        CorrelationContext.clear()

    def test_json_line_with_context(self):
        from paleywiener.utils.logging import CorrelationContext, StructuredLogger, log_context
        from paleywiener.utils.testing import CapturedLogs

        CorrelationContext.set_id("run-1")
        with CapturedLogs() as logs, log_context(command="classify"):
            StructuredLogger("paleywiener.test").info("Classified", verdict="Convergent")
        entry = json.loads(logs.lines[-1])
        self.assertEqual(entry["correlation_id"], "run-1")
        self.assertEqual(entry["level"], "INFO")
        self.assertEqual(entry["data"], {"command": "classify", "verdict": "Convergent"})

    def test_context_restored(self):
        from paleywiener.utils.logging import get_log_context, log_context

        with log_context(a=1):
            with log_context(b=2):
                self.assertEqual(get_log_context(), {"a": 1, "b": 2})
            self.assertEqual(get_log_context(), {"a": 1})
        self.assertEqual(get_log_context(), {})

    def test_correlation_id_generated(self):
        from paleywiener.utils.logging import CorrelationContext

        first = CorrelationContext.get_id()
        self.assertEqual(len(first), 12)
        self.assertEqual(CorrelationContext.get_id(), first)

    def test_experiment_event_error_level(self):
        from paleywiener.utils.logging import StructuredLogger
        from paleywiener.utils.testing import CapturedLogs

        with CapturedLogs() as logs:
            StructuredLogger("paleywiener.test").experiment_event("construct", "errored", exit_code=1, error="boom")
        entry = json.loads(logs.lines[-1])
        self.assertEqual(entry["level"], "ERROR")
        self.assertEqual(entry["data"]["exit_code"], 1)

    def test_log_action_reraises(self):
        from paleywiener.exceptions import PaleyWienerError
        from paleywiener.logger import log_action
        from paleywiener.utils.testing import CapturedLogs

        @log_action("Demo")
        def refuse():
            raise PaleyWienerError("refused", code="DEMO")

        with CapturedLogs() as logs:
            with self.assertRaises(PaleyWienerError):
                refuse()
        self.assertTrue(any("DEMO" in line for line in logs.lines))


class TestErrors(unittest.TestCase):
    """Test error reports."""

    def test_to_dict(self):
        from paleywiener.exceptions import ConfigError

        error = ConfigError("bad", field="n", line=3, column=4)
        self.assertEqual(
            error.to_dict(),
            {
                "error": "ConfigError",
                "message": "bad",
                "code": "CONFIG_ERROR",
                "details": {"field": "n", "line": 3, "column": 4},
            },
        )
        self.assertEqual(str(error), "[CONFIG_ERROR] bad")


class TestMotionRecipes(unittest.TestCase):
    """Test motion-group input recipes."""

    def test_two_mode_recipe(self):
        from paleywiener.battery import motion_profile_from_recipe

        evaluate, radius = motion_profile_from_recipe(
            {"sum": [{"kind": "gaussian", "alpha": 1.0}, {"kind": "gaussian", "alpha": 1.0, "weight": 0.5, "mode": 2}]}
        )
        x = np.array([[0.0, 0.0]])
        beta = 0.3
        self.assertAlmostEqual(complex(evaluate(x, beta)[0]), 1.0 + 0.5 * np.exp(0.6j), delta=1e-15)
        self.assertGreater(radius, 0.0)

    def test_single_item_is_mode_zero(self):
        from paleywiener.battery import motion_profile_from_recipe

        evaluate, radius = motion_profile_from_recipe({"kind": "bump", "radius": 1.0, "power": 4})
        x = np.array([[0.0, 0.0], [2.0, 0.0]])
        np.testing.assert_allclose(evaluate(x, 1.1), [1.0, 0.0])
        self.assertEqual(radius, 1.0)

    def test_unknown_kind(self):
        from paleywiener.battery import motion_profile_from_recipe
        from paleywiener.exceptions import ConfigError

        with self.assertRaises(ConfigError):
            motion_profile_from_recipe({"kind": "wavelet"})


if __name__ == "__main__":
    unittest.main()
