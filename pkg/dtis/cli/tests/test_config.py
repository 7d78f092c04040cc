import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from dtis.cli.config import (
    RunConfig,
    load_run_config,
    parse_config_lines,
    resolve,
)
from dtis.cli.exceptions import ConfigurationError
from dtis.geometry.types import Layout
from dtis.optimizer.types import Mode

from .factories import RunConfigFactory


class ParseConfigTest(SimpleTestCase):
    def test_comments_and_blank_lines_are_skipped(self) -> None:
        lines = [
            "# a comment",
            "",
            "scenario = tc2",
            "  particles=12  ",
            "snr_db =",
        ]
        self.assertEqual(
            parse_config_lines(lines),
            {"scenario": "tc2", "particles": "12", "snr_db": ""},
        )

    def test_rejects_lines_without_assignment(self) -> None:
        with self.assertRaisesMessage(ConfigurationError, "Line 2"):
            parse_config_lines(["seed = 3", "particles 12"])


class ResolveTest(SimpleTestCase):
    def test_defaults(self) -> None:
        config = resolve({})
        self.assertEqual(config.scenario, "tc1")
        self.assertEqual(config.mode, Mode.SBD)
        self.assertEqual((config.n_side, config.n_side_fw), (20, 40))
        self.assertEqual((config.views, config.probes), (18, 18))
        self.assertEqual(config.rho_o, 3.0)
        self.assertIsNone(config.snr_db)
        self.assertEqual(config.particles, 10)
        self.assertEqual(config.iterations, 100)
        self.assertEqual(config.go_iterations, 100)
        self.assertEqual(config.initial_samples, 40)
        self.assertEqual(
            (config.inertia, config.cognitive, config.social),
            (0.4, 2.0, 2.0),
        )
        self.assertEqual(config.seeds, (1, 2, 3, 4, 5))
        self.assertFalse(config.fit_beta)
        self.assertFalse(config.report_eta)
        self.assertFalse(config.allow_inverse_crime)
        self.assertEqual(config.samples_per_segment, 32)

    def test_scenario_defaults(self) -> None:
        test_cases = [
            {"scenario": "tc2", "iterations": 80, "s0": 60, "snr": 10.0},
            {"scenario": "tc3a", "iterations": 85, "s0": 55, "snr": 10.0},
            {"scenario": "tc4", "iterations": 60, "s0": 80, "snr": 10.0},
            {"scenario": "tc5", "iterations": 85, "s0": 55, "snr": None},
        ]
        for test in test_cases:
            with self.subTest(scenario=test["scenario"]):
                config = resolve({"scenario": test["scenario"]})
                self.assertEqual(config.iterations, test["iterations"])
                self.assertEqual(config.go_iterations, test["iterations"])
                self.assertEqual(config.initial_samples, test["s0"])
                self.assertEqual(config.snr_db, test["snr"])

    def test_measured_setup(self) -> None:
        config = resolve({"scenario": "tc5"})
        self.assertEqual((config.views, config.probes), (8, 241))
        self.assertAlmostEqual(config.side, 0.2 / 0.15)
        self.assertAlmostEqual(config.rho_o, 1.67 / 0.15)

    def test_casting(self) -> None:
        config = resolve(
            {
                "mode": "go",
                "particles": "7",
                "inertia": "0.7",
                "fit_beta": "true",
                "report_eta": "1",
                "seeds": "4,9,16",
                "snr_db": "5",
                "tau": "2",
                "iterations": "30",
                "go_iterations": "50",
            }
        )
        self.assertEqual(config.mode, Mode.GO)
        self.assertEqual(config.particles, 7)
        self.assertEqual(config.inertia, 0.7)
        self.assertTrue(config.fit_beta)
        self.assertTrue(config.report_eta)
        self.assertEqual(config.seeds, (4, 9, 16))
        self.assertEqual(config.snr_db, 5.0)
        self.assertEqual(config.tau, 2.0)
        self.assertEqual(config.go_iterations, 50)

    def test_empty_snr_means_noiseless(self) -> None:
        self.assertIsNone(resolve({"scenario": "tc2", "snr_db": ""}).snr_db)

    def test_invalid_settings(self) -> None:
        test_cases = [
            {"raw": {"colour": "red"}, "message": "Unknown keys: colour"},
            {"raw": {"scenario": "tc9"}, "message": "Unknown scenario"},
            {"raw": {"mode": "fast"}, "message": "mode must be"},
            {"raw": {"particles": "many"}, "message": "particles"},
            {"raw": {"particles": "1"}, "message": "P >= 2"},
            {"raw": {"n_side_fw": "20"}, "message": "allow_inverse_crime"},
            {"raw": {"tau": "7"}, "message": "tau_max"},
            {"raw": {"seeds": "1,1"}, "message": "distinct"},
            {"raw": {"seeds": "1,x"}, "message": "seeds"},
            {"raw": {"velocity_clamp": "0"}, "message": "clamp"},
            {"raw": {"views": "0"}, "message": "views"},
        ]
        for test in test_cases:
            with self.subTest(raw=test["raw"]):
                with self.assertRaisesMessage(
                    ConfigurationError, test["message"]
                ):
                    resolve(test["raw"])

    def test_inverse_crime_can_be_allowed(self) -> None:
        config = resolve({"n_side_fw": "20", "allow_inverse_crime": "true"})
        self.assertEqual(config.n_side, config.n_side_fw)


class LoadRunConfigTest(SimpleTestCase):
    def test_overrides_win_over_the_file(self) -> None:
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "run.cfg"
            path.write_text("# tc2 study\nscenario = tc2\nparticles = 6\n")
            config = load_run_config(path, {"particles": "8"})
        self.assertEqual(config.scenario, "tc2")
        self.assertEqual(config.particles, 8)

    def test_missing_file(self) -> None:
        with self.assertRaisesMessage(ConfigurationError, "Cannot read"):
            load_run_config(Path("/nonexistent/run.cfg"))


class RunConfigTest(SimpleTestCase):
    def test_hash_is_stable_and_sensitive(self) -> None:
        first = RunConfigFactory(seed=3)
        self.assertEqual(first.hash, RunConfigFactory(seed=3).hash)
        self.assertEqual(len(first.hash), 12)
        self.assertNotEqual(first.hash, RunConfigFactory(seed=4).hash)
        self.assertNotEqual(
            first.hash, RunConfigFactory(seed=3, particles=4).hash
        )

    def test_values_are_canonical_text(self) -> None:
        values = RunConfig().values()
        self.assertEqual(values["snr_db"], "")
        self.assertEqual(values["fit_beta"], "false")
        self.assertEqual(values["side"], "2")
        self.assertEqual(values["seeds"], "1,2,3,4,5")
        self.assertEqual(values["mode"], "sbd")

    def test_inversion_settings(self) -> None:
        test_cases = [
            {"scenario": "tc1", "layout": Layout.SINGLE, "k": 8},
            {"scenario": "tc2", "layout": Layout.SINGLE, "k": 12},
            {
                "scenario": "tc3b",
                "layout": Layout.DOUBLY_CONNECTED,
                "k": 11,
            },
            {"scenario": "tc4", "layout": Layout.MULTI_OBJECT, "k": 16},
        ]
        for test in test_cases:
            with self.subTest(scenario=test["scenario"]):
                config = RunConfigFactory(scenario=test["scenario"], seed=5)
                inversion = config.inversion()
                self.assertEqual(inversion.layout, test["layout"])
                self.assertEqual(inversion.k, test["k"])
                self.assertEqual(inversion.seed, 5)
                self.assertEqual(config.inversion(seed=9).seed, 9)
