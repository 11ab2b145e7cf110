import json
import tempfile
import unittest
from pathlib import Path

from main import main
from src.commands import (
    analytic,
    collapse,
    peak,
    run_command,
    scale,
    sweep,
    verify,
    write_tables,
)
from src.commands.common import synthetic_oracle
from src.enums import Command, ExitCode
from src.exceptions import ConfigError
from src.model import BandedSpinMatrix, ModelParams, build_hamiltonian
from src.output import RunConfig, read_csv
from src.output.config import SyntheticSection
from src.settings import DEFAULT_TOL, DENSE_CAP

CREATED = "2024-01-01T00:00:00+00:00"
SYNTHETIC = {"mu": 4 / 3, "nu": 2 / 3, "delta": 2 / 3, "amplitude": 1.0}
SMALL_VERIFY = {
    "sizes": [4, 8],
    "gammas": [0.5],
    "fields": [0.5, 1.5],
    "pauli_sizes": [4],
    "krylov_size": 8,
}


def _sign_flipped(params: ModelParams) -> BandedSpinMatrix:
    M = build_hamiltonian(params)
    return BandedSpinMatrix(M.diag, -M.offdiag2)


class TestSweep(unittest.TestCase):
    def test_output_is_reproducible(self):
        config = RunConfig.from_json(
            {"sweep": {"sizes": [16], "h": {"start": 0.5, "stop": 1.5, "points": 5}}}
        )
        first = sweep.run(config)[0].to_csv_text(CREATED)
        second = sweep.run(config)[0].to_csv_text(CREATED)
        self.assertEqual(first, second)

    def test_rows_and_inset(self):
        config = RunConfig.from_json(
            {"sweep": {"sizes": [16], "h": {"values": [0.5, 1.5]}, "inset": True}}
        )
        table = sweep.run(config)[0]
        self.assertEqual(len(table), 2)
        self.assertEqual(table.column("method"), ["perturbative", "perturbative"])
        below, above = table.rows
        self.assertIsNotNone(below["hp_subleading"])
        self.assertIsNone(above["hp_subleading"])

    def test_inset_needs_unit_coupling(self):
        config = RunConfig.from_json({"lam": 2.0, "sweep": {"sizes": [16], "inset": True}})
        with self.assertRaises(ConfigError):
            sweep.run(config)


class TestPeak(unittest.TestCase):
    def test_synthetic_peaks_with_shifted_critical_field(self):
        config = RunConfig.from_json(
            {
                "peak": {
                    "sizes": [256, 1024],
                    "gammas": [0.5],
                    "synthetic": SYNTHETIC | {"h_c": 1.5},
                }
            }
        )
        (table,) = peak.run(config)
        self.assertEqual(table.name, "peak")
        for row in table.rows:
            with self.subTest(N=row["N"]):
                expected = row["N"] ** (-2 / 3)
                self.assertAlmostEqual(row["h_c_minus_h_max"], expected, delta=1e-5)
                self.assertLessEqual(row["evaluations"], 40)


class TestScale(unittest.TestCase):
    def test_synthetic_exponents(self):
        config = RunConfig.from_json(
            {
                "scale": {
                    "sizes": [256, 512, 1024, 2048, 4096],
                    "gammas": [0.5],
                    "windows": [[256, 4096], [1024, 4096]],
                    "synthetic": SYNTHETIC,
                }
            }
        )
        table, peaks = scale.run(config)
        self.assertEqual(len(table), 2)
        self.assertEqual(len(peaks), 5)
        for row in table.rows:
            self.assertAlmostEqual(row["mu"], 4 / 3, delta=1e-5)
            self.assertAlmostEqual(row["delta"], 2 / 3, delta=1e-3)
        self.assertEqual(table.column("n_sizes"), [5, 3])

    def test_noise_is_seeded(self):
        data = {
            "scale": {
                "sizes": [256, 1024, 4096],
                "gammas": [0.5],
                "windows": [[256, 4096]],
                "synthetic": SYNTHETIC | {"noise": 0.05},
            }
        }
        a = scale.run(RunConfig.from_json(data))[0].to_csv_text(CREATED)
        b = scale.run(RunConfig.from_json(data))[0].to_csv_text(CREATED)
        c = scale.run(RunConfig.from_json(data | {"seed": 7}))[0].to_csv_text(CREATED)
        self.assertEqual(a, b)
        self.assertNotEqual(a.splitlines()[-1], c.splitlines()[-1])


class TestCollapse(unittest.TestCase):
    def test_single_size_is_invalid(self):
        with self.assertRaises(ConfigError):
            RunConfig.from_json({"collapse": {"sizes": [1024]}})

    def test_synthetic_collapse(self):
        config = RunConfig.from_json(
            {
                "collapse": {
                    "sizes": [256, 1024, 4096],
                    "gammas": [0.5],
                    "synthetic": SYNTHETIC,
                }
            }
        )
        curves, summary = collapse.run(config)
        (row,) = summary.rows
        self.assertAlmostEqual(row["nu"], 2 / 3, delta=0.01)
        self.assertEqual(row["nu_half"], row["nu"] / 2)
        self.assertAlmostEqual(row["mu"], 4 / 3, delta=1e-4)
        self.assertTrue(row["alpha_symmetric_passed"])
        self.assertEqual(sorted(set(curves.column("N"))), [256, 1024, 4096])
        oracle = synthetic_oracle(SyntheticSection(**SYNTHETIC))
        for row in curves.rows:
            expected = oracle.for_size(row["N"])(row["h"])
            self.assertAlmostEqual(row["chi"], expected, delta=1e-12 * expected)
        self.assertIn("collapse_objective", summary.metadata)
        self.assertIn("nu_convention", summary.metadata)


class TestAnalytic(unittest.TestCase):
    def test_symmetric_row(self):
        row = analytic._row(2.0, 256, 0.5, True, DEFAULT_TOL, DENSE_CAP)
        self.assertAlmostEqual(row["chi_hp_leading"], 3.4722e-3, delta=1e-7)
        self.assertLess(row["chi_relative_error"], 0.1)
        self.assertLess(row["gap_relative_error"], 0.1)
        self.assertEqual(row["flag"], "")

    def test_critical_point_is_flagged(self):
        row = analytic._row(1.0, 64, 0.5, True, DEFAULT_TOL, DENSE_CAP)
        self.assertEqual(row["flag"], "singular")
        self.assertIsNone(row["chi_relative_error"])
        self.assertGreater(row["chi_ed"], 0)

    def test_needs_unit_coupling(self):
        with self.assertRaises(ConfigError):
            analytic.run(RunConfig(lam=0.5))


class TestVerify(unittest.TestCase):
    def setUp(self):
        self.config = RunConfig.from_json({"verify": SMALL_VERIFY})

    def test_correct_builder_passes(self):
        table = verify.run(self.config)[0]
        self.assertEqual(verify.failures(table), 0)
        checks = set(table.column("check"))
        self.assertTrue(
            {"matvec", "pauli_energy", "pauli_vector", "krylov_vs_direct"} <= checks
        )

    def test_sign_error_is_caught_by_the_vector_check(self):
        results = verify.run_suite(self.config, build=_sign_flipped)
        failed = {r.check for r in results if not r.passed}
        self.assertEqual(failed, {"pauli_vector"})


class TestWriteTables(unittest.TestCase):
    def test_csv_and_svg(self):
        with tempfile.TemporaryDirectory() as tmp:
            config = RunConfig.from_json(
                {
                    "out": tmp,
                    "svg": True,
                    "sweep": {"sizes": [8], "h": {"values": [0.5, 1.5]}},
                }
            )
            paths = write_tables(
                Command.SWEEP, run_command(Command.SWEEP, config), config, CREATED
            )
            self.assertEqual([p.name for p in paths], ["sweep.csv", "sweep.svg"])
            self.assertEqual(len(read_csv(paths[0])), 2)


class TestMain(unittest.TestCase):
    def _write_config(self, tmp: str, data: dict) -> str:
        path = Path(tmp) / "run.json"
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    def test_verify_succeeds(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = self._write_config(tmp, {"verify": SMALL_VERIFY})
            code = main(["verify", "--config", path, "--out", tmp])
            self.assertEqual(code, ExitCode.SUCCESS)
            self.assertTrue((Path(tmp) / "verify.csv").exists())

    def test_invalid_config(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = self._write_config(tmp, {"jobs": 0})
            self.assertEqual(main(["sweep", "--config", path]), ExitCode.INVALID_CONFIG)

    def test_invalid_coupling_for_analytic(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = self._write_config(tmp, {"lam": 2.0})
            code = main(["analytic", "--config", path, "--out", tmp])
            self.assertEqual(code, ExitCode.INVALID_CONFIG)

    def test_non_numeric_list_value(self):
        with tempfile.TemporaryDirectory() as tmp:
            for data in (
                {"verify": {"fields": ["x"]}},
                {"sweep": {"h": {"values": ["low"]}}},
            ):
                with self.subTest(data=data):
                    path = self._write_config(tmp, data)
                    code = main(["verify", "--config", path, "--out", tmp])
                    self.assertEqual(code, ExitCode.INVALID_CONFIG)
