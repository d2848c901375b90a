"""Unit tests for the relcurv command
    with exit codes and output files.
"""
import csv
import io
import json
import os
import shutil
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from unittest import TestCase

import numpy as np

from relcurv.cli import main
from relcurv.const import EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK, EXIT_VERIFICATION

from tests.const import (
    TEST_BROKEN_CONFIG,
    TEST_COLLAPSE_CONFIG,
    TEST_COSH_CONFIG,
    TEST_SPHERE_CONFIG,
    TEST_SPHERE_MERIDIAN_CONFIG,
    TEST_SURFACE_CONFIG,
)

FAILING_EXPECTATION_CONFIG = TEST_SPHERE_CONFIG + "expect = { locally_symmetric = false }\n"
REQUIRED_ELLIPTIC_CONFIG = TEST_SPHERE_CONFIG + 'require = ["elliptic"]\n'


class CliTest(TestCase):
    """Commands run on temporary configuration files."""

    def setUp(self) -> None:
        """Scratch directory and captured streams"""
        self.directory = tempfile.mkdtemp()
        self.stderr = io.StringIO()
        self.stdout = io.StringIO()

    def tearDown(self) -> None:
        """Remove the scratch directory"""
        shutil.rmtree(self.directory)

    def _config(self, text: str, name: str = "run.toml") -> str:
        path = os.path.join(self.directory, name)
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
        return path

    def _run(self, *args: str) -> int:
        with redirect_stderr(self.stderr), redirect_stdout(self.stdout):
            return main(list(args))

    def _read_csv(self, path: str) -> list:
        with open(path, encoding="utf-8", newline="") as handle:
            return list(csv.DictReader(handle))

    def test_verify_sphere(self) -> None:
        """Every check passes on the round sphere"""
        out = os.path.join(self.directory, "verify.jsonl")
        code = self._run("verify", "--config", self._config(TEST_SPHERE_CONFIG), "--out", out)
        self.assertEqual(code, EXIT_OK)
        with open(out, encoding="utf-8") as handle:
            lines = [json.loads(line) for line in handle]
        self.assertTrue(all(line["passed"] for line in lines[:-1]))
        self.assertEqual(lines[-1]["summary"]["failed"], [])
        self.assertIn("sphere-scalar", [line.get("check") for line in lines])

    def test_verify_failing_expectation(self) -> None:
        """A flag that does not hold fails verification"""
        path = self._config(FAILING_EXPECTATION_CONFIG)
        code = self._run("verify", "--config", path, "--out", "-")
        self.assertEqual(code, EXIT_VERIFICATION)
        self.assertIn("ERROR:1:VerificationFailure:", self.stderr.getvalue())
        summary = json.loads(self.stdout.getvalue().splitlines()[-1])["summary"]
        self.assertEqual(summary["failed"], ["classification"])

    def test_verify_required_check(self) -> None:
        """A required check that does not apply fails verification"""
        path = self._config(REQUIRED_ELLIPTIC_CONFIG)
        self.assertEqual(self._run("verify", "--config", path, "--out", "-"), EXIT_VERIFICATION)
        summary = json.loads(self.stdout.getvalue().splitlines()[-1])["summary"]
        self.assertEqual(summary["failed"], ["elliptic"])

    def test_meridian_sphere(self) -> None:
        """B = 1 from r = 1 traces the unit circle"""
        out = os.path.join(self.directory, "meridian.csv")
        path = self._config(TEST_SPHERE_MERIDIAN_CONFIG)
        self.assertEqual(self._run("meridian", "--config", path, "--out", out), EXIT_OK)
        rows = self._read_csv(out)
        self.assertEqual(len(rows), 51)
        t = np.array([float(row["t"]) for row in rows])
        r = np.array([float(row["r"]) for row in rows])
        np.testing.assert_allclose(t ** 2 + r ** 2, 1.0, atol=1e-7)

    def test_analyze_cosh(self) -> None:
        """The catenoid is directed but not pointwise constant"""
        out = os.path.join(self.directory, "analyze.csv")
        path = self._config(TEST_COSH_CONFIG)
        self.assertEqual(self._run("analyze", "--config", path, "--out", out), EXIT_OK)
        rows = self._read_csv(out)
        self.assertEqual(len(rows), 3)
        self.assertEqual({row["directed"] for row in rows}, {"true"})
        self.assertEqual({row["pointwise_constant"] for row in rows}, {"false"})
        self.assertEqual({row["locally_symmetric"] for row in rows}, {"false"})

    def test_deterministic(self) -> None:
        """Same seed, same bytes, whatever the worker count"""
        path = self._config(TEST_COSH_CONFIG)
        outputs = []
        for index, workers in enumerate(("1", "1", "2")):
            out = os.path.join(self.directory, f"analyze{index}.csv")
            code = self._run("analyze", "--config", path, "--out", out, "--workers", workers,
                             "--seed", "5")
            self.assertEqual(code, EXIT_OK)
            with open(out, "rb") as handle:
                outputs.append(handle.read())
        self.assertEqual(outputs[0], outputs[1])
        self.assertEqual(outputs[0], outputs[2])

    def test_lemma23(self) -> None:
        """Only the zero tensor satisfies the symmetric space constraints"""
        out = os.path.join(self.directory, "rank.csv")
        path = self._config(TEST_SPHERE_CONFIG)
        self.assertEqual(self._run("lemma23", "--config", path, "--out", out), EXIT_OK)
        rows = self._read_csv(out)
        self.assertEqual([row["n"] for row in rows], ["2"])
        self.assertEqual(rows[0]["dim_constrained"], "0")
        self.assertGreater(int(rows[0]["dim_sym"]), 0)

    def test_export_mesh(self) -> None:
        """Surfaces export, hypersurfaces do not"""
        out = os.path.join(self.directory, "mesh.obj")
        path = self._config(TEST_SURFACE_CONFIG)
        self.assertEqual(self._run("export-mesh", "--config", path, "--out", out), EXIT_OK)
        with open(out, encoding="utf-8") as handle:
            lines = handle.read().splitlines()
        self.assertEqual(sum(line.startswith("v ") for line in lines), 128)
        self.assertEqual(sum(line.startswith("f ") for line in lines), 224)

        path = self._config(TEST_COSH_CONFIG, "cosh.toml")
        self.assertEqual(self._run("export-mesh", "--config", path, "--out", out), EXIT_CONFIG)

    def test_broken_config(self) -> None:
        """Syntax errors exit with 2 and name the line"""
        code = self._run("analyze", "--config", self._config(TEST_BROKEN_CONFIG))
        self.assertEqual(code, EXIT_CONFIG)
        self.assertIn("ERROR:2:ConfigSyntax:line 4", self.stderr.getvalue())

    def test_missing_config(self) -> None:
        """An unreadable config is a configuration error"""
        code = self._run("analyze", "--config", os.path.join(self.directory, "none.toml"))
        self.assertEqual(code, EXIT_CONFIG)

    def test_collapse(self) -> None:
        """A meridian reaching the axis is a numerical failure"""
        code = self._run("meridian", "--config", self._config(TEST_COLLAPSE_CONFIG))
        self.assertEqual(code, EXIT_NUMERICAL)
        self.assertIn("ERROR:3:RadiusCollapse:", self.stderr.getvalue())

    def test_workers(self) -> None:
        """At least one worker"""
        path = self._config(TEST_SPHERE_CONFIG)
        self.assertEqual(self._run("analyze", "--config", path, "--workers", "0"), EXIT_CONFIG)
