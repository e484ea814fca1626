"""Tests for the ptentropy command-line interface."""

import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout

from ptentropy import __version__
from ptentropy.cli import EXIT_INVALID_INPUT, EXIT_OK, EXIT_VERIFY_FAILED, main


def run_cli(*argv):
    """Run the CLI quietly; returns (exit code, stdout, stderr)."""
    stdout, stderr = io.StringIO(), io.StringIO()
    with redirect_stdout(stdout), redirect_stderr(stderr):
        code = main(["-q", *argv])
    return code, stdout.getvalue(), stderr.getvalue()


class TestCLI(unittest.TestCase):
    """Exit codes and output of the CLI."""

    def test_version(self):
        code, out, _ = run_cli("--version")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, f"ptentropy {__version__}\n")

    def test_curve_is_deterministic(self):
        args = ("curve", "--bath-size", "1,2", "--samples", "11", "--t-end", "2")
        code, first, _ = run_cli(*args)
        self.assertEqual(code, EXIT_OK)
        _, second, _ = run_cli(*args)
        self.assertEqual(first, second)
        self.assertTrue(first.startswith(f"# ptentropy {__version__} "))
        self.assertIn("t,S,lambda1,lambda2,mu_I", first)

    def test_death_time_json(self):
        code, out, _ = run_cli("death-time", "--bath-size", "1", "--format", "json")
        self.assertEqual(code, EXIT_OK)
        rows = json.loads(out)["rows"]
        self.assertAlmostEqual(float(rows[0]["t_star"]), 1.24182, places=5)

    def test_curve_json_parses(self):
        code, out, _ = run_cli("curve", "--bath-size", "1,2", "--samples", "3", "--format", "json")
        self.assertEqual(code, EXIT_OK)
        curves = json.loads(out)["curves"]
        self.assertEqual([curve["N"] for curve in curves], [1, 2])
        self.assertEqual(curves[0]["columns"], ["t", "S", "lambda1", "lambda2", "mu_I"])

    def test_death_time_half_life(self):
        code, out, _ = run_cli("death-time", "--g", "0.3", "--kappa", "0.7", "--bath-size", "1,2,3")
        self.assertEqual(code, EXIT_OK)
        rows = [line.split(",") for line in out.splitlines()[2:]]
        self.assertEqual([row[1] for row in rows], ["none", "none", "none"])
        lives = [float(row[2]) for row in rows]
        self.assertTrue(lives[0] > lives[1] > lives[2])

    def test_asymptote(self):
        code, out, _ = run_cli("asymptote", "--g", "0.3", "--kappa", "0.7")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("0.3521", out)

    def test_invalid_input(self):
        for argv in (
            ("curve", "--c1", "0"),
            ("curve", "--g", "0.3", "--kappa", "0.7", "--c1", "0.5"),
            ("asymptote",),
            ("curve", "--bath-size", "1,x"),
            ("curve", "--t-start", "3", "--t-end", "1"),
            ("figures",),
        ):
            with self.subTest(argv=argv):
                code, out, err = run_cli(*argv)
                self.assertEqual(code, EXIT_INVALID_INPUT)
                self.assertEqual(out, "")
                self.assertTrue(err.startswith("error: "))
                self.assertEqual(err.count("\n"), 1)

    def test_config_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            config_path = os.path.join(tmp, "run.cfg")
            with open(config_path, "w", encoding="utf-8") as handle:
                handle.write("g = 0.3\nkappa = 0.7\nbath_size = 1\n")
            code, out, _ = run_cli("asymptote", "--config", config_path)
            self.assertEqual(code, EXIT_OK)
            self.assertIn("0.3521", out)
            code, _, _ = run_cli("asymptote", "--config", config_path, "--g", "0.7", "--kappa", "0.3")
            self.assertEqual(code, EXIT_INVALID_INPUT)
            with open(config_path, "a", encoding="utf-8") as handle:
                handle.write("colour = red\n")
            code, _, err = run_cli("asymptote", "--config", config_path)
            self.assertEqual(code, EXIT_INVALID_INPUT)
            self.assertIn("InvalidRunConfig", err)

    def test_output_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "spectrum.csv")
            code, out, _ = run_cli("spectrum", "--bath-size", "1", "--out", path)
            self.assertEqual(code, EXIT_OK)
            self.assertEqual(out, "")
            with open(path, encoding="utf-8") as handle:
                self.assertEqual(len(handle.read().splitlines()), 5)

    def test_verify_tampered(self):
        code, out, _ = run_cli("verify", "--tamper-mu", "2.0")
        self.assertEqual(code, EXIT_VERIFY_FAILED)
        payload = json.loads(out)
        self.assertFalse(payload["overall_pass"])
        self.assertTrue(any(report["name"].startswith("dyson residual") and not report["pass"]
                            for report in payload["reports"]))


if __name__ == '__main__':
    unittest.main()
