"""Tests for the truncated Fock-space oracle."""

import math
import unittest
from unittest import mock

import numpy as np

from ptentropy.engine import ModelParams, entropy_curve, sudden_death_time
from ptentropy.errors import InvalidParameters, StepSizeTooLarge, UnsupportedTruncation
from ptentropy.oracle import (
    build_basis,
    build_eta,
    build_generators,
    build_H,
    build_metric,
    commutator_table_check,
    discrepancy_report,
    dyson_hermiticity,
    dyson_residual,
    frame_consistency_check,
    integrate_alpha_beta,
    metric_positivity,
    propagate_state,
    pt_check,
)
from ptentropy.oracle.checks import CheckReport, format_combination

UNBROKEN = ModelParams(nu=1.0, g=0.7, kappa=0.3)
EXCEPTIONAL = ModelParams(nu=1.0, g=0.5, kappa=0.5)
BROKEN = ModelParams(nu=1.0, g=0.3, kappa=0.7)
REGIMES = (UNBROKEN, EXCEPTIONAL, BROKEN)


class TestFockSpace(unittest.TestCase):
    """Basis, generators and Hamiltonian."""

    def test_basis_dimensions(self):
        self.assertEqual(build_basis(1, 1).dim, 3)
        self.assertEqual(build_basis(3, 1).dim, 5)
        self.assertEqual(build_basis(2, 2).dim, 10)
        self.assertEqual(build_basis(2, 1).states[0], (0, 0, 0))
        with self.assertRaises(UnsupportedTruncation):
            build_basis(1, 3)
        with self.assertRaises(UnsupportedTruncation):
            build_basis(1, 0)
        with self.assertRaises(InvalidParameters):
            build_basis(0, 1)

    def test_generator_sector_blocks(self):
        for n in (1, 3):
            generators = build_generators(build_basis(n, 1))
            for operator in generators.values():
                self.assertTrue(operator.is_hermitian())
            np.testing.assert_allclose(generators["N_AQ"].sector_block(), np.diag([1.0, -1.0]), atol=1e-12)
            np.testing.assert_allclose(generators["A_x"].sector_block(), [[0, 1], [1, 0]], atol=1e-12)
            np.testing.assert_allclose(generators["A_y"].sector_block(), [[0, 1j], [-1j, 0]], atol=1e-12)

    def test_hamiltonian_sector(self):
        block = build_H(build_basis(1, 1), UNBROKEN).sector_block()
        np.testing.assert_allclose(block, [[1.0, 1.0], [0.4, 1.0]], atol=1e-12)
        block = build_H(build_basis(4, 1), UNBROKEN.with_bath(4)).sector_block()
        np.testing.assert_allclose(block, [[1.0, 2.0], [0.8, 1.0]], atol=1e-12)
        hermitian = build_H(build_basis(2, 2), ModelParams(g=1.0, kappa=0.0, n_bath=2))
        self.assertTrue(hermitian.is_hermitian())

    def test_bath_size_must_match_basis(self):
        with self.assertRaises(InvalidParameters):
            build_H(build_basis(2, 1), UNBROKEN)
        with self.assertRaises(InvalidParameters):
            build_eta(0.5, build_basis(3, 1), BROKEN)
        with self.assertRaises(InvalidParameters):
            pt_check(build_basis(2, 1), BROKEN)
        with self.assertRaises(InvalidParameters):
            dyson_residual([0.0, 1.0], build_basis(3, 1), EXCEPTIONAL)
        with self.assertRaises(InvalidParameters):
            propagate_state([0.0, 1.0], build_basis(3, 1), UNBROKEN, "rotation_Ay")
        with self.assertRaises(InvalidParameters):
            frame_consistency_check(UNBROKEN, build_basis(2, 1), [0.0, 1.0])
        matched = dyson_residual(np.linspace(0.0, 2.0, 5), build_basis(3, 1), BROKEN.with_bath(3))
        self.assertLess(matched.max_residual, 1e-10)

    def test_eta_identity_start(self):
        params = ModelParams(g=1.0, kappa=1.0, c1=1.0, n_bath=2)
        basis = build_basis(2, 1)
        np.testing.assert_allclose(build_eta(0.0, basis, params).matrix, np.eye(basis.dim), atol=1e-12)

    def test_metric_positive(self):
        basis = build_basis(2, 2)
        metric = build_metric(1.0, basis, UNBROKEN.with_bath(2))
        self.assertTrue(metric.is_hermitian(1e-10))
        self.assertGreater(np.linalg.eigvalsh(metric.matrix)[0], 0.0)


class TestAlgebraChecks(unittest.TestCase):
    """Commutators, PT symmetry and the Dyson equation."""

    def test_format_combination(self):
        self.assertEqual(format_combination({"A_x": 1j}), "iA_x")
        self.assertEqual(format_combination({"A_y": -2j}), "-2iA_y")
        self.assertEqual(format_combination({}), "0")

    def test_commutator_table(self):
        for n, cap in ((1, 1), (2, 1), (2, 2)):
            reports = commutator_table_check(build_basis(n, cap))
            asserted = [report for report in reports if report.asserted]
            informational = [report for report in reports if not report.asserted]
            self.assertTrue(all(report.passed for report in asserted), [r.name for r in asserted if not r.passed])
            self.assertEqual(len(informational), 1)
            self.assertIn("[N_A,A_y]", informational[0].name)
            self.assertIn("measured iA_x", informational[0].notes)

    def test_pt_check(self):
        for params in REGIMES:
            for n in (1, 2):
                with self.subTest(regime=params.describe(), n=n):
                    reports = pt_check(build_basis(n, 1), params.with_bath(n))
                    self.assertTrue(all(report.passed for report in reports))

    def test_pt_overlap_broken(self):
        reports = pt_check(build_basis(1, 1), BROKEN)
        overlap = [report for report in reports if report.name.startswith("PT breaks")][0]
        self.assertAlmostEqual(overlap.max_residual, 3.0 / 7.0, places=10)

    def test_dyson_residual(self):
        times = np.linspace(0.0, 2.0, 9)
        for params in REGIMES:
            for n in (1, 3):
                basis, matched = build_basis(n, 1), params.with_bath(n)
                with self.subTest(regime=params.describe(), n=n):
                    self.assertTrue(dyson_residual(times, basis, matched).passed)
                    self.assertTrue(dyson_hermiticity(times, basis, matched).passed)
                    self.assertTrue(metric_positivity(times, basis, matched).passed)
        self.assertTrue(dyson_residual([0.5, 1.5], build_basis(2, 2), UNBROKEN.with_bath(2).with_(c2=0.3)).passed)

    def test_dyson_residual_printed_mu_fails(self):
        times = np.linspace(0.0, 2.0, 5)
        report = dyson_residual(times, build_basis(1, 1), UNBROKEN, "printed")
        self.assertFalse(report.passed)
        self.assertGreater(report.max_residual, 1e-3)
        self.assertFalse(dyson_residual(times, build_basis(1, 1), UNBROKEN, mu_scale=2.0).passed)

    def test_report_serialisation(self):
        report = CheckReport("inf", math.inf, 1.0, "note", asserted=False)
        self.assertEqual(
            report.to_dict(),
            {"name": "inf", "max_residual": None, "tolerance": 1.0, "pass": False, "notes": "note"},
        )


class TestDynamics(unittest.TestCase):
    """Integration of the coupled equations and state propagation."""

    def test_integrate_alpha_beta(self):
        for params in REGIMES:
            trajectory, report = integrate_alpha_beta(params, 10.0)
            self.assertTrue(report.passed, report.notes)
            self.assertIn("Richardson", report.notes)
            self.assertEqual(list(trajectory.columns), ["t", "alpha", "beta", "alpha_closed", "beta_closed"])
            self.assertAlmostEqual(trajectory["t"].iloc[-1], 10.0)

    def test_richardson_ratio_at_round_off(self):
        _, report = integrate_alpha_beta(UNBROKEN, 2.0, dt=0.05)
        self.assertNotIn("round-off", report.notes)
        with mock.patch("ptentropy.oracle.dynamics.RICHARDSON_FLOOR", 1.0):
            _, report = integrate_alpha_beta(UNBROKEN, 2.0, dt=0.05)
        self.assertIn("Richardson ratio n/a, errors at round-off", report.notes)

    def test_integrate_drift_guard(self):
        with mock.patch("ptentropy.oracle.dynamics.ENERGY_DRIFT_LIMIT", 0.0):
            with self.assertRaises(StepSizeTooLarge):
                integrate_alpha_beta(UNBROKEN, 2.0, dt=0.1)
        with self.assertRaises(InvalidParameters):
            integrate_alpha_beta(UNBROKEN, 0.0)

    def test_rotation_matches_closed_form(self):
        times = np.linspace(0.0, 3.0, 31)
        for params in REGIMES:
            for n in (1, 3):
                trajectory = propagate_state(times, build_basis(n, 1), params.with_bath(n), "rotation_Ay")
                closed = entropy_curve(times, params.with_bath(n))
                np.testing.assert_allclose(trajectory["S"], closed["S"], atol=1e-8)
                np.testing.assert_allclose(trajectory["norm"], 1.0, atol=1e-10)

    def test_rotation_sudden_death(self):
        t_star = sudden_death_time(UNBROKEN)
        trajectory = propagate_state([0.0, t_star], build_basis(1, 1), UNBROKEN, "rotation_Ay")
        self.assertAlmostEqual(trajectory["S"].iloc[0], math.log(2.0))
        self.assertLess(trajectory["S"].iloc[1], 1e-10)

    def test_rotation_broken_floor(self):
        trajectory = propagate_state([0.0, 50.0], build_basis(1, 1), BROKEN, "rotation_Ay")
        self.assertAlmostEqual(trajectory["S"].iloc[1], 0.3521, delta=1e-3)

    def test_h_with_ax_stays_maximal(self):
        times = np.linspace(0.0, 3.0, 31)
        trajectory = propagate_state(times, build_basis(2, 1), UNBROKEN.with_bath(2), "h_with_Ax")
        np.testing.assert_allclose(trajectory["S"], math.log(2.0), atol=1e-8)
        np.testing.assert_allclose(trajectory["norm"], 1.0, atol=1e-8)

    def test_propagate_validation(self):
        basis = build_basis(1, 1)
        with self.assertRaises(InvalidParameters):
            propagate_state([0.0, 1.0], basis, UNBROKEN, "bogus")
        with self.assertRaises(InvalidParameters):
            propagate_state([1.0, 0.5], basis, UNBROKEN)

    def test_frame_consistency(self):
        times = np.linspace(0.0, 2.0, 11)
        for params in REGIMES:
            reports = frame_consistency_check(params.with_bath(2), build_basis(2, 1), times)
            self.assertEqual(len(reports), 2)
            self.assertTrue(all(report.passed for report in reports), [r.max_residual for r in reports])


class TestDiscrepancyReport(unittest.TestCase):
    """Informational findings."""

    def setUp(self):
        self.findings = discrepancy_report([UNBROKEN, BROKEN])

    def test_findings_are_informational(self):
        self.assertTrue(self.findings)
        self.assertTrue(all(not finding.asserted for finding in self.findings))

    def test_mu_factor(self):
        factors = [finding for finding in self.findings if finding.name.startswith("mu factor")]
        self.assertEqual(len(factors), 2)
        self.assertTrue(all(finding.passed for finding in factors))

    def test_regime_labels(self):
        labels = {finding.name: finding for finding in self.findings if finding.name.startswith("regime label")}
        self.assertEqual(len(labels), 3)
        self.assertFalse(labels["regime label [unbroken figure]"].passed)
        self.assertFalse(labels["regime label [broken figure]"].passed)
        self.assertTrue(labels["regime label [exceptional figure]"].passed)

    def test_commutator_mismatch(self):
        mismatches = [finding for finding in self.findings if "[N_A,A_y]" in finding.name]
        self.assertEqual(len(mismatches), 1)
        self.assertIn("iA_x", mismatches[0].notes)

    def test_initial_state_swap(self):
        swap = [finding for finding in self.findings if finding.name == "initial state sin/cos swap"][0]
        self.assertAlmostEqual(swap.max_residual, 0.5, places=9)


if __name__ == '__main__':
    unittest.main()
