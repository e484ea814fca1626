"""Tests for density matrices, the similarity map and the partial trace."""

import math
import unittest

import numpy as np

from ptentropy.density import (
    BipartiteLabel,
    DensityMatrix,
    Ensemble,
    density_from_ensemble,
    is_density_matrix,
    metric_hermiticity_residual,
    partial_trace,
    similarity_map,
    spectrum,
    von_neumann_entropy,
)
from ptentropy.errors import (
    InvalidWeights,
    LabelMismatch,
    NonNormalizedState,
    NotADensityMatrix,
    SingularEta,
)


def random_density(rng, dim):
    """Random full-rank density matrix of the given dimension."""
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_eta(rng, dim):
    """Invertible map with singular values in [0.5, 2]."""
    left, _ = np.linalg.qr(rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)))
    right, _ = np.linalg.qr(rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)))
    return left @ np.diag(rng.uniform(0.5, 2.0, dim)) @ right


class TestDensityMatrix(unittest.TestCase):
    """Validation and entropy."""

    def setUp(self):
        self.rng = np.random.default_rng(7)

    def test_validation(self):
        self.assertTrue(is_density_matrix(np.eye(2) / 2))
        self.assertFalse(is_density_matrix(np.eye(2)))
        self.assertFalse(is_density_matrix(np.array([[0.5, 0.5], [0.0, 0.5]])))
        self.assertFalse(is_density_matrix(np.diag([1.5, -0.5])))
        with self.assertRaises(NotADensityMatrix):
            DensityMatrix(np.ones((2, 3)) / 2)
        self.assertEqual(DensityMatrix(np.eye(3) / 3).dim, 3)
        self.assertEqual(DensityMatrix(np.eye(3) / 3).frame, "hermitian")

    def test_entropy_values(self):
        self.assertAlmostEqual(von_neumann_entropy(np.eye(2) / 2), math.log(2.0))
        self.assertAlmostEqual(von_neumann_entropy(np.eye(4) / 4), math.log(4.0))
        pure = np.zeros((3, 3))
        pure[1, 1] = 1.0
        self.assertAlmostEqual(von_neumann_entropy(pure), 0.0, places=12)

    def test_entropy_rejects_invalid(self):
        with self.assertRaises(NotADensityMatrix):
            von_neumann_entropy(np.diag([1.5, -0.5]))
        with self.assertRaises(NotADensityMatrix):
            von_neumann_entropy(np.array([[0.5, 0.2], [0.0, 0.5]]))
        with self.assertRaises(NotADensityMatrix):
            von_neumann_entropy(np.eye(2))

    def test_entropy_bounds(self):
        for dim in (2, 4, 8):
            value = von_neumann_entropy(random_density(self.rng, dim))
            self.assertGreaterEqual(value, 0.0)
            self.assertLessEqual(value, math.log(dim) + 1e-12)

    def test_ensemble_validation(self):
        up, down = np.array([1.0, 0.0]), np.array([0.0, 1.0])
        with self.assertRaises(InvalidWeights):
            Ensemble([0.7, 0.7], [up, down])
        with self.assertRaises(InvalidWeights):
            Ensemble([1.2, -0.2], [up, down])
        with self.assertRaises(InvalidWeights):
            Ensemble([1.0], [up, down])
        with self.assertRaises(NonNormalizedState):
            density_from_ensemble(Ensemble([1.0], [np.array([1.0, 1.0])]))
        rho = density_from_ensemble(Ensemble([0.5, 0.5], [up, down]))
        np.testing.assert_allclose(rho.matrix, np.eye(2) / 2)


class TestSimilarityMap(unittest.TestCase):
    """Metric-frame density matrices and the map to the Hermitian frame."""

    def setUp(self):
        self.rng = np.random.default_rng(11)

    def test_spectrum_preserved(self):
        for _ in range(100):
            dim = int(self.rng.integers(2, 9))
            rho = random_density(self.rng, dim)
            eta = random_eta(self.rng, dim)
            # metric-frame preimage of rho
            rho_h = DensityMatrix(np.linalg.solve(eta, rho @ eta), eta.conj().T @ eta)
            mapped = similarity_map(rho_h, eta)
            self.assertIsInstance(mapped, DensityMatrix)
            self.assertEqual(mapped.frame, "hermitian")
            np.testing.assert_allclose(mapped.matrix, rho, atol=1e-10)
            np.testing.assert_allclose(np.sort(spectrum(rho_h).real), spectrum(rho), atol=1e-9)
            self.assertAlmostEqual(von_neumann_entropy(rho_h), von_neumann_entropy(rho), delta=1e-9)

    def test_singular_eta(self):
        with self.assertRaises(SingularEta):
            similarity_map(np.eye(2) / 2, np.diag([1.0, 1e-13]))

    def test_foreign_eta_is_rejected(self):
        eta = np.diag([2.0, 1.0])
        rho_h = density_from_ensemble(Ensemble([1.0], [np.array([0.3, 0.8])]), eta.conj().T @ eta)
        self.assertEqual(similarity_map(rho_h, eta).frame, "hermitian")
        with self.assertRaises(NotADensityMatrix):
            similarity_map(rho_h, np.array([[1.0, 1.0], [0.0, 1.0]]))

    def test_metric_frame_ensemble(self):
        for _ in range(100):
            dim = int(self.rng.integers(2, 9))
            count = int(self.rng.integers(1, 4))
            eta = random_eta(self.rng, dim)
            metric = eta.conj().T @ eta
            states = []
            for _ in range(count):
                psi = self.rng.normal(size=dim) + 1j * self.rng.normal(size=dim)
                states.append(psi / math.sqrt(np.vdot(psi, metric @ psi).real))
            ensemble = Ensemble(self.rng.dirichlet(np.ones(count)), states)

            rho_h = density_from_ensemble(ensemble, metric)
            self.assertEqual(rho_h.frame, "metric")
            self.assertLess(metric_hermiticity_residual(rho_h.matrix, metric), 1e-10)

            hermitian = sum(p * np.outer(eta @ psi, (eta @ psi).conj()) for p, psi in zip(ensemble.weights, states))
            np.testing.assert_allclose(similarity_map(rho_h, eta).matrix, hermitian, atol=1e-10)
            self.assertAlmostEqual(von_neumann_entropy(rho_h), von_neumann_entropy(hermitian), delta=1e-9)

    def test_metric_frame_requires_metric_norm(self):
        eta = np.diag([2.0, 1.0])
        metric = eta.conj().T @ eta
        with self.assertRaises(NonNormalizedState):
            density_from_ensemble(Ensemble([1.0], [np.array([1.0, 0.0])]), metric)


class TestPartialTrace(unittest.TestCase):
    """Partial trace over labelled bases."""

    def setUp(self):
        self.rng = np.random.default_rng(3)

    def test_product_state(self):
        rho_a = random_density(self.rng, 2)
        rho_b = random_density(self.rng, 3)
        joint = np.kron(rho_a, rho_b)
        np.testing.assert_allclose(partial_trace(joint, BipartiteLabel.from_dims((2, 3), (0,))), rho_a, atol=1e-12)
        np.testing.assert_allclose(partial_trace(joint, BipartiteLabel.from_dims((2, 3), (1,))), rho_b, atol=1e-12)

    def test_trace_and_linearity(self):
        label = BipartiteLabel.from_dims((4, 4), (1,))
        first = random_density(self.rng, 16)
        second = random_density(self.rng, 16)
        reduced = partial_trace(first, label)
        self.assertAlmostEqual(np.trace(reduced).real, 1.0)
        mixed = partial_trace(0.3 * first + 0.7 * second, label)
        np.testing.assert_allclose(mixed, 0.3 * reduced + 0.7 * partial_trace(second, label), atol=1e-12)

    def test_bell_state(self):
        bell = np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2.0)
        rho = DensityMatrix(np.outer(bell, bell))
        reduced = partial_trace(rho, BipartiteLabel.from_dims((2, 2), (0,)))
        self.assertAlmostEqual(von_neumann_entropy(reduced), math.log(2.0))
        self.assertAlmostEqual(von_neumann_entropy(rho), 0.0, places=12)

    def test_truncated_labels(self):
        # vacuum and the two single excitations of two modes
        label = BipartiteLabel(((0, 0), (0, 1), (1, 0)), (0,))
        self.assertEqual(label.kept_levels, ((0,), (1,)))
        self.assertEqual(label.traced, (1,))
        state = np.array([0.0, 1.0, 1.0]) / math.sqrt(2.0)
        reduced = partial_trace(np.outer(state, state), label)
        np.testing.assert_allclose(reduced, np.eye(2) / 2, atol=1e-12)

    def test_system_mode_order(self):
        label = BipartiteLabel(((0, 0), (1, 0), (0, 1)), (0,))
        state = np.array([0.0, math.sqrt(0.8), math.sqrt(0.2)])
        reduced = partial_trace(DensityMatrix(np.outer(state, state)), label)
        self.assertIsInstance(reduced, DensityMatrix)
        np.testing.assert_allclose(reduced.matrix, np.diag([0.2, 0.8]), atol=1e-12)

    def test_metric_frame_is_rejected(self):
        eta = np.diag([2.0, 1.0])
        rho_h = density_from_ensemble(Ensemble([1.0], [np.array([0.3, 0.8])]), eta.conj().T @ eta)
        with self.assertRaises(NotADensityMatrix):
            partial_trace(rho_h, BipartiteLabel.from_dims((2, 1), (0,)))

    def test_label_errors(self):
        with self.assertRaises(LabelMismatch):
            BipartiteLabel.from_dims((2, 2), (2,))
        with self.assertRaises(LabelMismatch):
            BipartiteLabel(((0, 0), (0, 0)), (0,))
        with self.assertRaises(LabelMismatch):
            BipartiteLabel.from_dims((0, 2), (0,))
        with self.assertRaises(LabelMismatch):
            partial_trace(np.eye(3) / 3, BipartiteLabel.from_dims((2, 2), (0,)))


if __name__ == '__main__':
    unittest.main()
