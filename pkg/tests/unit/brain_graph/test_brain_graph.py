"""Tests for correlation graphs, Laplacians and the eigensolver."""

import logging

import numpy as np
import pytest
from scipy.sparse.csgraph import connected_components

from freq_brain.brain_graph import (
    build_graph,
    edge_quota,
    eigendecompose,
    laplacian,
    pearson_matrix,
    threshold_graph,
)
from freq_brain.enums import SolverEnum
from freq_brain.exceptions import DataError, ShapeError


def _direct_pcc(x: np.ndarray, y: np.ndarray) -> float:
    mx, my = sum(x) / len(x), sum(y) / len(y)
    num = sum((a - mx) * (b - my) for a, b in zip(x, y, strict=True))
    den = (sum((a - mx) ** 2 for a in x) * sum((b - my) ** 2 for b in y)) ** 0.5
    return num / den


class TestPearsonMatrix:
    """Tests for pearson_matrix."""

    def test_identical_rows(self) -> None:
        """Test identical signals correlate to 1."""
        corr = pearson_matrix(np.array([[1.0, 2.0, 4.0, 3.0], [1.0, 2.0, 4.0, 3.0], [0.0, 1.0, 0.0, 1.0]]))
        assert corr[0, 1] == pytest.approx(1.0, abs=1e-12)

    def test_negated_rows(self) -> None:
        """Test a negated signal correlates to -1."""
        corr = pearson_matrix(np.array([[1.0, 2.0, 4.0, 3.0], [-1.0, -2.0, -4.0, -3.0], [0.0, 1.0, 0.0, 1.0]]))
        assert corr[0, 1] == pytest.approx(-1.0, abs=1e-12)

    def test_matches_direct_summation(self) -> None:
        """Test agreement with a direct evaluation of the correlation formula."""
        x, y = [1.0, 2.0, 3.0, 4.0], [1.0, 3.0, 2.0, 5.0]
        corr = pearson_matrix(np.array([x, y, [4.0, 1.0, 3.0, 2.0]]))
        assert abs(corr[0, 1] - _direct_pcc(x, y)) <= 1e-12

    def test_symmetric_unit_diagonal(self) -> None:
        """Test symmetry, unit diagonal and bounds."""
        corr = pearson_matrix(np.random.default_rng(0).standard_normal((9, 30)))
        assert np.array_equal(corr, corr.T)
        assert np.all(np.diag(corr) == 1.0)
        assert np.all(np.abs(corr) <= 1.0)

    def test_zero_variance_row(self) -> None:
        """Test a constant ROI is reported."""
        with pytest.raises(DataError, match="ROI 1"):
            pearson_matrix(np.array([[1.0, 2.0, 3.0, 4.0], [5.0, 5.0, 5.0, 5.0], [1.0, 0.0, 1.0, 0.0]]))

    def test_constant_row_with_inexact_level(self) -> None:
        """Test a constant level that centers to roundoff rather than zero is still reported."""
        series = np.vstack([np.random.default_rng(1).standard_normal((2, 170)), np.full(170, 0.7)])
        with pytest.raises(DataError, match="ROI 2"):
            pearson_matrix(series)


class TestThresholdGraph:
    """Tests for threshold_graph."""

    def test_quota_for_116_rois(self) -> None:
        """Test N=116 keeps floor(0.2 * 116 * 115 / 2) = 1334 edges."""
        rng = np.random.default_rng(5)
        common = rng.standard_normal((1, 200))
        corr = pearson_matrix(common + 0.5 * rng.standard_normal((116, 200)))
        graph = threshold_graph(corr, density=0.2)
        assert edge_quota(116, 0.2) == 1334
        assert graph.edge_count == 1334

    def test_negative_correlations_give_empty_graph(self, caplog: pytest.LogCaptureFixture) -> None:
        """Test all-negative correlations produce no edges and a warning."""
        corr = np.full((5, 5), -0.5)
        np.fill_diagonal(corr, 1.0)
        with caplog.at_level(logging.WARNING):
            graph = threshold_graph(corr, density=0.5)
        assert graph.edge_count == 0
        assert "no edges" in caplog.text

    def test_cannot_exceed_positive_pairs(self, caplog: pytest.LogCaptureFixture) -> None:
        """Test three positive pairs with a quota of five keep three edges."""
        corr = np.full((5, 5), -0.2)
        np.fill_diagonal(corr, 1.0)
        for i, j in [(0, 1), (1, 2), (3, 4)]:
            corr[i, j] = corr[j, i] = 0.4
        with caplog.at_level(logging.WARNING):
            graph = threshold_graph(corr, density=0.5)
        assert edge_quota(5, 0.5) == 5
        assert graph.edge_count == 3
        assert "keeping all" in caplog.text

    def test_weights_are_correlations(self) -> None:
        """Test kept edges carry their correlation value, loop-free and symmetric."""
        corr = pearson_matrix(np.random.default_rng(2).standard_normal((8, 20)))
        graph = threshold_graph(corr)
        kept = graph.adjacency != 0.0
        assert np.allclose(graph.adjacency[kept], corr[kept])
        assert np.all(np.diag(graph.adjacency) == 0.0)
        assert np.array_equal(graph.adjacency, graph.adjacency.T)

    def test_ties_break_lexicographically(self) -> None:
        """Test equal weights at the quota boundary go to the smaller (i, j)."""
        corr = np.full((4, 4), 0.3)
        np.fill_diagonal(corr, 1.0)
        graph = threshold_graph(corr, density=2 / 6)
        assert graph.adjacency[0, 1] == 0.3
        assert graph.adjacency[0, 2] == 0.3
        assert graph.edge_count == 2

    def test_rejects_asymmetric(self) -> None:
        """Test asymmetric input is a shape error."""
        corr = np.eye(3)
        corr[0, 1] = 0.5
        with pytest.raises(ShapeError):
            threshold_graph(corr)

    def test_rejects_bad_density(self) -> None:
        """Test density outside (0, 1]."""
        with pytest.raises(ValueError):
            threshold_graph(np.eye(3), density=0.0)


class TestLaplacian:
    """Tests for laplacian."""

    def test_path_graph(self, path3_laplacian: np.ndarray) -> None:
        """Test the unit-weight path 0-1-2."""
        adjacency = np.array([[0.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 0.0]])
        assert np.array_equal(laplacian(adjacency), path3_laplacian)

    def test_empty_graph(self) -> None:
        """Test the edgeless graph has a zero Laplacian."""
        assert np.array_equal(laplacian(np.zeros((4, 4))), np.zeros((4, 4)))

    def test_psd_and_zero_row_sums(self, small_dataset) -> None:
        """Test x^T L x >= 0 on random probes and zero row sums."""
        lap = laplacian(build_graph(small_dataset.records[0].series))
        probes = np.random.default_rng(3).standard_normal((100, lap.shape[0]))
        assert np.all(np.einsum("ij,jk,ik->i", probes, lap, probes) >= -1e-10)
        assert np.allclose(lap.sum(axis=1), 0.0, atol=1e-10)


class TestEigendecompose:
    """Tests for eigendecompose."""

    @pytest.mark.parametrize("solver", list(SolverEnum))
    def test_path3_eigenvalues(self, path3_laplacian: np.ndarray, solver: SolverEnum) -> None:
        """Test the path-3 spectrum (0, 1, 3)."""
        basis = eigendecompose(path3_laplacian, solver=solver)
        assert np.allclose(basis.eigenvalues, [0.0, 1.0, 3.0], atol=1e-10)

    def test_reconstruction_and_orthonormality(self, small_dataset) -> None:
        """Test L = U diag(lambda) U^T and U^T U = I."""
        lap = laplacian(build_graph(small_dataset.records[1].series))
        basis = eigendecompose(lap)
        u = basis.eigenvectors
        assert np.allclose(u @ np.diag(basis.eigenvalues) @ u.T, lap, atol=1e-8)
        assert np.allclose(u.T @ u, np.eye(lap.shape[0]), atol=1e-10)
        assert np.all(np.diff(basis.eigenvalues) >= 0.0)

    def test_sign_rule(self, small_dataset) -> None:
        """Test the largest-magnitude entry of each eigenvector is positive."""
        u = eigendecompose(laplacian(build_graph(small_dataset.records[2].series))).eigenvectors
        pivots = np.argmax(np.abs(u), axis=0)
        assert np.all(u[pivots, np.arange(u.shape[1])] > 0.0)

    def test_zero_matrix(self) -> None:
        """Test the zero matrix gives zero eigenvalues and exact reconstruction."""
        basis = eigendecompose(np.zeros((4, 4)))
        assert np.array_equal(basis.eigenvalues, np.zeros(4))
        assert np.allclose(basis.eigenvectors @ basis.eigenvectors.T, np.eye(4))

    def test_connected_graph_null_space(self) -> None:
        """Test a connected graph has one zero eigenvalue with a constant-sign eigenvector."""
        rng = np.random.default_rng(9)
        adjacency = np.triu(rng.uniform(0.1, 1.0, (7, 7)), k=1)
        adjacency = adjacency + adjacency.T
        n_components, _ = connected_components(adjacency, directed=False)
        basis = eigendecompose(laplacian(adjacency))
        assert np.sum(np.abs(basis.eigenvalues) < 1e-10) == n_components == 1
        assert np.all(basis.eigenvectors[:, 0] > 0.0)

    def test_solvers_agree(self, small_dataset) -> None:
        """Test Jacobi and LAPACK spectra coincide."""
        lap = laplacian(build_graph(small_dataset.records[3].series))
        jacobi = eigendecompose(lap, solver=SolverEnum.JACOBI)
        lapack = eigendecompose(lap, solver=SolverEnum.LAPACK)
        assert np.allclose(jacobi.eigenvalues, lapack.eigenvalues, atol=1e-10)

    def test_rejects_asymmetric(self) -> None:
        """Test asymmetric input is a shape error."""
        with pytest.raises(ShapeError):
            eigendecompose(np.array([[0.0, 1.0], [0.0, 0.0]]))
