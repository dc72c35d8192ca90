"""Functional-connectivity graphs: correlation, thresholding, Laplacian and its eigenbasis."""

import hashlib
import logging
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from freq_brain.enums import SolverEnum
from freq_brain.exceptions import DataError, NumericError, ShapeError

logger = logging.getLogger(__name__)

SYMMETRY_TOLERANCE = 1e-10
JACOBI_TOLERANCE = 1e-12
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True, eq=False)
class BrainGraph:
    """Thresholded correlation graph with its time-domain node features."""

    adjacency: np.ndarray
    features_time: np.ndarray = field(default_factory=lambda: np.empty((0, 0)))

    @property
    def n_nodes(self) -> int:
        """Number of nodes (ROIs)."""
        return int(self.adjacency.shape[0])

    @property
    def edge_count(self) -> int:
        """Number of undirected edges."""
        return int(np.count_nonzero(np.triu(self.adjacency, k=1)))


@dataclass(frozen=True, eq=False)
class SpectralBasis:
    """Laplacian eigenvalues (ascending) and matching orthonormal eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def size(self) -> int:
        """Graph size N."""
        return int(self.eigenvalues.shape[0])

    @property
    def key(self) -> str:
        """Short content identifier binding spectral features to this basis."""
        digest = hashlib.sha1(np.ascontiguousarray(self.eigenvectors).tobytes())
        digest.update(np.ascontiguousarray(self.eigenvalues).tobytes())
        return digest.hexdigest()[:16]


def pearson_matrix(series: np.ndarray) -> np.ndarray:
    """Pearson correlation between every pair of ROI signals.

    Args:
        series: N x D matrix, one ROI per row.

    Returns:
        Symmetric N x N matrix with unit diagonal and entries in [-1, 1].

    Raises:
        DataError: If a row has zero variance.
    """
    series = np.asarray(series, dtype=np.float64)
    flat = np.flatnonzero(np.ptp(series, axis=1) == 0.0)
    if flat.size:
        raise DataError(f"ROI {int(flat[0])} has zero variance; correlation is undefined")

    corr = np.corrcoef(series)
    corr = np.clip((corr + corr.T) / 2.0, -1.0, 1.0)
    np.fill_diagonal(corr, 1.0)
    return corr


def edge_quota(n_nodes: int, density: float) -> int:
    """Number of undirected edges kept at a given density.

    Args:
        n_nodes: Graph size N.
        density: Fraction of the N(N-1)/2 pairs to keep.

    Returns:
        floor(density * N(N-1)/2), robust to float representation error.
    """
    pairs = n_nodes * (n_nodes - 1) // 2
    return int(math.floor(density * pairs + 1e-9))


def threshold_graph(corr: np.ndarray, density: float = 0.2, features: np.ndarray | None = None) -> BrainGraph:
    """Keep the strongest positive correlations as weighted edges.

    Ties at the quota boundary go to the lexicographically smaller (i, j).

    Args:
        corr: Symmetric correlation matrix with unit diagonal.
        density: Fraction of ROI pairs to keep, in (0, 1].
        features: Optional N x D node features to attach.

    Returns:
        BrainGraph whose retained weights equal their correlation entries.

    Raises:
        ValueError: If density is outside (0, 1].
        ShapeError: If corr is not square or not symmetric.
    """
    if not 0.0 < density <= 1.0:
        raise ValueError(f"density must be in (0, 1], got {density}")
    corr = np.asarray(corr, dtype=np.float64)
    if corr.ndim != 2 or corr.shape[0] != corr.shape[1]:
        raise ShapeError(f"correlation matrix must be square, got {corr.shape}")
    if not np.allclose(corr, corr.T, atol=SYMMETRY_TOLERANCE, rtol=0.0):
        raise ShapeError("correlation matrix must be symmetric")

    n = corr.shape[0]
    rows, cols = np.triu_indices(n, k=1)
    values = corr[rows, cols]
    positive = values > 0.0
    rows, cols, values = rows[positive], cols[positive], values[positive]

    quota = edge_quota(n, density)
    if values.size == 0:
        logger.warning("No positive correlations; the thresholded graph has no edges")
    elif values.size < quota:
        logger.warning("Only %d positive correlations for a quota of %d edges; keeping all", values.size, quota)

    order = np.lexsort((cols, rows, -values))[:quota]
    adjacency = np.zeros((n, n), dtype=np.float64)
    adjacency[rows[order], cols[order]] = values[order]
    adjacency[cols[order], rows[order]] = values[order]

    node_features = np.empty((n, 0)) if features is None else np.asarray(features, dtype=np.float64)
    return BrainGraph(adjacency=adjacency, features_time=node_features)


def build_graph(series: np.ndarray, density: float = 0.2) -> BrainGraph:
    """Correlate and threshold a subject's signals.

    Args:
        series: N x D matrix, one ROI per row.
        density: Edge density.

    Returns:
        BrainGraph carrying the series as node features.
    """
    return threshold_graph(pearson_matrix(series), density=density, features=series)


def laplacian(g: BrainGraph | np.ndarray) -> np.ndarray:
    """Combinatorial graph Laplacian L = D - A.

    Args:
        g: BrainGraph or a symmetric adjacency matrix.

    Returns:
        Symmetric positive semidefinite N x N matrix with zero row sums.
    """
    adjacency = g.adjacency if isinstance(g, BrainGraph) else np.asarray(g, dtype=np.float64)
    return np.diag(adjacency.sum(axis=1)) - adjacency


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    # argmax returns the first maximum, so ties resolve to the lowest index
    pivots = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[pivots, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def _jacobi(matrix: np.ndarray, tol: float, max_sweeps: int) -> tuple[np.ndarray, np.ndarray]:
    a = matrix.copy()
    n = a.shape[0]
    v = np.eye(n)
    threshold = tol * max(1.0, float(np.linalg.norm(matrix)))

    for _ in range(max_sweeps):
        off = math.sqrt(float(np.sum(np.triu(a, k=1) ** 2)) * 2.0)
        if off <= threshold:
            return np.diag(a).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

                vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q

    raise NumericError(f"Jacobi eigensolver did not converge within {max_sweeps} sweeps")


def eigendecompose(
    L: np.ndarray,  # noqa: N803
    solver: SolverEnum = SolverEnum.JACOBI,
    tol: float = JACOBI_TOLERANCE,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> SpectralBasis:
    """Symmetric eigendecomposition with ascending eigenvalues and fixed signs.

    In each eigenvector the entry of largest magnitude is made positive.

    Args:
        L: Symmetric matrix (typically a graph Laplacian).
        solver: Cyclic Jacobi rotations or LAPACK.
        tol: Jacobi stopping threshold on the off-diagonal Frobenius norm, relative to max(1, ||L||_F).
        max_sweeps: Jacobi sweep cap.

    Returns:
        SpectralBasis with L = U diag(lambda) U^T.

    Raises:
        ShapeError: If L is not square and symmetric.
        NumericError: If the Jacobi iteration does not converge.
    """
    matrix = np.asarray(L, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ShapeError(f"matrix must be square, got {matrix.shape}")
    if np.max(np.abs(matrix - matrix.T), initial=0.0) > SYMMETRY_TOLERANCE:
        raise ShapeError("matrix must be symmetric")
    matrix = (matrix + matrix.T) / 2.0

    if solver == SolverEnum.LAPACK:
        eigenvalues, eigenvectors = scipy.linalg.eigh(matrix)
    else:
        eigenvalues, eigenvectors = _jacobi(matrix, tol, max_sweeps)

    order = np.argsort(eigenvalues, kind="stable")
    eigenvalues = np.ascontiguousarray(eigenvalues[order])
    eigenvectors = np.ascontiguousarray(_fix_signs(eigenvectors[:, order]))
    return SpectralBasis(eigenvalues=eigenvalues, eigenvectors=eigenvectors)
