"""Planted-spectrum synthetic datasets.

All subjects share one random geometric base graph. Class-1 subjects carry
(1 + snr) times the spectral energy of class-0 subjects inside one band of the
base graph's Laplacian eigenbasis.
"""

import logging

import numpy as np
from scipy.spatial.distance import pdist, squareform

from freq_brain.brain_graph import edge_quota, eigendecompose, laplacian
from freq_brain.enums import BandEnum, ProvenanceEnum
from freq_brain.models import Dataset, SubjectRecord
from freq_brain.spectral import build_filter_bank

logger = logging.getLogger(__name__)

BASE_DENSITY = 0.2


def random_geometric_adjacency(n_rois: int, rng: np.random.Generator, density: float = BASE_DENSITY) -> np.ndarray:
    """Unit-weight random geometric graph on the unit square.

    The connection radius is the distance of the quota-th closest pair, so the
    graph keeps floor(density * N(N-1)/2) edges.

    Args:
        n_rois: Number of nodes.
        rng: Random generator.
        density: Target edge density.

    Returns:
        Symmetric 0/1 adjacency with zero diagonal.
    """
    points = rng.uniform(0.0, 1.0, size=(n_rois, 2))
    distances = pdist(points)
    quota = max(edge_quota(n_rois, density), 1)
    radius = np.sort(distances)[quota - 1]
    return squareform((distances <= radius).astype(np.float64))


def generate_synthetic(
    n_subjects: int,
    n_rois: int,
    n_timepoints: int,
    band: BandEnum | str,
    snr: float,
    seed: int,
) -> Dataset:
    """Generate a balanced dataset with a planted band-energy difference.

    Spectral coefficients are drawn as unit Gaussian signal plus unit Gaussian
    noise; class-1 rows inside the band are scaled by sqrt(1 + snr) before the
    inverse transform to the vertex domain.

    Args:
        n_subjects: Number of subjects, even and at least 4.
        n_rois: Graph size, at least 8.
        n_timepoints: Series length, at least n_rois.
        band: Band that carries the class signal.
        snr: Energy boost minus one, positive.
        seed: Generator seed; the output is a pure function of the arguments.

    Returns:
        Dataset with half the subjects in each class and the base adjacency attached.

    Raises:
        ValueError: On invalid sizes or a non-positive snr.
    """
    if n_subjects < 4 or n_subjects % 2:
        raise ValueError(f"n_subjects must be even and >= 4, got {n_subjects}")
    if n_rois < 8:
        raise ValueError(f"n_rois must be >= 8, got {n_rois}")
    if n_timepoints < n_rois:
        raise ValueError(f"n_timepoints must be >= n_rois ({n_rois}), got {n_timepoints}")
    if not snr > 0.0:
        raise ValueError(f"snr must be positive, got {snr}")
    band = BandEnum(band)

    rng = np.random.default_rng(seed)
    adjacency = random_geometric_adjacency(n_rois, rng)
    basis = eigendecompose(laplacian(adjacency))
    bank = build_filter_bank(basis, BASE_DENSITY, BASE_DENSITY)
    gain = 1.0 + (np.sqrt(1.0 + snr) - 1.0) * bank.mask(band)

    labels = rng.permutation(np.repeat([0, 1], n_subjects // 2))
    records = []
    for index, label in enumerate(labels):
        coefficients = rng.standard_normal((n_rois, n_timepoints)) + rng.standard_normal((n_rois, n_timepoints))
        if label == 1:
            coefficients = coefficients * gain[:, None]
        records.append(SubjectRecord(id=f"sub-{index:03d}", series=basis.eigenvectors @ coefficients, label=int(label)))

    logger.info("Generated %d synthetic subjects (%s band, snr=%.3g, seed=%d)", n_subjects, band, snr, seed)
    return Dataset(
        records=tuple(records),
        n_rois=n_rois,
        n_timepoints=n_timepoints,
        provenance=ProvenanceEnum.SYNTHETIC,
        base_adjacency=adjacency,
    )
