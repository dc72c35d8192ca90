"""Graph Fourier transform, percentile filter bank and component selection."""

import math
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from freq_brain.brain_graph import SpectralBasis
from freq_brain.enums import BandEnum
from freq_brain.exceptions import ShapeError

DEFAULT_RETAINED = frozenset({BandEnum.LOW, BandEnum.HIGH})


@dataclass(frozen=True, eq=False)
class SpectralFeatures:
    """Spectral coefficients U^T X bound to the basis that produced them."""

    coefficients: np.ndarray
    basis_key: str


@dataclass(frozen=True, eq=False)
class FilterBank:
    """Disjoint low/mid/high masks over eigenindices."""

    low_mask: np.ndarray
    mid_mask: np.ndarray
    high_mask: np.ndarray
    p_low: float
    p_high: float
    lambda_low: float
    lambda_high: float

    def mask(self, band: BandEnum | str) -> np.ndarray:
        """Binary mask of one band.

        Args:
            band: Band tag.

        Returns:
            Float vector of length N with ones inside the band.
        """
        return {
            BandEnum.LOW: self.low_mask,
            BandEnum.MID: self.mid_mask,
            BandEnum.HIGH: self.high_mask,
        }[BandEnum(band)]

    def union(self, bands: Iterable[BandEnum | str]) -> np.ndarray:
        """Mask covering several bands.

        Args:
            bands: Band tags.

        Returns:
            Float vector of length N.
        """
        combined = np.zeros_like(self.low_mask)
        for band in set(bands):
            combined = combined + self.mask(band)
        return combined


@dataclass(frozen=True, eq=False)
class FilteredSpectrum:
    """Band-masked, column-truncated spectral coefficients fed to the FGO stack."""

    matrix: np.ndarray
    retained: frozenset[BandEnum]


def _check_basis(n_rows: int, basis: SpectralBasis) -> None:
    if n_rows != basis.size:
        raise ShapeError(f"features have {n_rows} rows but the basis has dimension {basis.size}")


def gft(features: np.ndarray, basis: SpectralBasis) -> SpectralFeatures:
    """Graph Fourier transform.

    Args:
        features: N x D node features.
        basis: Laplacian eigenbasis of the graph.

    Returns:
        SpectralFeatures with coefficients U^T X.

    Raises:
        ShapeError: If N does not match the basis.
    """
    features = np.asarray(features, dtype=np.float64)
    if features.ndim != 2:
        raise ShapeError(f"features must be 2-D, got shape {features.shape}")
    _check_basis(features.shape[0], basis)
    return SpectralFeatures(coefficients=basis.eigenvectors.T @ features, basis_key=basis.key)


def igft(spec: SpectralFeatures, basis: SpectralBasis) -> np.ndarray:
    """Inverse graph Fourier transform.

    Args:
        spec: Spectral coefficients.
        basis: The basis the coefficients were computed with.

    Returns:
        N x D matrix U @ coefficients.

    Raises:
        ShapeError: On a dimension or basis mismatch.
    """
    _check_basis(spec.coefficients.shape[0], basis)
    if spec.basis_key != basis.key:
        raise ShapeError("spectral features were computed with a different basis")
    return basis.eigenvectors @ spec.coefficients


def band_size(n_nodes: int, share: float) -> int:
    """Ceiling quota of eigenindices for a band.

    Args:
        n_nodes: Graph size N.
        share: Fraction of eigenindices.

    Returns:
        ceil(share * N), robust to float representation error.
    """
    return int(math.ceil(share * n_nodes - 1e-9))


def build_filter_bank(basis: SpectralBasis, p_low: float = 0.2, p_high: float = 0.2) -> FilterBank:
    """Percentile filter bank over the ascending eigenvalues.

    Assignment is by eigenindex, so repeated eigenvalues at a cutoff are split deterministically.

    Args:
        basis: Spectral basis with ascending eigenvalues.
        p_low: Share of eigenindices in the low band.
        p_high: Share of eigenindices in the high band.

    Returns:
        FilterBank whose three masks partition the eigenindices.

    Raises:
        ValueError: If a share is outside (0, 1) or the quotas overlap.
    """
    for name, share in (("p_low", p_low), ("p_high", p_high)):
        if not 0.0 < share < 1.0:
            raise ValueError(f"{name} must be in (0, 1), got {share}")
    n = basis.size
    n_low, n_high = band_size(n, p_low), band_size(n, p_high)
    if p_low + p_high > 1.0 + 1e-12 or n_low + n_high > n:
        raise ValueError(f"low and high quotas overlap: {n_low} + {n_high} > {n}")

    low = np.zeros(n)
    high = np.zeros(n)
    low[:n_low] = 1.0
    high[n - n_high :] = 1.0
    mid = 1.0 - low - high
    return FilterBank(
        low_mask=low,
        mid_mask=mid,
        high_mask=high,
        p_low=p_low,
        p_high=p_high,
        lambda_low=float(basis.eigenvalues[n_low - 1]),
        lambda_high=float(basis.eigenvalues[n - n_high]),
    )


def apply_band(spec: SpectralFeatures, bank: FilterBank, band: BandEnum | str) -> SpectralFeatures:
    """Zero every spectral row outside a band.

    Args:
        spec: Spectral coefficients.
        bank: Filter bank of the same basis.
        band: Band to keep.

    Returns:
        Masked SpectralFeatures.
    """
    mask = bank.mask(band)
    return SpectralFeatures(coefficients=spec.coefficients * mask[:, None], basis_key=spec.basis_key)


def vertex_filter(features: np.ndarray, basis: SpectralBasis, mask: np.ndarray) -> np.ndarray:
    """Filter node features in the vertex domain, U H U^T X.

    Args:
        features: N x D node features.
        basis: Spectral basis.
        mask: Diagonal of the spectral filter H.

    Returns:
        Filtered N x D features.
    """
    u = basis.eigenvectors
    return (u * mask[None, :]) @ (u.T @ np.asarray(features, dtype=np.float64))


def select_components(
    spec: SpectralFeatures,
    bank: FilterBank,
    retained: Iterable[BandEnum | str] = DEFAULT_RETAINED,
    k_features: int | None = None,
) -> FilteredSpectrum:
    """Keep the retained bands and the first K feature columns.

    Args:
        spec: Spectral coefficients (N x D).
        bank: Filter bank of the same basis.
        retained: Bands to keep; defaults to low and high.
        k_features: Column budget K <= D; None keeps all D columns.

    Returns:
        FilteredSpectrum of shape N x K with non-retained rows zeroed.

    Raises:
        ValueError: If no band is retained or K is out of range.
    """
    bands = frozenset(BandEnum(band) for band in retained)
    if not bands:
        raise ValueError("at least one band must be retained")
    d = spec.coefficients.shape[1]
    k = d if k_features is None else k_features
    if not 1 <= k <= d:
        raise ValueError(f"k_features must be in [1, {d}], got {k}")
    matrix = spec.coefficients[:, :k] * bank.union(bands)[:, None]
    return FilteredSpectrum(matrix=matrix, retained=bands)


def band_energy(spec: SpectralFeatures, bank: FilterBank) -> dict[BandEnum, float]:
    """Squared-coefficient energy per band.

    Args:
        spec: Spectral coefficients.
        bank: Filter bank of the same basis.

    Returns:
        Mapping band -> energy.
    """
    row_energy = np.sum(spec.coefficients**2, axis=1)
    return {band: float(np.dot(row_energy, bank.mask(band))) for band in BandEnum}
