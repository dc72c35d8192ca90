"""Tests for the graph Fourier transform and the filter bank."""

import numpy as np
import pytest

from freq_brain.brain_graph import SpectralBasis, build_graph, eigendecompose, laplacian
from freq_brain.enums import BandEnum
from freq_brain.exceptions import ShapeError
from freq_brain.spectral import (
    SpectralFeatures,
    apply_band,
    band_energy,
    band_size,
    build_filter_bank,
    gft,
    igft,
    select_components,
    vertex_filter,
)


@pytest.fixture(scope="module")
def basis(small_dataset) -> SpectralBasis:
    """Eigenbasis of the first subject's correlation graph."""
    return eigendecompose(laplacian(build_graph(small_dataset.records[0].series)))


def _flat_basis(n: int) -> SpectralBasis:
    return SpectralBasis(eigenvalues=np.arange(float(n)), eigenvectors=np.eye(n))


class TestTransforms:
    """Tests for gft and igft."""

    def test_basis_maps_to_identity(self, basis: SpectralBasis) -> None:
        """Test transforming U itself gives the identity."""
        assert np.allclose(gft(basis.eigenvectors, basis).coefficients, np.eye(basis.size), atol=1e-10)

    def test_constant_signal_in_null_row(self) -> None:
        """Test a constant signal on a connected graph lives in the zero-frequency row."""
        adjacency = np.ones((6, 6)) - np.eye(6)
        basis = eigendecompose(laplacian(adjacency))
        coefficients = gft(np.ones((6, 3)), basis).coefficients
        assert np.all(np.abs(coefficients[1:]) <= 1e-8)
        assert np.all(np.abs(coefficients[0]) > 1.0)

    def test_parseval(self, basis: SpectralBasis) -> None:
        """Test the transform preserves the Frobenius norm."""
        x = np.random.default_rng(0).standard_normal((basis.size, 11))
        norm = np.linalg.norm(x)
        assert abs(np.linalg.norm(gft(x, basis).coefficients) - norm) <= 1e-8 * norm

    def test_roundtrip(self, basis: SpectralBasis) -> None:
        """Test igft(gft(X)) = X."""
        x = np.random.default_rng(1).standard_normal((basis.size, 5))
        assert np.allclose(igft(gft(x, basis), basis), x, atol=1e-10)

    def test_zero_coefficients(self, basis: SpectralBasis) -> None:
        """Test zero coefficients invert to zero."""
        spec = SpectralFeatures(coefficients=np.zeros((basis.size, 3)), basis_key=basis.key)
        assert np.array_equal(igft(spec, basis), np.zeros((basis.size, 3)))

    def test_impulse_recovers_eigenvector(self, basis: SpectralBasis) -> None:
        """Test a scaled impulse in row k inverts to the scaled k-th eigenvector."""
        coefficients = np.zeros((basis.size, 2))
        coefficients[3] = [1.0, -2.0]
        out = igft(SpectralFeatures(coefficients=coefficients, basis_key=basis.key), basis)
        assert np.allclose(out[:, 0], basis.eigenvectors[:, 3])
        assert np.allclose(out[:, 1], -2.0 * basis.eigenvectors[:, 3])

    def test_basis_mismatch(self, basis: SpectralBasis) -> None:
        """Test coefficients of another basis are rejected."""
        spec = gft(np.ones((basis.size, 2)), _flat_basis(basis.size))
        with pytest.raises(ShapeError):
            igft(spec, basis)

    def test_row_mismatch(self, basis: SpectralBasis) -> None:
        """Test the wrong node count is rejected."""
        with pytest.raises(ShapeError):
            gft(np.ones((basis.size + 1, 2)), basis)


class TestFilterBank:
    """Tests for build_filter_bank."""

    def test_ten_nodes(self) -> None:
        """Test N=10 with 20% shares: low {0,1}, high {8,9}, mid {2..7}."""
        bank = build_filter_bank(_flat_basis(10), 0.2, 0.2)
        assert np.flatnonzero(bank.low_mask).tolist() == [0, 1]
        assert np.flatnonzero(bank.high_mask).tolist() == [8, 9]
        assert np.flatnonzero(bank.mid_mask).tolist() == list(range(2, 8))

    def test_ceiling_on_five_nodes(self) -> None:
        """Test N=5, p_low=0.2 keeps exactly index 0."""
        assert np.flatnonzero(build_filter_bank(_flat_basis(5), 0.2, 0.2).low_mask).tolist() == [0]
        assert band_size(5, 0.3) == 2

    def test_partition(self, basis: SpectralBasis) -> None:
        """Test the three masks partition the eigenindices."""
        bank = build_filter_bank(basis)
        total = bank.low_mask + bank.mid_mask + bank.high_mask
        assert np.array_equal(total, np.ones(basis.size))

    def test_repeated_eigenvalues_split_by_index(self) -> None:
        """Test ties at a cutoff are assigned by eigenindex, identically on every call."""
        repeated = SpectralBasis(eigenvalues=np.array([0.0, 1.0, 1.0, 1.0, 2.0]), eigenvectors=np.eye(5))
        first = build_filter_bank(repeated, 0.4, 0.2)
        second = build_filter_bank(repeated, 0.4, 0.2)
        assert np.flatnonzero(first.low_mask).tolist() == [0, 1]
        assert np.array_equal(first.low_mask, second.low_mask)

    def test_cutoffs(self) -> None:
        """Test the recorded cutoff eigenvalues."""
        bank = build_filter_bank(_flat_basis(10), 0.2, 0.3)
        assert bank.lambda_low == 1.0
        assert bank.lambda_high == 7.0

    @pytest.mark.parametrize(("p_low", "p_high"), [(0.0, 0.2), (0.2, 1.0), (0.6, 0.6)])
    def test_invalid_shares(self, p_low: float, p_high: float) -> None:
        """Test shares outside (0, 1) or overlapping quotas."""
        with pytest.raises(ValueError):
            build_filter_bank(_flat_basis(10), p_low, p_high)


class TestBandFiltering:
    """Tests for apply_band, vertex_filter and select_components."""

    def test_bands_sum_to_original(self, basis: SpectralBasis) -> None:
        """Test low + mid + high reproduces the spectrum."""
        bank = build_filter_bank(basis)
        spec = gft(np.random.default_rng(2).standard_normal((basis.size, 4)), basis)
        total = sum(apply_band(spec, bank, band).coefficients for band in BandEnum)
        assert np.allclose(total, spec.coefficients)

    def test_idempotent(self, basis: SpectralBasis) -> None:
        """Test filtering twice equals filtering once."""
        bank = build_filter_bank(basis)
        spec = gft(np.random.default_rng(3).standard_normal((basis.size, 4)), basis)
        once = apply_band(spec, bank, BandEnum.HIGH)
        assert np.array_equal(apply_band(once, bank, BandEnum.HIGH).coefficients, once.coefficients)

    @pytest.mark.parametrize("band", list(BandEnum))
    def test_vertex_and_spectral_paths_agree(self, basis: SpectralBasis, band: BandEnum) -> None:
        """Test U H U^T X equals the inverse transform of the masked spectrum."""
        bank = build_filter_bank(basis)
        x = np.random.default_rng(4).standard_normal((basis.size, 6))
        spectral_path = igft(apply_band(gft(x, basis), bank, band), basis)
        assert np.allclose(vertex_filter(x, basis, bank.mask(band)), spectral_path, atol=1e-8)

    def test_select_all_is_identity(self, basis: SpectralBasis) -> None:
        """Test every band and all columns leave the spectrum unchanged."""
        bank = build_filter_bank(basis)
        spec = gft(np.random.default_rng(5).standard_normal((basis.size, 6)), basis)
        selected = select_components(spec, bank, set(BandEnum), 6)
        assert np.array_equal(selected.matrix, spec.coefficients)

    def test_select_high_zeroes_other_rows(self, basis: SpectralBasis) -> None:
        """Test rows outside the high band carry no energy."""
        bank = build_filter_bank(basis)
        spec = gft(np.random.default_rng(6).standard_normal((basis.size, 6)), basis)
        selected = select_components(spec, bank, {BandEnum.HIGH}, 4)
        assert selected.matrix.shape == (basis.size, 4)
        assert np.all(selected.matrix[bank.high_mask == 0.0] == 0.0)

    def test_select_rejects_bad_k(self, basis: SpectralBasis) -> None:
        """Test K beyond D is rejected."""
        bank = build_filter_bank(basis)
        spec = gft(np.ones((basis.size, 3)), basis)
        with pytest.raises(ValueError):
            select_components(spec, bank, {BandEnum.LOW}, 4)

    def test_band_energy_adds_up(self, basis: SpectralBasis) -> None:
        """Test band energies sum to the total spectral energy."""
        bank = build_filter_bank(basis)
        spec = gft(np.random.default_rng(7).standard_normal((basis.size, 5)), basis)
        assert sum(band_energy(spec, bank).values()) == pytest.approx(np.sum(spec.coefficients**2))

    def test_planted_gap_survives_selection(self) -> None:
        """Test the class-1 high-band energy excess remains after keeping only the high band."""
        from freq_brain.data.synthetic import generate_synthetic

        ds = generate_synthetic(40, 16, 64, "high", 2.0, 7)
        basis = eigendecompose(laplacian(ds.base_adjacency))
        bank = build_filter_bank(basis)
        energy = np.array(
            [np.sum(select_components(gft(r.series, basis), bank, {BandEnum.HIGH}).matrix ** 2) for r in ds.records]
        )
        ratio = energy[ds.labels == 1].mean() / energy[ds.labels == 0].mean()
        assert 2.5 <= ratio <= 3.5

    def test_feature_transform_commutes(self, basis: SpectralBasis) -> None:
        """Test a right feature transform commutes with the node transform."""
        rng = np.random.default_rng(8)
        x = rng.standard_normal((basis.size, 4))
        mixing = rng.standard_normal((4, 4))
        spec = gft(x, basis)
        mixed = SpectralFeatures(coefficients=spec.coefficients @ mixing, basis_key=spec.basis_key)
        assert np.allclose(igft(mixed, basis), x @ mixing, atol=1e-8)
