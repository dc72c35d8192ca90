"""Tests for manifest loading and writing."""

from pathlib import Path

import numpy as np
import pytest

from freq_brain.data.ingest import MANIFEST_NAME, dataset_digest, load_dataset, write_dataset
from freq_brain.enums import ProvenanceEnum
from freq_brain.exceptions import DataError


def _write_manifest(directory: Path, header: str, rows: list[str]) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / MANIFEST_NAME
    path.write_text("\n".join([header, *rows]) + "\n")
    return path


class TestLoadDataset:
    """Tests for load_dataset."""

    def test_loads_two_subjects(self, tmp_path: Path) -> None:
        """Test a two-subject manifest of 116 x 170 matrices."""
        rng = np.random.default_rng(0)
        rows = []
        for index in range(2):
            np.savetxt(tmp_path / f"s{index}.csv", rng.standard_normal((116, 170)), delimiter=",")
            rows.append(f"s{index},{index},s{index}.csv")
        ds = load_dataset(_write_manifest(tmp_path, "116,170", rows))
        assert len(ds) == 2
        assert (ds.n_rois, ds.n_timepoints) == (116, 170)
        assert ds.provenance == ProvenanceEnum.FILE
        assert ds.ids == ["s0", "s1"]

    def test_empty_manifest(self, tmp_path: Path) -> None:
        """Test a manifest without subjects is rejected."""
        with pytest.raises(DataError, match="empty dataset"):
            load_dataset(_write_manifest(tmp_path, "8,16", []))

    def test_shape_mismatch_names_subject(self, manifest_path: Path) -> None:
        """Test a wrongly shaped series file names the offending ID."""
        np.savetxt(manifest_path.parent / "series" / "sub-004.csv", np.ones((8, 15)), delimiter=",")
        with pytest.raises(DataError, match="sub-004"):
            load_dataset(manifest_path)

    def test_missing_manifest_names_path(self, tmp_path: Path) -> None:
        """Test the diagnostic names the missing path."""
        missing = tmp_path / "nope" / MANIFEST_NAME
        with pytest.raises(DataError, match="nope"):
            load_dataset(missing)

    def test_too_few_rois_is_data_error(self, tmp_path: Path) -> None:
        """Test a 2 x 5 series is reported as a data error naming the subject."""
        np.savetxt(tmp_path / "tiny.csv", np.arange(10.0).reshape(2, 5), delimiter=",")
        with pytest.raises(DataError, match="tiny-subject"):
            load_dataset(_write_manifest(tmp_path, "2,5", ["tiny-subject,0,tiny.csv"]))

    def test_label_outside_range(self, tmp_path: Path) -> None:
        """Test labels other than 0 and 1 are rejected."""
        np.savetxt(tmp_path / "a.csv", np.arange(32.0).reshape(4, 8) ** 2, delimiter=",")
        with pytest.raises(DataError, match="label"):
            load_dataset(_write_manifest(tmp_path, "4,8", ["a,2,a.csv"]))

    def test_non_finite_value(self, tmp_path: Path) -> None:
        """Test NaN entries are rejected."""
        matrix = np.ones((4, 8))
        matrix[1, 2] = np.nan
        np.savetxt(tmp_path / "a.csv", matrix, delimiter=",")
        with pytest.raises(DataError, match="non-finite"):
            load_dataset(_write_manifest(tmp_path, "4,8", ["a,0,a.csv"]))

    def test_duplicate_id(self, tmp_path: Path) -> None:
        """Test duplicate subject IDs are rejected."""
        np.savetxt(tmp_path / "a.csv", np.arange(32.0).reshape(4, 8), delimiter=",")
        with pytest.raises(DataError, match="duplicate"):
            load_dataset(_write_manifest(tmp_path, "4,8", ["a,0,a.csv", "a,1,a.csv"]))


class TestWriteDataset:
    """Tests for write_dataset and dataset_digest."""

    def test_roundtrip_is_exact(self, manifest_path: Path, small_dataset) -> None:
        """Test written datasets reload bit-identically."""
        loaded = load_dataset(manifest_path)
        assert loaded.ids == small_dataset.ids
        assert np.array_equal(loaded.labels, small_dataset.labels)
        for original, reloaded in zip(small_dataset.records, loaded.records, strict=True):
            assert np.array_equal(original.series, reloaded.series)

    def test_digest_survives_roundtrip(self, manifest_path: Path, small_dataset) -> None:
        """Test the content hash ignores provenance."""
        assert dataset_digest(load_dataset(manifest_path)) == dataset_digest(small_dataset)

    def test_digest_sees_labels(self, small_dataset) -> None:
        """Test relabeling changes the content hash."""
        flipped = small_dataset.with_labels(1 - small_dataset.labels)
        assert dataset_digest(flipped) != dataset_digest(small_dataset)

    def test_refuses_non_empty_directory(self, manifest_path: Path, small_dataset) -> None:
        """Test existing output is not overwritten by default."""
        with pytest.raises(FileExistsError):
            write_dataset(small_dataset, manifest_path.parent)

    def test_overwrite_flag(self, manifest_path: Path, small_dataset) -> None:
        """Test overwrite=True rewrites the directory."""
        assert write_dataset(small_dataset, manifest_path.parent, overwrite=True) == manifest_path
