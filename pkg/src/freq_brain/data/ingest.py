"""Manifest-based dataset loading and writing.

Manifest format: a header line ``n_rois,n_timepoints`` followed by one row per
subject ``id,label,relative_path[,site]``. Each subject file holds plain numeric
text, one ROI per row, comma-separated.
"""

import hashlib
import logging
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from freq_brain.enums import ProvenanceEnum
from freq_brain.exceptions import DataError
from freq_brain.models import Dataset, SubjectRecord

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.csv"


def _first_error(exc: ValidationError) -> str:
    return str(exc.errors()[0]["msg"]).removeprefix("Value error, ")


def _parse_header(line: str, path: Path) -> tuple[int, int]:
    parts = [part.strip() for part in line.split(",")]
    try:
        n_rois, n_timepoints = (int(part) for part in parts)
    except ValueError as exc:
        raise DataError(f"{path}: header must be 'n_rois,n_timepoints', got {line!r}") from exc
    return n_rois, n_timepoints


def _read_matrix(path: Path, subject_id: str) -> np.ndarray:
    if not path.exists():
        raise DataError(f"missing series file for subject {subject_id}: {path}")
    try:
        matrix = np.loadtxt(path, delimiter=",", dtype=np.float64, ndmin=2)
    except ValueError as exc:
        raise DataError(f"cannot parse series file for subject {subject_id}: {path}") from exc
    if not np.all(np.isfinite(matrix)):
        raise DataError(f"non-finite value in series of subject {subject_id}")
    return matrix


def load_dataset(manifest_path: Path | str) -> Dataset:
    """Load and validate a dataset from a manifest.

    Args:
        manifest_path: Path to the manifest file.

    Returns:
        Dataset with records in manifest order.

    Raises:
        DataError: On a missing file, empty dataset, shape mismatch,
            non-finite value or label outside {0, 1}.
    """
    manifest_path = Path(manifest_path)
    if not manifest_path.exists():
        raise DataError(f"manifest not found: {manifest_path}")

    lines = [line.strip() for line in manifest_path.read_text().splitlines() if line.strip()]
    if not lines:
        raise DataError(f"{manifest_path}: missing header line")
    n_rois, n_timepoints = _parse_header(lines[0], manifest_path)
    if len(lines) == 1:
        raise DataError("empty dataset")

    records: list[SubjectRecord] = []
    seen: set[str] = set()
    for line in lines[1:]:
        fields = [field.strip() for field in line.split(",")]
        if len(fields) not in (3, 4):
            raise DataError(f"malformed manifest row: {line!r}")
        subject_id, label_text, relative = fields[:3]
        site = fields[3] if len(fields) == 4 and fields[3] else None
        if subject_id in seen:
            raise DataError(f"duplicate subject ID {subject_id}")
        seen.add(subject_id)
        if label_text not in ("0", "1"):
            raise DataError(f"label outside {{0,1}} for subject {subject_id}: {label_text!r}")

        series = _read_matrix(manifest_path.parent / relative, subject_id)
        if series.shape != (n_rois, n_timepoints):
            raise DataError(f"shape mismatch for subject {subject_id}: expected {(n_rois, n_timepoints)}, got {series.shape}")
        try:
            records.append(SubjectRecord(id=subject_id, series=series, label=int(label_text), site=site))
        except ValidationError as exc:
            raise DataError(f"invalid series for subject {subject_id}: {_first_error(exc)}") from exc

    try:
        ds = Dataset(records=tuple(records), n_rois=n_rois, n_timepoints=n_timepoints, provenance=ProvenanceEnum.FILE)
    except ValidationError as exc:
        raise DataError(f"{manifest_path}: {_first_error(exc)}") from exc
    logger.info("Loaded %d subjects (%d ROIs x %d time points) from %s", len(records), n_rois, n_timepoints, manifest_path)
    return ds


def write_dataset(ds: Dataset, out_dir: Path | str, overwrite: bool = False) -> Path:
    """Write a dataset in the manifest format.

    Values are written with 17 significant digits so that re-loading is exact.

    Args:
        ds: Dataset to write.
        out_dir: Target directory; created if missing.
        overwrite: Allow writing into a non-empty directory.

    Returns:
        Path to the written manifest.

    Raises:
        FileExistsError: If the directory is not empty and overwrite is False.
    """
    out_dir = Path(out_dir)
    if out_dir.exists() and any(out_dir.iterdir()) and not overwrite:
        raise FileExistsError(f"refusing to overwrite non-empty directory {out_dir}")
    (out_dir / "series").mkdir(parents=True, exist_ok=True)

    rows = [f"{ds.n_rois},{ds.n_timepoints}"]
    for record in ds.records:
        relative = f"series/{record.id}.csv"
        np.savetxt(out_dir / relative, record.series, delimiter=",", fmt="%.17g")
        row = f"{record.id},{record.label},{relative}"
        if record.site:
            row += f",{record.site}"
        rows.append(row)

    manifest_path = out_dir / MANIFEST_NAME
    manifest_path.write_text("\n".join(rows) + "\n")
    logger.info("Wrote %d subjects to %s", len(ds), manifest_path)
    return manifest_path


def dataset_digest(ds: Dataset) -> str:
    """Content hash of a dataset.

    Args:
        ds: Dataset to hash.

    Returns:
        Hex sha256 over IDs, labels and series bytes.
    """
    digest = hashlib.sha256()
    digest.update(f"{ds.n_rois},{ds.n_timepoints}".encode())
    for record in ds.records:
        digest.update(f"{record.id}:{record.label}".encode())
        digest.update(np.ascontiguousarray(record.series, dtype="<f8").tobytes())
    return digest.hexdigest()
