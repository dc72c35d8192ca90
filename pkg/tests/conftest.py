"""Shared test fixtures and configuration."""

from pathlib import Path

import numpy as np
import pytest

from freq_brain.config.settings import RunConfig
from freq_brain.data import generate_synthetic, write_dataset
from freq_brain.models import Dataset
from freq_brain.training.subjects import SubjectView, prepare_subjects


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Keep FREQBRAIN_* variables of the developer shell out of the tests."""
    import os

    for name in list(os.environ):
        if name.startswith("FREQBRAIN_"):
            monkeypatch.delenv(name, raising=False)


@pytest.fixture(scope="session")
def small_dataset() -> Dataset:
    """Twelve balanced subjects, 8 ROIs x 16 time points, high-band signal."""
    return generate_synthetic(n_subjects=12, n_rois=8, n_timepoints=16, band="high", snr=2.0, seed=3)


@pytest.fixture
def quick_config() -> RunConfig:
    """Protocol settings small enough for unit and integration tests."""
    return RunConfig().with_overrides(
        [
            "protocol.folds=3",
            "protocol.seeds=[0]",
            "protocol.pretrain_epochs=2",
            "protocol.label_fraction=0.5",
            "finetune.epochs=5",
        ]
    )


@pytest.fixture
def path3_laplacian() -> np.ndarray:
    """Laplacian of the unweighted path 0-1-2 (eigenvalues 0, 1, 3)."""
    return np.array([[1.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 1.0]])


@pytest.fixture
def manifest_path(tmp_path: Path, small_dataset: Dataset) -> Path:
    """Small dataset written in the manifest format."""
    return write_dataset(small_dataset, tmp_path / "data")


@pytest.fixture(scope="session")
def seeded_view(small_dataset: Dataset) -> SubjectView:
    """First subject of the small dataset, prepared with default settings."""
    return prepare_subjects(small_dataset)[0]
