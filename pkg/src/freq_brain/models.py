"""Pydantic models for datasets, splits, traces and reports."""

import math
from typing import Any

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from freq_brain.enums import ProvenanceEnum

METRIC_NAMES = ("accuracy", "auc", "recall", "f1")


class SubjectRecord(BaseModel):
    """One subject's ROI-by-time signal matrix with its label."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    id: str = Field(min_length=1, description="Unique subject identifier")
    series: np.ndarray = Field(description="N x D signal matrix, one ROI per row")
    label: int = Field(ge=0, le=1, description="Diagnostic label (0 control, 1 patient)")
    site: str | None = Field(default=None, description="Optional acquisition site tag")

    @field_validator("series", mode="before")
    @classmethod
    def _check_series(cls, value: np.ndarray) -> np.ndarray:
        series = np.array(value, dtype=np.float64)
        if series.ndim != 2:
            raise ValueError(f"series must be 2-D, got shape {series.shape}")
        if series.shape[0] < 3 or series.shape[1] < 4:
            raise ValueError(f"series needs at least 3 ROIs and 4 time points, got {series.shape}")
        if not np.all(np.isfinite(series)):
            raise ValueError("series contains non-finite values")
        series.setflags(write=False)
        return series

    @property
    def n_rois(self) -> int:
        """Number of ROIs (graph nodes)."""
        return int(self.series.shape[0])

    @property
    def n_timepoints(self) -> int:
        """Number of time points (node feature length)."""
        return int(self.series.shape[1])


class Dataset(BaseModel):
    """An ordered, shape-consistent collection of subject records."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    records: tuple[SubjectRecord, ...]
    n_rois: int = Field(ge=3)
    n_timepoints: int = Field(ge=4)
    provenance: ProvenanceEnum
    base_adjacency: np.ndarray | None = Field(default=None, description="Generator graph of a synthetic dataset")

    @model_validator(mode="after")
    def _check_consistency(self) -> "Dataset":
        if not self.records:
            raise ValueError("empty dataset")
        ids = [record.id for record in self.records]
        if len(set(ids)) != len(ids):
            raise ValueError("record IDs must be unique")
        for record in self.records:
            if record.series.shape != (self.n_rois, self.n_timepoints):
                raise ValueError(f"shape mismatch for subject {record.id}: {record.series.shape}")
        return self

    def __len__(self) -> int:
        return len(self.records)

    @property
    def ids(self) -> list[str]:
        """Record IDs in manifest order."""
        return [record.id for record in self.records]

    @property
    def labels(self) -> np.ndarray:
        """Labels in manifest order."""
        return np.array([record.label for record in self.records], dtype=np.int64)

    def with_labels(self, labels: list[int] | np.ndarray) -> "Dataset":
        """Return a copy of the dataset with labels replaced.

        Args:
            labels: New labels in manifest order.

        Returns:
            Dataset sharing the series of this one.
        """
        records = tuple(record.model_copy(update={"label": int(label)}) for record, label in zip(self.records, labels, strict=True))
        return self.model_copy(update={"records": records})


class SplitPlan(BaseModel):
    """Stratified fold assignment plus the labeled subset of each training fold."""

    model_config = ConfigDict(frozen=True)

    fold_count: int = Field(ge=2)
    fold_assignments: dict[str, int]
    label_fraction: float = Field(gt=0.0, le=1.0)
    seed: int = Field(ge=0)
    labeled: dict[int, tuple[str, ...]] = Field(description="Fold index -> labeled training IDs")

    def test_ids(self, fold: int) -> list[str]:
        """IDs held out in a fold.

        Args:
            fold: Fold index.

        Returns:
            Test IDs in assignment order.
        """
        return [rid for rid, assigned in self.fold_assignments.items() if assigned == fold]

    def train_ids(self, fold: int) -> list[str]:
        """IDs used for training in a fold.

        Args:
            fold: Fold index.

        Returns:
            Training IDs in assignment order.
        """
        return [rid for rid, assigned in self.fold_assignments.items() if assigned != fold]


class TrainTrace(BaseModel):
    """Per-epoch loss trace of a pretraining run."""

    seed: int
    total: list[float] = Field(default_factory=list)
    alignment: list[float] = Field(default_factory=list)
    time_decorrelation: list[float] = Field(default_factory=list)
    freq_decorrelation: list[float] = Field(default_factory=list)
    seconds: list[float] = Field(default_factory=list)
    n_subjects: int = 0
    config: dict[str, Any] = Field(default_factory=dict)

    @property
    def epochs(self) -> int:
        """Number of recorded epochs."""
        return len(self.total)

    def mean_loss(self, epoch: int) -> float:
        """Mean per-subject loss of an epoch.

        Args:
            epoch: Epoch index (negative indices allowed).

        Returns:
            Total epoch loss divided by the subject count.
        """
        return self.total[epoch] / max(self.n_subjects, 1)

    def to_frame(self) -> pd.DataFrame:
        """Tabulate the trace.

        Returns:
            DataFrame with iteration, total, the three terms and seconds.
        """
        return pd.DataFrame(
            {
                "iteration": range(1, self.epochs + 1),
                "total": self.total,
                "term1": self.alignment,
                "term2": self.time_decorrelation,
                "term3": self.freq_decorrelation,
                "seconds": self.seconds,
            }
        )


class FoldMetrics(BaseModel):
    """Classification metrics of one fold evaluation."""

    accuracy: float = Field(ge=0.0, le=1.0)
    auc: float = Field(ge=0.0, le=1.0)
    recall: float = Field(ge=0.0, le=1.0)
    f1: float = Field(ge=0.0, le=1.0)
    seed: int | None = None
    fold: int | None = None
    label_fraction: float | None = None


class MetricReport(BaseModel):
    """Fold-level metrics aggregated across folds and seeds.

    Standard deviations are population deviations over all fold x seed values.
    """

    folds: list[FoldMetrics]
    mean: dict[str, float]
    std: dict[str, float]
    config: dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def from_folds(cls, folds: list[FoldMetrics], config: dict[str, Any] | None = None) -> "MetricReport":
        """Aggregate fold-level metrics.

        Args:
            folds: Fold-level results; aggregation is order independent.
            config: Optional config snapshot to attach.

        Returns:
            MetricReport with means and population standard deviations.

        Raises:
            ValueError: If no folds are given.
        """
        if not folds:
            raise ValueError("cannot aggregate an empty list of folds")
        ordered = sorted(folds, key=lambda m: (m.label_fraction or 0.0, m.seed or 0, m.fold or 0))
        mean: dict[str, float] = {}
        std: dict[str, float] = {}
        for name in METRIC_NAMES:
            values = np.array([getattr(m, name) for m in ordered], dtype=np.float64)
            mean[name] = float(values.mean())
            std[name] = float(values.std(ddof=0))
        return cls(folds=ordered, mean=mean, std=std, config=config or {})

    def to_frame(self) -> pd.DataFrame:
        """Tabulate fold-level values.

        Returns:
            DataFrame with one row per fold x seed.
        """
        return pd.DataFrame([fold.model_dump() for fold in self.folds])

    def summary(self) -> dict[str, Any]:
        """Summary suitable for JSON export.

        Returns:
            Dict with means, stds, fold count and config snapshot.
        """
        return {"n_folds": len(self.folds), "mean": self.mean, "std": self.std, "config": self.config}


class ScalingReport(BaseModel):
    """Mean forward time per graph size and the fitted log-log slope."""

    n_values: list[int]
    k: int
    mean_seconds: list[float]
    slope: float | None = None

    @field_validator("slope")
    @classmethod
    def _finite_slope(cls, value: float | None) -> float | None:
        if value is not None and not math.isfinite(value):
            raise ValueError("slope must be finite")
        return value

    def to_frame(self) -> pd.DataFrame:
        """Tabulate the timings.

        Returns:
            DataFrame with columns n and mean_seconds.
        """
        return pd.DataFrame({"n": self.n_values, "mean_seconds": self.mean_seconds})
