"""Label access log used to audit that test labels are read only at evaluation."""

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np

from freq_brain.enums import StageEnum
from freq_brain.models import Dataset, SplitPlan

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LabelRead:
    """One batch of label lookups."""

    stage: StageEnum
    purpose: str
    seed: int
    fold: int
    label_fraction: float
    ids: tuple[str, ...]


@dataclass
class LabelVault:
    """Owns the labels of a dataset and records every lookup."""

    labels: dict[str, int]
    reads: list[LabelRead] = field(default_factory=list)

    @classmethod
    def from_dataset(cls, ds: Dataset) -> "LabelVault":
        """Take the labels out of a dataset.

        Args:
            ds: Dataset.

        Returns:
            LabelVault keyed by record ID.
        """
        return cls(labels={record.id: record.label for record in ds.records})

    def read(
        self,
        ids: Iterable[str],
        purpose: str,
        seed: int,
        fold: int,
        label_fraction: float,
        stage: StageEnum = StageEnum.EVALUATE,
    ) -> np.ndarray:
        """Look up labels and log the access.

        Args:
            ids: Record IDs.
            purpose: ``finetune`` or ``test``.
            seed: Protocol seed.
            fold: Fold index.
            label_fraction: Label fraction of the split plan in use.
            stage: Workflow stage performing the read.

        Returns:
            Labels aligned with ``ids``.
        """
        ids = tuple(ids)
        self.reads.append(LabelRead(stage=stage, purpose=purpose, seed=seed, fold=fold, label_fraction=label_fraction, ids=ids))
        return np.array([self.labels[rid] for rid in ids], dtype=np.int64)

    def audit(self, plans: dict[tuple[int, float], SplitPlan]) -> bool:
        """Check every logged read against the split plans.

        Fine-tuning reads must stay inside the fold's labeled subset, test
        reads inside the held-out fold, and no read may happen during pretraining.

        Args:
            plans: Split plan per (seed, label fraction).

        Returns:
            True if no read violated the protocol.
        """
        for entry in self.reads:
            plan = plans.get((entry.seed, entry.label_fraction))
            if entry.stage != StageEnum.EVALUATE or plan is None:
                logger.warning("label read outside evaluation: %s seed=%d fold=%d", entry.stage, entry.seed, entry.fold)
                return False
            allowed = set(plan.labeled[entry.fold]) if entry.purpose == "finetune" else set(plan.test_ids(entry.fold))
            if not set(entry.ids) <= allowed:
                logger.warning("%s read for seed=%d fold=%d left its allowed subset", entry.purpose, entry.seed, entry.fold)
                return False
        return True
