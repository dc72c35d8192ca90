"""Tests for the label access log."""

import numpy as np
import pytest

from freq_brain.data.splits import make_splits
from freq_brain.enums import StageEnum
from freq_brain.evaluation import LabelVault


@pytest.fixture
def plan(small_dataset):
    """Three-fold plan with half of each training fold labeled."""
    return make_splits(small_dataset, 3, 0.5, seed=0)


class TestLabelVault:
    """Tests for LabelVault."""

    def test_read_returns_aligned_labels(self, small_dataset, plan) -> None:
        """Test lookups follow the requested order and are logged."""
        vault = LabelVault.from_dataset(small_dataset)
        ids = plan.test_ids(0)
        expected = np.array([small_dataset.records[small_dataset.ids.index(rid)].label for rid in ids])
        assert np.array_equal(vault.read(ids, "test", 0, 0, 0.5), expected)
        assert len(vault.reads) == 1
        assert vault.reads[0].ids == tuple(ids)

    def test_clean_protocol_passes(self, small_dataset, plan) -> None:
        """Test labeled-subset and held-out reads pass the audit."""
        vault = LabelVault.from_dataset(small_dataset)
        for fold in range(3):
            vault.read(plan.labeled[fold], "finetune", 0, fold, 0.5)
            vault.read(plan.test_ids(fold), "test", 0, fold, 0.5)
        assert vault.audit({(0, 0.5): plan})

    def test_unlabeled_finetune_read_fails(self, small_dataset, plan) -> None:
        """Test fine-tuning on a test record is flagged."""
        vault = LabelVault.from_dataset(small_dataset)
        vault.read([plan.test_ids(0)[0]], "finetune", 0, 0, 0.5)
        assert not vault.audit({(0, 0.5): plan})

    def test_pretrain_read_fails(self, small_dataset, plan) -> None:
        """Test any read during pretraining is flagged."""
        vault = LabelVault.from_dataset(small_dataset)
        vault.read(plan.labeled[0], "finetune", 0, 0, 0.5, stage=StageEnum.PRETRAIN)
        assert not vault.audit({(0, 0.5): plan})

    def test_unknown_plan_fails(self, small_dataset, plan) -> None:
        """Test reads for a plan that does not exist are flagged."""
        vault = LabelVault.from_dataset(small_dataset)
        vault.read(plan.test_ids(0), "test", 9, 0, 0.5)
        assert not vault.audit({(0, 0.5): plan})
