"""Tests for fold metrics."""

import itertools

import numpy as np
import pytest

from freq_brain.evaluation import compute_metrics
from freq_brain.exceptions import DataError


def _pairwise_auc(scores: list[float], labels: list[int]) -> float:
    positives = [s for s, y in zip(scores, labels, strict=True) if y == 1]
    negatives = [s for s, y in zip(scores, labels, strict=True) if y == 0]
    wins = sum(1.0 if p > n else 0.5 if p == n else 0.0 for p, n in itertools.product(positives, negatives))
    return wins / (len(positives) * len(negatives))


class TestComputeMetrics:
    """Tests for compute_metrics."""

    def test_perfect_ordering(self) -> None:
        """Test separated scores give AUC and accuracy 1."""
        metrics = compute_metrics([0.1, 0.2, 0.8, 0.9], [0, 0, 1, 1])
        assert metrics.auc == 1.0
        assert metrics.accuracy == 1.0
        assert metrics.recall == 1.0
        assert metrics.f1 == 1.0

    def test_constant_scores(self) -> None:
        """Test all-0.5 scores give AUC 0.5 under midranks."""
        metrics = compute_metrics([0.5] * 6, [0, 1, 0, 1, 0, 1])
        assert metrics.auc == pytest.approx(0.5)
        assert metrics.accuracy == pytest.approx(0.5)
        assert metrics.recall == 1.0

    def test_eight_sample_fixture(self) -> None:
        """Test against brute-force pairwise AUC and a hand-counted confusion matrix."""
        scores = [0.1, 0.4, 0.5, 0.7, 0.3, 0.5, 0.8, 0.9]
        labels = [0, 0, 0, 0, 1, 1, 1, 1]
        metrics = compute_metrics(scores, labels, seed=3, fold=1, label_fraction=0.2)
        # TP=3 FN=1 FP=2 TN=2
        assert metrics.auc == pytest.approx(_pairwise_auc(scores, labels))
        assert metrics.auc == pytest.approx(11.5 / 16)
        assert metrics.accuracy == pytest.approx(5 / 8)
        assert metrics.recall == pytest.approx(3 / 4)
        assert metrics.f1 == pytest.approx(2 * 3 / (2 * 3 + 2 + 1))
        assert (metrics.seed, metrics.fold, metrics.label_fraction) == (3, 1, 0.2)

    def test_no_positive_predictions(self) -> None:
        """Test F1 and recall fall back to zero without positive predictions."""
        metrics = compute_metrics(np.array([0.1, 0.2, 0.3, 0.4]), np.array([0, 1, 0, 1]))
        assert metrics.recall == 0.0
        assert metrics.f1 == 0.0

    def test_single_class(self) -> None:
        """Test AUC is undefined for one class."""
        with pytest.raises(DataError, match="AUC"):
            compute_metrics([0.2, 0.7], [1, 1])

    def test_length_mismatch(self) -> None:
        """Test scores and labels must align."""
        with pytest.raises(DataError):
            compute_metrics([0.2, 0.7, 0.1], [0, 1])
