"""Binary classification metrics of one fold."""

from collections.abc import Sequence

import numpy as np
from sklearn.metrics import accuracy_score, f1_score, recall_score, roc_auc_score

from freq_brain.exceptions import DataError
from freq_brain.models import FoldMetrics

THRESHOLD = 0.5


def compute_metrics(
    scores: Sequence[float] | np.ndarray,
    labels: Sequence[int] | np.ndarray,
    seed: int | None = None,
    fold: int | None = None,
    label_fraction: float | None = None,
) -> FoldMetrics:
    """Accuracy, AUC, recall and F1 of class-1 probabilities.

    A score of exactly 0.5 predicts class 1. AUC is the Mann-Whitney
    statistic with midranks for ties; recall and F1 refer to class 1.

    Args:
        scores: Class-1 probabilities.
        labels: True labels in {0, 1}.
        seed: Seed tag of the evaluation.
        fold: Fold tag of the evaluation.
        label_fraction: Label-fraction tag of the evaluation.

    Returns:
        FoldMetrics.

    Raises:
        DataError: If lengths differ or only one class is present.
    """
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if scores.shape != labels.shape:
        raise DataError(f"{scores.size} scores but {labels.size} labels")
    if np.unique(labels).size < 2:
        raise DataError("AUC is undefined when only one class is present")

    predicted = (scores >= THRESHOLD).astype(np.int64)
    return FoldMetrics(
        accuracy=float(accuracy_score(labels, predicted)),
        auc=float(roc_auc_score(labels, scores)),
        recall=float(recall_score(labels, predicted, pos_label=1, zero_division=0)),
        f1=float(f1_score(labels, predicted, pos_label=1, zero_division=0)),
        seed=seed,
        fold=fold,
        label_fraction=label_fraction,
    )
