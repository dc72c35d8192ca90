"""Stratified k-fold assignment and labeled-subset selection."""

import math

import numpy as np
from sklearn.model_selection import StratifiedKFold

from freq_brain.exceptions import DataError
from freq_brain.models import Dataset, SplitPlan
from freq_brain.seeding import derive_seed


def labeled_count(n_train: int, label_fraction: float) -> int:
    """Size of the labeled subset of a training fold.

    Args:
        n_train: Training fold size.
        label_fraction: Fraction in (0, 1].

    Returns:
        ceil(label_fraction * n_train), robust to float representation error.
    """
    return min(n_train, int(math.ceil(label_fraction * n_train - 1e-9)))


def _allocate(class_sizes: np.ndarray, total: int) -> np.ndarray:
    exact = total * class_sizes / class_sizes.sum()
    counts = np.floor(exact).astype(np.int64)
    remainder = total - int(counts.sum())
    # largest fractional part first, lower class index on ties
    for index in np.lexsort((np.arange(len(exact)), -(exact - counts)))[:remainder]:
        counts[index] += 1
    for index in np.flatnonzero((counts == 0) & (class_sizes > 0)):
        donor = int(np.argmax(counts))
        if counts[donor] > 1:
            counts[donor] -= 1
            counts[index] += 1
    return counts


def stratified_subset(labels: np.ndarray, size: int, seed: int) -> np.ndarray:
    """Draw a stratified subset of positions.

    Args:
        labels: Class labels of the candidate pool.
        size: Number of positions to draw.
        seed: Draw seed.

    Returns:
        Sorted positions into ``labels``.

    Raises:
        DataError: If the subset cannot contain both classes.
    """
    if size >= len(labels):
        return np.arange(len(labels))
    classes = np.unique(labels)
    counts = _allocate(np.array([np.sum(labels == c) for c in classes]), size)
    if len(classes) < 2 or np.any(counts == 0):
        raise DataError(f"a labeled subset of {size} samples would contain a single class")
    rng = np.random.default_rng(seed)
    chosen = [rng.permutation(np.flatnonzero(labels == c))[:count] for c, count in zip(classes, counts, strict=True)]
    return np.sort(np.concatenate(chosen))


def make_splits(ds: Dataset, fold_count: int, label_fraction: float, seed: int) -> SplitPlan:
    """Stratified folds plus a stratified labeled subset per training fold.

    Fold assignment depends only on (dataset, fold_count, seed), so plans built
    for different label fractions share their folds.

    Args:
        ds: Dataset to split.
        fold_count: Number of folds, at least 2.
        label_fraction: Share of each training fold flagged for fine-tuning.
        seed: Split seed.

    Returns:
        SplitPlan partitioning the records.

    Raises:
        ValueError: If fold_count or label_fraction is out of range.
        DataError: If fold_count exceeds the minority class count or a labeled subset loses a class.
    """
    if fold_count < 2:
        raise ValueError(f"fold_count must be >= 2, got {fold_count}")
    if not 0.0 < label_fraction <= 1.0:
        raise ValueError(f"label_fraction must be in (0, 1], got {label_fraction}")
    labels = ds.labels
    minority = int(np.min(np.bincount(labels, minlength=2)))
    if fold_count > minority:
        raise DataError(f"fold_count {fold_count} exceeds the minority class count {minority}")

    folds = StratifiedKFold(n_splits=fold_count, shuffle=True, random_state=derive_seed(seed, "folds"))
    assignment = np.empty(len(ds), dtype=np.int64)
    for fold, (_, test_index) in enumerate(folds.split(np.zeros((len(ds), 1)), labels)):
        assignment[test_index] = fold

    ids = ds.ids
    labeled: dict[int, tuple[str, ...]] = {}
    for fold in range(fold_count):
        train_index = np.flatnonzero(assignment != fold)
        size = labeled_count(len(train_index), label_fraction)
        picked = stratified_subset(labels[train_index], size, derive_seed(seed, f"labeled-{fold}"))
        labeled[fold] = tuple(ids[i] for i in train_index[picked])

    return SplitPlan(
        fold_count=fold_count,
        fold_assignments={rid: int(fold) for rid, fold in zip(ids, assignment, strict=True)},
        label_fraction=label_fraction,
        seed=seed,
        labeled=labeled,
    )
