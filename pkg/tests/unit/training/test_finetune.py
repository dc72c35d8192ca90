"""Tests for the classifier head."""

import numpy as np
import pytest
import torch

from freq_brain.config.settings import FinetuneSettings
from freq_brain.encoders import Representation, fuse, init_params
from freq_brain.enums import DomainEnum
from freq_brain.exceptions import DataError
from freq_brain.seeding import derive_seed
from freq_brain.training import embed, finetune, init_head, pool, prepare_subjects


def _separable(n_per_class: int = 10) -> tuple[torch.Tensor, np.ndarray]:
    rng = np.random.default_rng(0)
    labels = np.repeat([0, 1], n_per_class)
    features = rng.normal(0.0, 0.1, (2 * n_per_class, 3))
    features[:, 0] += np.where(labels == 1, 2.0, -2.0)
    return torch.as_tensor(features), labels


class TestFinetune:
    """Tests for finetune."""

    def test_separable_data(self) -> None:
        """Test linearly separable pooled vectors are fitted perfectly within 200 epochs."""
        features, labels = _separable()
        head = finetune(features, labels, 200, seed=0, settings=FinetuneSettings(learning_rate=0.05))
        predictions = (head.predict_proba(features) >= 0.5).astype(int)
        assert np.array_equal(predictions, labels)

    def test_identical_vectors(self) -> None:
        """Test signal-free inputs end near chance."""
        features = torch.ones(20, 3, dtype=torch.float64)
        labels = np.repeat([0, 1], 10)
        head = finetune(features, labels, 100, seed=0)
        accuracy = np.mean((head.predict_proba(features) >= 0.5).astype(int) == labels)
        assert abs(accuracy - 0.5) <= 0.1
        assert torch.equal(head.scale, torch.ones(3, dtype=torch.float64))

    def test_zero_epochs_returns_init(self) -> None:
        """Test epochs = 0 returns the initial weights."""
        features, labels = _separable()
        head = finetune(features, labels, 0, seed=4)
        reference = init_head(3, derive_seed(4, "head"))
        assert torch.equal(head.weight, reference.weight)
        assert torch.equal(head.bias, torch.zeros(2, dtype=torch.float64))

    def test_standardization_from_labeled_subset(self) -> None:
        """Test the stored center and scale are the labeled-subset statistics."""
        features, labels = _separable()
        head = finetune(features, labels, 0, seed=0)
        assert torch.allclose(head.center, features.mean(dim=0))
        assert torch.allclose(head.scale, features.std(dim=0, unbiased=False))

    def test_single_class(self) -> None:
        """Test a single-class labeled subset is a data error."""
        with pytest.raises(DataError, match="single class"):
            finetune(torch.zeros(4, 3, dtype=torch.float64), [1, 1, 1, 1], 5, seed=0)

    def test_length_mismatch(self) -> None:
        """Test labels must align with the representations."""
        with pytest.raises(DataError):
            finetune(torch.zeros(4, 3, dtype=torch.float64), [0, 1, 0], 5, seed=0)

    def test_encoders_stay_frozen(self, small_dataset) -> None:
        """Test fine-tuning on fused embeddings leaves the encoders unchanged."""
        views = prepare_subjects(small_dataset)
        tgnn, fgnn = init_params(8, 16, 16, seed=0)
        before = [tensor.clone() for tensor in (*tgnn.state_dict().values(), *fgnn.state_dict().values())]
        fused = [fuse(zt, zf) for zt, zf in embed(views, tgnn, fgnn)]
        finetune(fused, small_dataset.labels, 20, seed=0)
        after = [*tgnn.state_dict().values(), *fgnn.state_dict().values()]
        assert all(torch.equal(x, y) for x, y in zip(before, after, strict=True))


class TestPool:
    """Tests for pool."""

    def test_mean_over_nodes(self) -> None:
        """Test pooled vectors are node means and carry no graph."""
        z = torch.arange(6.0, dtype=torch.float64).reshape(3, 2)
        pooled = pool([Representation(z, DomainEnum.FUSED)])
        assert torch.equal(pooled, torch.tensor([[2.0, 3.0]], dtype=torch.float64))
        assert not pooled.requires_grad
