"""Supervised classifier head on frozen, mean-pooled fused representations."""

import logging
from collections.abc import Sequence

import numpy as np
import torch
import torch.nn.functional as F  # noqa: N812
from torch import nn

from freq_brain.config.settings import FinetuneSettings
from freq_brain.encoders.base import DTYPE, Representation, glorot_uniform_
from freq_brain.exceptions import DataError, NumericError
from freq_brain.seeding import derive_seed

logger = logging.getLogger(__name__)

SCALE_FLOOR = 1e-12
N_CLASSES = 2


class ClassifierHead(nn.Module):
    """Linear softmax head over standardized pooled embeddings."""

    def __init__(self, d: int) -> None:
        """Create an untrained head.

        Args:
            d: Width of the pooled embedding.
        """
        super().__init__()
        self.linear = nn.Linear(d, N_CLASSES, dtype=DTYPE)
        self.register_buffer("center", torch.zeros(d, dtype=DTYPE))
        self.register_buffer("scale", torch.ones(d, dtype=DTYPE))

    @property
    def weight(self) -> torch.Tensor:
        """D x 2 weight matrix."""
        return self.linear.weight.detach().T

    @property
    def bias(self) -> torch.Tensor:
        """Length-2 bias."""
        return self.linear.bias.detach()

    def logits(self, pooled: torch.Tensor) -> torch.Tensor:
        """Class scores of pooled embeddings.

        Args:
            pooled: M x D pooled embeddings.

        Returns:
            M x 2 logits.
        """
        return self.linear((pooled - self.center) / self.scale)

    @torch.no_grad()
    def predict_proba(self, pooled: torch.Tensor) -> np.ndarray:
        """Class-1 probabilities.

        Args:
            pooled: M x D pooled embeddings.

        Returns:
            Length-M array of probabilities.
        """
        return torch.softmax(self.logits(pooled), dim=1)[:, 1].numpy()


def init_head(d: int, seed: int) -> ClassifierHead:
    """Glorot-uniform weight, zero bias.

    Args:
        d: Width of the pooled embedding.
        seed: Initialization seed.

    Returns:
        Fresh ClassifierHead.
    """
    head = ClassifierHead(d)
    glorot_uniform_(head.linear.weight, d, N_CLASSES, torch.Generator().manual_seed(seed))
    with torch.no_grad():
        head.linear.bias.zero_()
    return head


def pool(reps: Sequence[Representation] | torch.Tensor) -> torch.Tensor:
    """Mean-pool each representation over its nodes.

    Args:
        reps: Representations, or an already pooled M x D tensor.

    Returns:
        M x D detached tensor.
    """
    if isinstance(reps, torch.Tensor):
        return reps.detach().to(DTYPE)
    return torch.stack([rep.pooled().detach() for rep in reps])


def finetune(
    reps: Sequence[Representation] | torch.Tensor,
    labels: Sequence[int] | np.ndarray,
    epochs: int,
    seed: int,
    settings: FinetuneSettings | None = None,
) -> ClassifierHead:
    """Train a classifier head on the labeled subset of frozen representations.

    Features are standardized with statistics of the labeled subset; the
    head is trained full batch with AdamW on softmax cross-entropy.

    Args:
        reps: Fused representations of the labeled subjects (or pooled vectors).
        labels: Labels aligned with ``reps``.
        epochs: Number of full-batch updates.
        seed: Seed of the head initialization.
        settings: Fine-tuning optimizer settings.

    Returns:
        Trained ClassifierHead.

    Raises:
        DataError: If the labels hold fewer than two classes or lengths differ.
        NumericError: If training diverges.
    """
    settings = settings or FinetuneSettings()
    features = pool(reps)
    targets = torch.as_tensor(np.asarray(labels, dtype=np.int64))
    if features.shape[0] != targets.shape[0]:
        raise DataError(f"{features.shape[0]} representations but {targets.shape[0]} labels")
    if torch.unique(targets).numel() < N_CLASSES:
        raise DataError("labeled subset contains a single class")

    head = init_head(features.shape[1], derive_seed(seed, "head"))
    with torch.no_grad():
        head.center.copy_(features.mean(dim=0))
        std = features.std(dim=0, unbiased=False)
        head.scale.copy_(torch.where(std > SCALE_FLOOR, std, torch.ones_like(std)))

    optimizer = torch.optim.AdamW(head.linear.parameters(), lr=settings.learning_rate, weight_decay=settings.weight_decay, foreach=False)
    for _ in range(epochs):
        optimizer.zero_grad(set_to_none=True)
        loss = F.cross_entropy(head.logits(features), targets)
        if not torch.isfinite(loss):
            raise NumericError("fine-tuning loss is not finite")
        loss.backward()
        optimizer.step()

    if epochs:
        logger.debug("Fine-tuned head on %d subjects, final loss %.4g", features.shape[0], float(loss.detach()))
    return head

