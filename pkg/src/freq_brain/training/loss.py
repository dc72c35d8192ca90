"""Domain-consistency objective and its ablation variants.

The default objective is

    L = ||Z_T - Z_F||_F^2 + gamma ||Z_T^T Z_T - I||_F^2 + beta ||Z_F^T Z_F - I||_F^2

on column-standardized representations (zero mean, unit variance, scaled by
1/sqrt(N)), so each Gram matrix is a correlation matrix.
"""

import math
from dataclasses import dataclass

import torch
import torch.nn.functional as F  # noqa: N812

from freq_brain.config.settings import LossSettings
from freq_brain.encoders.base import Representation
from freq_brain.enums import ObjectiveEnum
from freq_brain.exceptions import NumericError, ShapeError

VARIANCE_FLOOR = 1e-12


@dataclass(frozen=True)
class LossTerms:
    """Total loss and its three weighted terms."""

    total: torch.Tensor
    alignment: torch.Tensor
    time_decorrelation: torch.Tensor
    freq_decorrelation: torch.Tensor

    def as_floats(self) -> tuple[float, float, float, float]:
        """Detached values.

        Returns:
            (total, alignment, time_decorrelation, freq_decorrelation).
        """
        return (
            float(self.total.detach()),
            float(self.alignment.detach()),
            float(self.time_decorrelation.detach()),
            float(self.freq_decorrelation.detach()),
        )


def standardize(z: torch.Tensor) -> torch.Tensor:
    """Zero-mean, unit-variance columns scaled by 1/sqrt(N).

    Args:
        z: N x D embeddings.

    Returns:
        Standardized embeddings whose Gram matrix is the column correlation matrix.
    """
    centered = z - z.mean(dim=0, keepdim=True)
    variance = centered.pow(2).mean(dim=0, keepdim=True)
    return centered / torch.sqrt(variance + VARIANCE_FLOOR) / math.sqrt(z.shape[0])


def decorrelation(z: torch.Tensor) -> torch.Tensor:
    """Squared Frobenius distance of the Gram matrix from identity.

    Args:
        z: N x D embeddings.

    Returns:
        ||Z^T Z - I||_F^2.
    """
    gram = z.T @ z
    return (gram - torch.eye(gram.shape[0], dtype=gram.dtype)).pow(2).sum()


def _tensor(z: Representation | torch.Tensor) -> torch.Tensor:
    tensor = z.z if isinstance(z, Representation) else z
    if not bool(torch.isfinite(tensor).all()):
        raise NumericError("loss input has non-finite entries")
    return tensor


def coefficients(cfg: LossSettings) -> tuple[float, float]:
    """Decorrelation weights for the configured objective.

    Args:
        cfg: Loss settings.

    Returns:
        (gamma, beta); equal-coefficient objectives use their mean, pure cosine uses zeros.
    """
    if cfg.objective == ObjectiveEnum.CCA_EQUAL:
        shared = (cfg.gamma + cfg.beta) / 2.0
        return shared, shared
    if cfg.objective == ObjectiveEnum.COSINE:
        return 0.0, 0.0
    return cfg.gamma, cfg.beta


def consistency_loss(
    zt: Representation | torch.Tensor,
    zf: Representation | torch.Tensor,
    cfg: LossSettings,
    standardized: bool | None = None,
) -> LossTerms:
    """Evaluate the configured objective on one subject's pair of embeddings.

    Args:
        zt: Time-domain embeddings (N x D).
        zf: Frequency-domain embeddings (N x D).
        cfg: Loss settings (coefficients and objective).
        standardized: Override cfg.standardize; False feeds raw embeddings.

    Returns:
        LossTerms with the total and the alignment/time/frequency terms.

    Raises:
        ShapeError: On mismatched shapes.
    """
    a, b = _tensor(zt), _tensor(zf)
    if a.shape != b.shape:
        raise ShapeError(f"representation shapes differ: {tuple(a.shape)} vs {tuple(b.shape)}")
    if cfg.standardize if standardized is None else standardized:
        a, b = standardize(a), standardize(b)

    gamma, beta = coefficients(cfg)
    if cfg.objective in (ObjectiveEnum.COSINE, ObjectiveEnum.COSINE_DECORR):
        alignment = (1.0 - F.cosine_similarity(a, b, dim=1)).sum()
    else:
        alignment = (a - b).pow(2).sum()
    time_term = gamma * decorrelation(a)
    freq_term = beta * decorrelation(b)
    return LossTerms(total=alignment + time_term + freq_term, alignment=alignment, time_decorrelation=time_term, freq_decorrelation=freq_term)


def single_domain_loss(z: Representation | torch.Tensor, weight: float, time_domain: bool, standardized: bool = True) -> LossTerms:
    """Decorrelation-only objective for a variant that trains one encoder.

    Args:
        z: Embeddings of the active domain.
        weight: Decorrelation coefficient of that domain.
        time_domain: Whether the active domain is time (selects the reported term).
        standardized: Column-standardize first.

    Returns:
        LossTerms with zero alignment and a zero term for the inactive domain.
    """
    tensor = _tensor(z)
    if standardized:
        tensor = standardize(tensor)
    term = weight * decorrelation(tensor)
    zero = torch.zeros((), dtype=tensor.dtype)
    if time_domain:
        return LossTerms(total=term, alignment=zero, time_decorrelation=term, freq_decorrelation=zero)
    return LossTerms(total=term, alignment=zero, time_decorrelation=zero, freq_decorrelation=term)
