"""Shared encoder pieces: tensors, representations, initialization and fusion."""

import math
from dataclasses import dataclass

import numpy as np
import torch

from freq_brain.enums import DomainEnum
from freq_brain.exceptions import NumericError, ShapeError

DTYPE = torch.float64


def as_tensor(array: np.ndarray | torch.Tensor) -> torch.Tensor:
    """Convert to a float64 CPU tensor without copying when possible.

    Args:
        array: Numpy array or tensor.

    Returns:
        float64 tensor.
    """
    if isinstance(array, torch.Tensor):
        return array.to(DTYPE)
    return torch.as_tensor(np.ascontiguousarray(array), dtype=DTYPE)


def glorot_bound(fan_in: int, fan_out: int) -> float:
    """Half-width of the Glorot uniform interval.

    Args:
        fan_in: Input dimension.
        fan_out: Output dimension.

    Returns:
        sqrt(6 / (fan_in + fan_out)).
    """
    return math.sqrt(6.0 / (fan_in + fan_out))


def glorot_uniform_(tensor: torch.Tensor, fan_in: int, fan_out: int, generator: torch.Generator) -> torch.Tensor:
    """Fill a tensor in place from U(-b, b) with the Glorot bound.

    Args:
        tensor: Tensor to fill.
        fan_in: Input dimension.
        fan_out: Output dimension.
        generator: Seeded generator; draws are consumed in call order.

    Returns:
        The filled tensor.
    """
    bound = glorot_bound(fan_in, fan_out)
    with torch.no_grad():
        draws = torch.rand(tensor.shape, generator=generator, dtype=DTYPE)
        tensor.copy_((2.0 * draws - 1.0) * bound)
    return tensor


@dataclass(frozen=True, eq=False)
class Representation:
    """Node embeddings of one subject in one domain."""

    z: torch.Tensor
    domain: DomainEnum

    def __post_init__(self) -> None:
        if not bool(torch.isfinite(self.z).all()):
            raise NumericError(f"{self.domain} representation has non-finite entries")

    def pooled(self) -> torch.Tensor:
        """Mean over nodes.

        Returns:
            Vector of length D.
        """
        return self.z.mean(dim=0)


def fuse(zt: Representation, zf: Representation) -> Representation:
    """Average the time- and frequency-domain embeddings.

    Args:
        zt: Time-domain representation.
        zf: Frequency-domain representation.

    Returns:
        Fused representation (Z_T + Z_F) / 2.

    Raises:
        ShapeError: On a shape or domain mismatch.
    """
    if zt.domain != DomainEnum.TIME or zf.domain != DomainEnum.FREQUENCY:
        raise ShapeError(f"fuse expects (time, frequency) representations, got ({zt.domain}, {zf.domain})")
    if zt.z.shape != zf.z.shape:
        raise ShapeError(f"cannot fuse shapes {tuple(zt.z.shape)} and {tuple(zf.z.shape)}")
    return Representation(z=(zt.z + zf.z) / 2.0, domain=DomainEnum.FUSED)
