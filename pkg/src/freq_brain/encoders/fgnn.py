"""Frequency-domain encoder: filter bank, Fourier graph operator stack, inverse transform, MLP.

The operator stack evaluates

    Z~_F = sum_{p=0..P} ReLU(X~_F S^{0:p} + b^p),   S^{0:p} = S^0 S^1 ... S^p,

with S^0 = I, so the p = 0 term is a biased residual of the input.
"""

from collections.abc import Iterable

import torch
from torch import nn

from freq_brain.brain_graph import SpectralBasis
from freq_brain.encoders.base import DTYPE, Representation, as_tensor
from freq_brain.enums import BandEnum, DomainEnum
from freq_brain.exceptions import ShapeError
from freq_brain.spectral import DEFAULT_RETAINED, FilterBank, FilteredSpectrum, SpectralFeatures, select_components

S0_CONVENTION = "s0-identity"


class FGNN(nn.Module):
    """Fourier graph operators plus the row-wise projection MLP."""

    def __init__(
        self,
        k: int,
        d: int,
        layers: int = 3,
        hidden: int | None = None,
        retained: Iterable[BandEnum | str] = DEFAULT_RETAINED,
    ) -> None:
        """Create zero-initialized parameters.

        Args:
            k: Feature-column budget K of the filtered spectrum.
            d: Output width D.
            layers: Number of FGO operators P.
            hidden: MLP hidden width; defaults to max(K, D).
            retained: Bands kept by component selection.
        """
        super().__init__()
        self.k = k
        self.d = d
        self.retained = frozenset(BandEnum(band) for band in retained)
        width = hidden or max(k, d)
        self.operators = nn.ParameterList(nn.Parameter(torch.zeros(k, k, dtype=DTYPE)) for _ in range(layers))
        self.biases = nn.ParameterList(nn.Parameter(torch.zeros(k, dtype=DTYPE)) for _ in range(layers + 1))
        self.mlp = nn.Sequential(
            nn.Linear(k, width, dtype=DTYPE),
            nn.ReLU(),
            nn.Linear(width, d, dtype=DTYPE),
        )

    @property
    def layer_count(self) -> int:
        """Number of FGO operators P."""
        return len(self.operators)

    def operator_stack(self, xf: torch.Tensor) -> torch.Tensor:
        """Sum of biased, rectified cumulative operator products.

        Args:
            xf: Filtered spectrum (N x K).

        Returns:
            N x K tensor.

        Raises:
            ShapeError: If the column count differs from K.
        """
        if xf.shape[1] != self.k:
            raise ShapeError(f"FGO stack expects {self.k} columns, got {xf.shape[1]}")
        product = xf
        total = torch.relu(product + self.biases[0])
        for operator, bias in zip(self.operators, list(self.biases)[1:]):
            product = product @ operator
            total = total + torch.relu(product + bias)
        return total

    def forward(self, xf: torch.Tensor, eigenvectors: torch.Tensor) -> torch.Tensor:
        """Operator stack, inverse transform and projection.

        Args:
            xf: Filtered spectrum (N x K).
            eigenvectors: Basis U (N x N).

        Returns:
            Frequency-domain node embeddings (N x D).
        """
        return self.mlp(eigenvectors @ self.operator_stack(xf))


def fgo_forward(xf: FilteredSpectrum | torch.Tensor, params: FGNN) -> torch.Tensor:
    """Evaluate the Fourier graph operator stack.

    Args:
        xf: Filtered spectrum (N x K).
        params: FGNN parameters.

    Returns:
        Z~_F of shape N x K.
    """
    matrix = xf.matrix if isinstance(xf, FilteredSpectrum) else xf
    return params.operator_stack(as_tensor(matrix))


def fgnn_forward(spec: SpectralFeatures, bank: FilterBank, basis: SpectralBasis, params: FGNN) -> Representation:
    """Frequency-domain embedding Z_F of one subject.

    Args:
        spec: Spectral coefficients of the subject's node features.
        bank: Filter bank of the subject's basis.
        basis: Spectral basis.
        params: FGNN parameters.

    Returns:
        Representation tagged frequency, of shape N x D.

    Raises:
        ShapeError: If the spectrum does not belong to the basis.
    """
    if spec.basis_key != basis.key:
        raise ShapeError("spectral features were computed with a different basis")
    filtered = select_components(spec, bank, params.retained, params.k)
    z = params(as_tensor(filtered.matrix), as_tensor(basis.eigenvectors))
    return Representation(z=z, domain=DomainEnum.FREQUENCY)
