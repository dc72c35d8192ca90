"""Time-domain encoder: a graph convolutional network over the correlation graph."""

import numpy as np
import torch
from torch import nn

from freq_brain.brain_graph import BrainGraph
from freq_brain.encoders.base import DTYPE, Representation, as_tensor
from freq_brain.enums import DomainEnum
from freq_brain.exceptions import ShapeError


def normalized_adjacency(adjacency: np.ndarray) -> np.ndarray:
    """Symmetrically normalized adjacency with self-loops, D~^-1/2 (A + I) D~^-1/2.

    Args:
        adjacency: Loop-free symmetric adjacency.

    Returns:
        N x N propagation matrix.
    """
    looped = np.asarray(adjacency, dtype=np.float64) + np.eye(adjacency.shape[0])
    inv_sqrt = 1.0 / np.sqrt(looped.sum(axis=1))
    return inv_sqrt[:, None] * looped * inv_sqrt[None, :]


class TGNN(nn.Module):
    """Stack of GCN layers; ReLU on hidden layers, linear output."""

    def __init__(self, dims: list[int]) -> None:
        """Create the weight stack.

        Args:
            dims: Feature widths [D_in, hidden..., D_out]; one layer per consecutive pair.

        Raises:
            ValueError: If fewer than two widths are given.
        """
        super().__init__()
        if len(dims) < 2:
            raise ValueError("TGNN needs at least one layer")
        self.dims = list(dims)
        self.weights = nn.ParameterList(nn.Parameter(torch.zeros(d_in, d_out, dtype=DTYPE)) for d_in, d_out in zip(dims[:-1], dims[1:]))

    @property
    def layer_count(self) -> int:
        """Number of GCN layers."""
        return len(self.weights)

    def forward(self, propagation: torch.Tensor, features: torch.Tensor) -> torch.Tensor:
        """Propagate features through every layer.

        Args:
            propagation: Normalized adjacency (N x N).
            features: Node features (N x D_in).

        Returns:
            Last-layer node embeddings (N x D_out).

        Raises:
            ShapeError: If the feature width does not match the first layer.
        """
        if features.shape[1] != self.dims[0]:
            raise ShapeError(f"TGNN expects {self.dims[0]} input features, got {features.shape[1]}")
        hidden = features
        for index, weight in enumerate(self.weights):
            hidden = propagation @ (hidden @ weight)
            if index < self.layer_count - 1:
                hidden = torch.relu(hidden)
        return hidden


def tgnn_forward(g: BrainGraph, params: TGNN) -> Representation:
    """Time-domain embedding Z_T of one graph.

    Args:
        g: Brain graph carrying its time-domain node features.
        params: GCN weights.

    Returns:
        Representation tagged time.
    """
    propagation = as_tensor(normalized_adjacency(g.adjacency))
    return Representation(z=params(propagation, as_tensor(g.features_time)), domain=DomainEnum.TIME)
