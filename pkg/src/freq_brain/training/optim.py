"""Gradients and AdamW updates with decoupled weight decay."""

from collections.abc import Sequence

import torch

from freq_brain.config.settings import OptimizerSettings
from freq_brain.exceptions import ShapeError
from freq_brain.training.loss import LossTerms


def backward(params: Sequence[torch.nn.Parameter], terms: LossTerms | None) -> list[torch.Tensor]:
    """Exact gradients of a cached forward pass with respect to every parameter.

    The autograd graph recorded during the forward pass is the cache; it is
    released after this call.

    Args:
        params: Parameters to differentiate against.
        terms: Loss terms of a forward pass with its graph attached.

    Returns:
        One gradient per parameter; parameters the loss does not reach get zeros.

    Raises:
        ValueError: If no forward pass was cached.
    """
    if terms is None or not terms.total.requires_grad:
        raise ValueError("backward needs a cached forward pass with an attached graph")
    grads = torch.autograd.grad(terms.total, list(params), allow_unused=True)
    return [torch.zeros_like(p) if g is None else g for p, g in zip(params, grads, strict=True)]


def build_optimizer(params: Sequence[torch.nn.Parameter], cfg: OptimizerSettings | None = None) -> torch.optim.AdamW:
    """AdamW over a parameter list.

    Args:
        params: Parameters to optimize.
        cfg: Optimizer settings.

    Returns:
        Optimizer whose state holds the bias-corrected moment accumulators.
    """
    cfg = cfg or OptimizerSettings()
    return torch.optim.AdamW(
        list(params),
        lr=cfg.learning_rate,
        betas=(cfg.beta1, cfg.beta2),
        eps=cfg.eps,
        weight_decay=cfg.weight_decay,
        foreach=False,
    )


def optimizer_step(optimizer: torch.optim.Optimizer, params: Sequence[torch.nn.Parameter], grads: Sequence[torch.Tensor]) -> None:
    """Apply one update p <- p - lr * m_hat / (sqrt(v_hat) + eps) - lr * wd * p.

    Args:
        optimizer: Optimizer built over ``params``.
        params: Parameters to update in place.
        grads: Gradients aligned with ``params``.

    Raises:
        ShapeError: If a gradient shape differs from its parameter.
    """
    if len(params) != len(grads):
        raise ShapeError(f"{len(params)} parameters but {len(grads)} gradients")
    for param, grad in zip(params, grads, strict=True):
        if param.shape != grad.shape:
            raise ShapeError(f"gradient shape {tuple(grad.shape)} does not match parameter {tuple(param.shape)}")
        param.grad = grad.detach().clone()
    optimizer.step()
    optimizer.zero_grad(set_to_none=True)
