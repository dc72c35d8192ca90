"""Empirical scaling of the frequency-domain encoder with graph size."""

import logging
import time
from collections.abc import Sequence

import numpy as np
import torch

from freq_brain.encoders.base import as_tensor
from freq_brain.encoders.params import init_params
from freq_brain.models import ScalingReport
from freq_brain.seeding import derive_seed

logger = logging.getLogger(__name__)


def fit_slope(n_values: Sequence[int], seconds: Sequence[float]) -> float | None:
    """Least-squares slope of log(time) against log(N).

    Args:
        n_values: Graph sizes.
        seconds: Mean times per size.

    Returns:
        Slope, or None with fewer than two sizes.
    """
    if len(n_values) < 2:
        return None
    slope, _ = np.polyfit(np.log(np.asarray(n_values, dtype=np.float64)), np.log(np.asarray(seconds, dtype=np.float64)), 1)
    return float(slope)


@torch.no_grad()
def scaling_probe(n_values: Sequence[int], k: int = 8, trials: int = 5, seed: int = 0, layers: int = 3) -> ScalingReport:
    """Time the FGNN forward on random inputs of growing size.

    The eigendecomposition is excluded: each size gets a random orthonormal
    basis and a random N x K filtered spectrum up front.

    Args:
        n_values: Ascending graph sizes.
        k: Feature-column budget K, also the output width.
        trials: Timed repetitions per size, after one warm-up call.
        seed: Seed of inputs and parameters.
        layers: Number of FGO operators.

    Returns:
        ScalingReport with mean seconds per size and the fitted slope.

    Raises:
        ValueError: If sizes are not strictly ascending or trials < 1.
    """
    sizes = [int(n) for n in n_values]
    if not sizes or any(b <= a for a, b in zip(sizes, sizes[1:], strict=False)):
        raise ValueError(f"n_values must be non-empty and strictly ascending, got {sizes}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")

    rng = np.random.default_rng(derive_seed(seed, "probe"))
    _, fgnn = init_params(sizes[0], k, k, derive_seed(seed, "probe-init"), fgo_layers=layers)
    means: list[float] = []
    for n in sizes:
        basis, _ = np.linalg.qr(rng.standard_normal((n, n)))
        u = as_tensor(basis)
        xf = as_tensor(rng.standard_normal((n, k)))
        fgnn(xf, u)
        timings = []
        for _ in range(trials):
            started = time.perf_counter()
            fgnn(xf, u)
            timings.append(time.perf_counter() - started)
        means.append(max(float(np.mean(timings)), np.finfo(np.float64).tiny))
        logger.debug("N=%d: %.3g s per forward", n, means[-1])
    return ScalingReport(n_values=sizes, k=k, mean_seconds=means, slope=fit_slope(sizes, means))
