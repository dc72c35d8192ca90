"""Label-fraction sweep and decorrelation-coefficient sensitivity grid."""

import logging
from collections.abc import Sequence

from freq_brain.config.settings import RunConfig
from freq_brain.models import Dataset, MetricReport
from freq_brain.workflow.orchestrator import ProtocolResult, get_orchestrator

logger = logging.getLogger(__name__)


def label_fraction_sweep_result(
    ds: Dataset,
    fractions: Sequence[float],
    seeds: list[int] | None = None,
    config: RunConfig | None = None,
) -> ProtocolResult:
    """Fine-tune and evaluate at several label fractions on shared encoders.

    Pretraining runs once per seed; every fraction reuses the same frozen
    encoders and the same folds.

    Args:
        ds: Dataset.
        fractions: Label fractions in (0, 1].
        seeds: Protocol seeds.
        config: Run configuration.

    Returns:
        ProtocolResult with one report per fraction.

    Raises:
        ValueError: If a fraction is outside (0, 1] or none is given.
    """
    if not fractions:
        raise ValueError("at least one label fraction is required")
    for fraction in fractions:
        if not 0.0 < fraction <= 1.0:
            raise ValueError(f"label fractions must be in (0, 1], got {fraction}")
    return get_orchestrator().invoke(ds, config or RunConfig(), seeds=seeds, fractions=[float(f) for f in fractions])


def label_fraction_sweep(
    ds: Dataset,
    fractions: Sequence[float],
    seeds: list[int] | None = None,
    config: RunConfig | None = None,
) -> dict[float, MetricReport]:
    """Metrics per label fraction.

    Args:
        ds: Dataset.
        fractions: Label fractions in (0, 1].
        seeds: Protocol seeds.
        config: Run configuration.

    Returns:
        Mapping fraction -> MetricReport.
    """
    return label_fraction_sweep_result(ds, fractions, seeds, config).reports


def sensitivity_grid(
    ds: Dataset,
    gammas: Sequence[float],
    betas: Sequence[float],
    seeds: list[int] | None = None,
    config: RunConfig | None = None,
) -> dict[tuple[float, float], MetricReport]:
    """Metrics over a grid of decorrelation coefficients.

    Args:
        ds: Dataset.
        gammas: Time-domain decorrelation weights.
        betas: Frequency-domain decorrelation weights.
        seeds: Protocol seeds.
        config: Base configuration.

    Returns:
        Mapping (gamma, beta) -> MetricReport.
    """
    config = config or RunConfig()
    grid: dict[tuple[float, float], MetricReport] = {}
    for gamma in gammas:
        for beta in betas:
            cell = config.with_overrides([f"loss.gamma={gamma!r}", f"loss.beta={beta!r}"])
            logger.info("Sensitivity cell gamma=%g beta=%g", gamma, beta)
            grid[(float(gamma), float(beta))] = get_orchestrator().invoke(ds, cell, seeds=seeds).report
    return grid
