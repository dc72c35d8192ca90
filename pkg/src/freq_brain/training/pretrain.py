"""Label-free pretraining of both encoders under the domain-consistency objective."""

import logging
import math
import time
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import torch

from freq_brain.config.settings import LossSettings, RunConfig
from freq_brain.encoders.base import Representation
from freq_brain.encoders.fgnn import FGNN
from freq_brain.encoders.params import init_params
from freq_brain.encoders.tgnn import TGNN
from freq_brain.enums import DomainEnum
from freq_brain.exceptions import DataError, NumericError
from freq_brain.models import Dataset, TrainTrace
from freq_brain.seeding import derive_seed
from freq_brain.training.loss import LossTerms, consistency_loss, single_domain_loss
from freq_brain.training.optim import backward, build_optimizer, optimizer_step
from freq_brain.training.subjects import SubjectView, prepare_subjects

logger = logging.getLogger(__name__)

BOTH_DOMAINS = frozenset({DomainEnum.TIME, DomainEnum.FREQUENCY})


@dataclass(frozen=True, eq=False)
class ForwardCache:
    """Embeddings of one subject plus the loss graph needed by backward."""

    zt: Representation | None
    zf: Representation | None
    terms: LossTerms


def forward(
    view: SubjectView,
    tgnn: TGNN,
    fgnn: FGNN,
    cfg: LossSettings,
    domains: frozenset[DomainEnum] = BOTH_DOMAINS,
) -> ForwardCache:
    """Encode one subject and evaluate the objective.

    Args:
        view: Prepared subject.
        tgnn: Time-domain encoder.
        fgnn: Frequency-domain encoder.
        cfg: Loss settings.
        domains: Encoders taking part; a single domain trains on its decorrelation term alone.

    Returns:
        ForwardCache holding the autograd graph.
    """
    zt = view.encode_time(tgnn) if DomainEnum.TIME in domains else None
    zf = view.encode_frequency(fgnn) if DomainEnum.FREQUENCY in domains else None
    if zt is not None and zf is not None:
        terms = consistency_loss(zt, zf, cfg)
    elif zt is not None:
        terms = single_domain_loss(zt, cfg.gamma, time_domain=True, standardized=cfg.standardize)
    elif zf is not None:
        terms = single_domain_loss(zf, cfg.beta, time_domain=False, standardized=cfg.standardize)
    else:
        raise ValueError("at least one domain must be active")
    return ForwardCache(zt=zt, zf=zf, terms=terms)


def trainable_parameters(tgnn: TGNN, fgnn: FGNN, domains: frozenset[DomainEnum] = BOTH_DOMAINS) -> list[torch.nn.Parameter]:
    """Parameters updated for a domain selection.

    Args:
        tgnn: Time-domain encoder.
        fgnn: Frequency-domain encoder.
        domains: Active domains.

    Returns:
        TGNN parameters (if time is active) followed by FGNN parameters (if frequency is active).
    """
    params: list[torch.nn.Parameter] = []
    if DomainEnum.TIME in domains:
        params.extend(tgnn.parameters())
    if DomainEnum.FREQUENCY in domains:
        params.extend(fgnn.parameters())
    return params


def pretrain(
    ds: Dataset | Sequence[SubjectView],
    epochs: int,
    cfg: LossSettings,
    seed: int,
    config: RunConfig | None = None,
    domains: frozenset[DomainEnum] = BOTH_DOMAINS,
) -> tuple[TGNN, FGNN, TrainTrace]:
    """Optimize both encoders on every subject without reading labels.

    Each epoch visits the subjects in a seed-shuffled order and takes one
    AdamW step per subject; the trace records per-epoch sums of the loss terms.

    Args:
        ds: Dataset, or subject views already prepared from one.
        epochs: Number of full passes.
        cfg: Loss settings.
        seed: Top-level seed (initialization and visiting order are derived from it).
        config: Run configuration for graph, spectral, model and optimizer settings.
        domains: Encoders to train; inactive encoders stay at initialization.

    Returns:
        Tuple of (TGNN, FGNN, TrainTrace).

    Raises:
        DataError: If there are no subjects.
        NumericError: If an epoch produces a non-finite loss.
    """
    config = config or RunConfig()
    if isinstance(ds, Dataset):
        views = prepare_subjects(ds, config.graph, config.spectral, config.runtime.workers)
    else:
        views = list(ds)
    if not views:
        raise DataError("cannot pretrain on an empty dataset")

    d = views[0].n_timepoints
    k = config.spectral.k_features or d
    tgnn, fgnn = init_params(
        views[0].n_rois,
        d,
        k,
        derive_seed(seed, "init"),
        gcn_layers=config.model.gcn_layers,
        fgo_layers=config.model.fgo_layers,
        gcn_hidden=config.model.gcn_hidden,
        mlp_hidden=config.model.mlp_hidden,
        retained=config.spectral.retained,
    )
    params = trainable_parameters(tgnn, fgnn, domains)
    optimizer = build_optimizer(params, config.optimizer)
    order_rng = np.random.default_rng(derive_seed(seed, "shuffle"))
    trace = TrainTrace(seed=seed, n_subjects=len(views), config=config.model_dump(mode="json"))

    for epoch in range(epochs):
        started = time.perf_counter()
        sums = np.zeros(4)
        for index in order_rng.permutation(len(views)):
            cache = forward(views[index], tgnn, fgnn, cfg, domains)
            optimizer_step(optimizer, params, backward(params, cache.terms))
            sums += cache.terms.as_floats()
        if not all(math.isfinite(value) for value in sums):
            raise NumericError(f"non-finite loss in epoch {epoch + 1}")

        trace.total.append(float(sums[0]))
        trace.alignment.append(float(sums[1]))
        trace.time_decorrelation.append(float(sums[2]))
        trace.freq_decorrelation.append(float(sums[3]))
        trace.seconds.append(time.perf_counter() - started)
        logger.debug("epoch %d/%d mean loss %.6g", epoch + 1, epochs, sums[0] / len(views))

    if epochs:
        logger.info("Pretrained %d epochs on %d subjects: mean loss %.6g -> %.6g", epochs, len(views), trace.mean_loss(0), trace.mean_loss(-1))
    return tgnn, fgnn, trace


@torch.no_grad()
def embed(
    views: Sequence[SubjectView],
    tgnn: TGNN,
    fgnn: FGNN,
) -> list[tuple[Representation, Representation]]:
    """Frozen forward pass of every subject.

    Args:
        views: Prepared subjects.
        tgnn: Time-domain encoder.
        fgnn: Frequency-domain encoder.

    Returns:
        (Z_T, Z_F) per subject, detached from any graph.
    """
    return [(view.encode_time(tgnn), view.encode_frequency(fgnn)) for view in views]
