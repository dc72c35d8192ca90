"""Per-seed pretraining and per-fold fine-tune/evaluate steps of the protocol."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import torch

from freq_brain.config.settings import RunConfig
from freq_brain.encoders.base import fuse
from freq_brain.encoders.fgnn import FGNN
from freq_brain.encoders.tgnn import TGNN
from freq_brain.enums import DomainEnum
from freq_brain.evaluation.labels import LabelVault
from freq_brain.evaluation.metrics import compute_metrics
from freq_brain.models import FoldMetrics, SplitPlan, TrainTrace
from freq_brain.seeding import derive_seed
from freq_brain.training.finetune import finetune
from freq_brain.training.pretrain import BOTH_DOMAINS, embed, pretrain
from freq_brain.training.subjects import SubjectView

logger = logging.getLogger(__name__)

# Key of the encoders pretrained on every subject.
ALL_SUBJECTS = -1


@dataclass(eq=False)
class SeedRun:
    """Encoders, traces and pooled embeddings of one protocol seed.

    Encoders are keyed by fold in strict mode, by ALL_SUBJECTS otherwise.
    """

    seed: int
    encoders: dict[int, tuple[TGNN, FGNN]] = field(default_factory=dict)
    traces: dict[int, TrainTrace] = field(default_factory=dict)
    pooled: dict[int, dict[DomainEnum, torch.Tensor]] = field(default_factory=dict)

    def key(self, fold: int) -> int:
        """Encoder key serving a fold.

        Args:
            fold: Fold index.

        Returns:
            The fold itself in strict mode, else ALL_SUBJECTS.
        """
        return fold if fold in self.encoders else ALL_SUBJECTS


def pooled_embeddings(views: Sequence[SubjectView], tgnn: TGNN, fgnn: FGNN) -> dict[DomainEnum, torch.Tensor]:
    """Mean-pooled Z_T, Z_F and Z_TF of every subject.

    Args:
        views: Prepared subjects.
        tgnn: Frozen time-domain encoder.
        fgnn: Frozen frequency-domain encoder.

    Returns:
        Mapping domain -> M x D tensor in view order.
    """
    pairs = embed(views, tgnn, fgnn)
    return {
        DomainEnum.TIME: torch.stack([zt.pooled() for zt, _ in pairs]),
        DomainEnum.FREQUENCY: torch.stack([zf.pooled() for _, zf in pairs]),
        DomainEnum.FUSED: torch.stack([fuse(zt, zf).pooled() for zt, zf in pairs]),
    }


def pretrain_seed(
    views: Sequence[SubjectView],
    seed: int,
    config: RunConfig,
    plan: SplitPlan | None = None,
    domains: frozenset[DomainEnum] = BOTH_DOMAINS,
) -> SeedRun:
    """Pretrain the encoders of one seed without labels.

    Args:
        views: Every prepared subject.
        seed: Protocol seed.
        config: Run configuration.
        plan: Fold plan; required in strict mode to hold out each test fold.
        domains: Encoders to train.

    Returns:
        SeedRun with encoders and pooled embeddings of every subject.

    Raises:
        ValueError: If strict mode is requested without a plan.
    """
    run = SeedRun(seed=seed)
    if config.protocol.strict:
        if plan is None:
            raise ValueError("strict mode needs the fold plan before pretraining")
        groups = {fold: set(plan.train_ids(fold)) for fold in range(plan.fold_count)}
    else:
        groups = {ALL_SUBJECTS: {view.id for view in views}}

    for key, member_ids in groups.items():
        subset = [view for view in views if view.id in member_ids]
        tgnn, fgnn, trace = pretrain(subset, config.protocol.pretrain_epochs, config.loss, seed, config=config, domains=domains)
        run.encoders[key] = (tgnn, fgnn)
        run.traces[key] = trace
        run.pooled[key] = pooled_embeddings(views, tgnn, fgnn)
    return run


def evaluate_plan(
    views: Sequence[SubjectView],
    run: SeedRun,
    plan: SplitPlan,
    vault: LabelVault,
    config: RunConfig,
    readout: DomainEnum = DomainEnum.FUSED,
) -> list[FoldMetrics]:
    """Fine-tune a head per fold on the labeled subset and score the held-out fold.

    Args:
        views: Every prepared subject, in the order used for pooling.
        run: Pretrained encoders of the seed.
        plan: Split plan of the seed and label fraction.
        vault: Label store; every read is logged.
        config: Run configuration.
        readout: Representation fed to the classifier.

    Returns:
        One FoldMetrics per fold.
    """
    position = {view.id: index for index, view in enumerate(views)}
    results: list[FoldMetrics] = []
    for fold in range(plan.fold_count):
        features = run.pooled[run.key(fold)][readout]
        labeled = list(plan.labeled[fold])
        labels = vault.read(labeled, "finetune", run.seed, fold, plan.label_fraction)
        head = finetune(
            features[[position[rid] for rid in labeled]],
            labels,
            config.finetune.epochs,
            derive_seed(run.seed, f"finetune-{fold}"),
            config.finetune,
        )
        test = plan.test_ids(fold)
        scores = head.predict_proba(features[[position[rid] for rid in test]])
        truth = vault.read(test, "test", run.seed, fold, plan.label_fraction)
        results.append(compute_metrics(scores, truth, seed=run.seed, fold=fold, label_fraction=plan.label_fraction))
    logger.info(
        "seed %d, label fraction %.2f: mean accuracy %.3f over %d folds",
        run.seed,
        plan.label_fraction,
        sum(m.accuracy for m in results) / len(results),
        len(results),
    )
    return results
