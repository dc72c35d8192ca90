"""Pretraining, fine-tuning and the domain-consistency objective."""

from freq_brain.training.finetune import ClassifierHead, finetune, init_head, pool
from freq_brain.training.loss import LossTerms, consistency_loss, single_domain_loss
from freq_brain.training.optim import backward, build_optimizer, optimizer_step
from freq_brain.training.pretrain import BOTH_DOMAINS, embed, forward, pretrain
from freq_brain.training.subjects import SubjectView, prepare_subjects, shared_graph

__all__ = [
    "ClassifierHead",
    "finetune",
    "init_head",
    "pool",
    "LossTerms",
    "consistency_loss",
    "single_domain_loss",
    "backward",
    "build_optimizer",
    "optimizer_step",
    "BOTH_DOMAINS",
    "embed",
    "forward",
    "pretrain",
    "SubjectView",
    "prepare_subjects",
    "shared_graph",
]
