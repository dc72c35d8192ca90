"""LangGraph state definitions."""

import operator
from typing import Annotated, TypedDict

from freq_brain.config.settings import RunConfig
from freq_brain.enums import DomainEnum
from freq_brain.evaluation.labels import LabelVault
from freq_brain.evaluation.runner import SeedRun
from freq_brain.models import Dataset, FoldMetrics, SplitPlan
from freq_brain.training.subjects import SubjectView


class ProtocolState(TypedDict):
    """Shared state across the protocol stages."""

    # Input
    dataset: Dataset
    config: RunConfig
    seeds: list[int]
    fractions: list[float]
    domains: frozenset[DomainEnum]
    readout: DomainEnum

    # Prepare stage
    views: list[SubjectView]
    vault: LabelVault

    # Pretrain stage
    plans: dict[tuple[int, float], SplitPlan]
    runs: list[SeedRun]

    # Evaluate stage
    folds: Annotated[list[FoldMetrics], operator.add]
