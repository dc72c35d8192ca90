"""LangGraph orchestrator for the pretrain / fine-tune / evaluate protocol."""

import logging
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

from langgraph.graph import END, START, StateGraph

from freq_brain.config.settings import RunConfig
from freq_brain.data.splits import make_splits
from freq_brain.enums import DomainEnum, StageEnum, StatusEnum
from freq_brain.evaluation.labels import LabelVault
from freq_brain.evaluation.runner import SeedRun, evaluate_plan, pretrain_seed
from freq_brain.models import Dataset, MetricReport, SplitPlan
from freq_brain.training.pretrain import BOTH_DOMAINS
from freq_brain.training.subjects import prepare_subjects
from freq_brain.workflow.state import ProtocolState

logger = logging.getLogger(__name__)

# Type alias for the status callback fired as each stage starts and finishes.
StatusCallback = Callable[[StageEnum, StatusEnum], None]


@dataclass
class ProtocolResult:
    """Result of one protocol run."""

    reports: dict[float, MetricReport]
    runs: list[SeedRun]
    plans: dict[tuple[int, float], SplitPlan]
    label_audit: bool
    config: RunConfig

    @property
    def report(self) -> MetricReport:
        """Report of the first (usually only) label fraction."""
        return next(iter(self.reports.values()))


class ProtocolOrchestrator:
    """Orchestrator for the cross-validated evaluation workflow.

    This class encapsulates the LangGraph workflow: subject preparation,
    label-free pretraining per seed, then fine-tuning and scoring per fold.
    """

    def __init__(self) -> None:
        """Initialize the orchestrator with a lazily compiled graph."""
        self._graph: Any | None = None
        self._on_status: StatusCallback | None = None

    def _notify(self, stage: StageEnum, status: StatusEnum) -> None:
        """Fire the status callback if one is registered.

        Args:
            stage: Stage identifier enum value.
            status: Status enum value.
        """
        if self._on_status is not None:
            try:
                self._on_status(stage, status)
            except Exception:
                logger.debug("status callback failed for %s/%s", stage, status, exc_info=True)

    def prepare_node(self, state: ProtocolState) -> dict:
        """Build graphs, bases and spectra of every subject; lock the labels away.

        Args:
            state: Current protocol state.

        Returns:
            Dictionary with the subject views and the label vault.
        """
        self._notify(StageEnum.PREPARE, StatusEnum.RUNNING)
        config = state["config"]
        views = prepare_subjects(state["dataset"], config.graph, config.spectral, config.runtime.workers)
        vault = LabelVault.from_dataset(state["dataset"])
        self._notify(StageEnum.PREPARE, StatusEnum.DONE)
        return {"views": views, "vault": vault}

    def pretrain_node(self, state: ProtocolState) -> dict:
        """Split each seed and pretrain its encoders without labels.

        Args:
            state: Current protocol state.

        Returns:
            Dictionary with split plans and seed runs.
        """
        self._notify(StageEnum.PRETRAIN, StatusEnum.RUNNING)
        config = state["config"]
        plans: dict[tuple[int, float], SplitPlan] = {}
        runs: list[SeedRun] = []
        for seed in state["seeds"]:
            for fraction in state["fractions"]:
                plans[(seed, fraction)] = make_splits(state["dataset"], config.protocol.folds, fraction, seed)
            fold_plan = plans[(seed, state["fractions"][0])]
            runs.append(pretrain_seed(state["views"], seed, config, plan=fold_plan, domains=state["domains"]))
        status = StatusEnum.SKIPPED if config.protocol.pretrain_epochs == 0 else StatusEnum.DONE
        self._notify(StageEnum.PRETRAIN, status)
        return {"plans": plans, "runs": runs}

    def evaluate_node(self, state: ProtocolState) -> dict:
        """Fine-tune and score every fold of every seed and fraction.

        Args:
            state: Current protocol state.

        Returns:
            Dictionary with fold-level metrics.
        """
        self._notify(StageEnum.EVALUATE, StatusEnum.RUNNING)
        folds = []
        for run in state["runs"]:
            for fraction in state["fractions"]:
                plan = state["plans"][(run.seed, fraction)]
                folds.extend(evaluate_plan(state["views"], run, plan, state["vault"], state["config"], state["readout"]))
        self._notify(StageEnum.EVALUATE, StatusEnum.DONE)
        return {"folds": folds}

    def build(self) -> Any:
        """Build and compile the LangGraph workflow.

        Returns:
            Compiled LangGraph workflow ready for invocation.
        """
        if self._graph is not None:
            return self._graph

        workflow = StateGraph(ProtocolState)

        workflow.add_node(StageEnum.PREPARE, self.prepare_node)
        workflow.add_node(StageEnum.PRETRAIN, self.pretrain_node)
        workflow.add_node(StageEnum.EVALUATE, self.evaluate_node)

        workflow.add_edge(START, StageEnum.PREPARE)
        workflow.add_edge(StageEnum.PREPARE, StageEnum.PRETRAIN)
        workflow.add_edge(StageEnum.PRETRAIN, StageEnum.EVALUATE)
        workflow.add_edge(StageEnum.EVALUATE, END)

        self._graph = workflow.compile()
        return self._graph

    def invoke(
        self,
        ds: Dataset,
        config: RunConfig,
        seeds: list[int] | None = None,
        fractions: list[float] | None = None,
        domains: frozenset[DomainEnum] = BOTH_DOMAINS,
        readout: DomainEnum = DomainEnum.FUSED,
        on_status: StatusCallback | None = None,
    ) -> ProtocolResult:
        """Run the protocol.

        Args:
            ds: Dataset.
            config: Run configuration.
            seeds: Protocol seeds; defaults to ``config.protocol.seeds``.
            fractions: Label fractions, repeats dropped; defaults to ``config.protocol.label_fraction``.
            domains: Encoders trained during pretraining.
            readout: Representation fed to the classifier.
            on_status: Optional callback fired as (stage, status) when
                each stage starts ('running') and finishes ('done' or 'skipped').

        Returns:
            ProtocolResult with one MetricReport per label fraction.
        """
        self._on_status = on_status
        graph = self.build()
        seeds = seeds if seeds is not None else config.protocol.seeds
        fractions = fractions if fractions is not None else [config.protocol.label_fraction]

        initial_state: ProtocolState = {
            "dataset": ds,
            "config": config,
            "seeds": list(dict.fromkeys(seeds)),
            "fractions": list(dict.fromkeys(float(f) for f in fractions)),
            "domains": frozenset(domains),
            "readout": readout,
            "views": [],
            "vault": LabelVault(labels={}),
            "plans": {},
            "runs": [],
            "folds": [],
        }

        try:
            result = graph.invoke(initial_state)
        finally:
            self._on_status = None

        snapshot = config.model_dump(mode="json")
        reports = {
            fraction: MetricReport.from_folds([m for m in result["folds"] if m.label_fraction == fraction], config=snapshot)
            for fraction in initial_state["fractions"]
        }
        audit = result["vault"].audit(result["plans"])
        return ProtocolResult(reports=reports, runs=result["runs"], plans=result["plans"], label_audit=audit, config=config)


_orchestrator: ProtocolOrchestrator | None = None


def get_orchestrator() -> ProtocolOrchestrator:
    """Get or create the singleton orchestrator instance.

    Returns:
        Singleton ProtocolOrchestrator instance.
    """
    global _orchestrator
    if _orchestrator is None:
        _orchestrator = ProtocolOrchestrator()
    return _orchestrator
