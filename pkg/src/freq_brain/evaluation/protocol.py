"""Cross-validated pretrain / fine-tune / evaluate protocol."""

from freq_brain.config.settings import RunConfig
from freq_brain.models import Dataset, MetricReport
from freq_brain.workflow.orchestrator import ProtocolResult, StatusCallback, get_orchestrator


def run_protocol_result(
    ds: Dataset,
    config: RunConfig | None = None,
    seeds: list[int] | None = None,
    on_status: StatusCallback | None = None,
) -> ProtocolResult:
    """Run the protocol and keep encoders, traces, plans and the label audit.

    Args:
        ds: Dataset.
        config: Run configuration; defaults apply when omitted.
        seeds: Protocol seeds; defaults to ``config.protocol.seeds``.
        on_status: Optional stage status callback.

    Returns:
        ProtocolResult.
    """
    return get_orchestrator().invoke(ds, config or RunConfig(), seeds=seeds, on_status=on_status)


def run_protocol(ds: Dataset, config: RunConfig | None = None, seeds: list[int] | None = None) -> MetricReport:
    """Per seed: pretrain without labels, fine-tune per fold on the labeled subset, score the held-out fold.

    Args:
        ds: Dataset.
        config: Run configuration; defaults apply when omitted.
        seeds: Protocol seeds; defaults to ``config.protocol.seeds``.

    Returns:
        MetricReport over folds x seeds.
    """
    return run_protocol_result(ds, config, seeds).report
