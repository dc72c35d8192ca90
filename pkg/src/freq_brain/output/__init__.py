"""Output module for run artifacts."""

from freq_brain.output.reports import (
    comparison_frame,
    prepare_run_dir,
    resolve_output_dir,
    spectrum_frame,
    write_checkpoints,
    write_comparison,
    write_config_snapshot,
    write_metrics,
    write_protocol_result,
    write_traces,
)

__all__ = [
    "comparison_frame",
    "prepare_run_dir",
    "resolve_output_dir",
    "spectrum_frame",
    "write_checkpoints",
    "write_comparison",
    "write_config_snapshot",
    "write_metrics",
    "write_protocol_result",
    "write_traces",
]
