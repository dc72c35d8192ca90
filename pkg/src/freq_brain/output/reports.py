"""Run-directory writers: config snapshot, metrics, traces, checkpoints, comparisons."""

import json
import logging
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from freq_brain.config.settings import EnvironmentSettings, RunConfig
from freq_brain.encoders.params import save_checkpoint
from freq_brain.enums import BandEnum
from freq_brain.evaluation.runner import ALL_SUBJECTS, SeedRun
from freq_brain.exceptions import ConfigError
from freq_brain.models import METRIC_NAMES, MetricReport
from freq_brain.training.subjects import SubjectView
from freq_brain.workflow.orchestrator import ProtocolResult

logger = logging.getLogger(__name__)


def resolve_output_dir(directory: Path | str, env: EnvironmentSettings | None = None) -> Path:
    """Apply the output-root override to a relative run directory.

    Args:
        directory: Run directory from the config or the command line.
        env: Environment settings; read from the process when omitted.

    Returns:
        Absolute directories unchanged, relative ones under the output root if set.
    """
    directory = Path(directory)
    env = env or EnvironmentSettings()
    if env.output_root is not None and not directory.is_absolute():
        return env.output_root / directory
    return directory


def prepare_run_dir(directory: Path | str, overwrite: bool = False) -> Path:
    """Create a run directory, refusing to reuse a non-empty one.

    Args:
        directory: Target directory.
        overwrite: Allow writing into a non-empty directory.

    Returns:
        The created directory.

    Raises:
        ConfigError: If the directory is non-empty and overwrite is False, or cannot be created.
    """
    directory = Path(directory)
    if directory.exists() and any(directory.iterdir()) and not overwrite:
        raise ConfigError(f"refusing to write into non-empty directory {directory} (set output.overwrite=true)")
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {directory}: {exc}") from exc
    return directory


def write_config_snapshot(run_dir: Path, config: RunConfig) -> None:
    """Write the fully materialized config as YAML and flat text.

    Args:
        run_dir: Run directory.
        config: Configuration of the run.
    """
    (run_dir / "config.yaml").write_text(config.to_yaml())
    (run_dir / "config.txt").write_text(config.to_flat())


def write_metrics(run_dir: Path, report: MetricReport, digest: str | None = None, name: str = "metrics") -> Path:
    """Write fold-level metrics as CSV and the aggregate as JSON.

    Args:
        run_dir: Run directory.
        report: Aggregated metrics.
        digest: Content hash of the input dataset.
        name: File stem.

    Returns:
        Path of the CSV file.
    """
    csv_path = run_dir / f"{name}.csv"
    report.to_frame().to_csv(csv_path, index=False)
    summary: dict[str, Any] = report.summary()
    summary["dataset_digest"] = digest
    (run_dir / f"{name}.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    return csv_path


def _suffix(run: SeedRun, key: int) -> str:
    return f"seed{run.seed}" if key == ALL_SUBJECTS else f"seed{run.seed}-fold{key}"


def write_traces(run_dir: Path, runs: list[SeedRun]) -> list[Path]:
    """Write one loss-trace CSV per pretraining run.

    Args:
        run_dir: Run directory.
        runs: Seed runs.

    Returns:
        Written paths.
    """
    trace_dir = run_dir / "traces"
    trace_dir.mkdir(exist_ok=True)
    paths = []
    for run in runs:
        for key, trace in run.traces.items():
            path = trace_dir / f"trace-{_suffix(run, key)}.csv"
            trace.to_frame().to_csv(path, index=False)
            paths.append(path)
    return paths


def write_checkpoints(run_dir: Path, runs: list[SeedRun]) -> list[Path]:
    """Write the pretrained encoders of every run.

    Args:
        run_dir: Run directory.
        runs: Seed runs.

    Returns:
        Written checkpoint paths.
    """
    paths = []
    for run in runs:
        for key, (tgnn, fgnn) in run.encoders.items():
            path = run_dir / "checkpoints" / f"encoders-{_suffix(run, key)}.pt"
            save_checkpoint(path, tgnn, fgnn, run.seed)
            paths.append(path)
    return paths


def comparison_frame(reports: dict[Any, MetricReport], key: str) -> pd.DataFrame:
    """Tabulate several reports side by side.

    Args:
        reports: Mapping label -> report.
        key: Column name of the label.

    Returns:
        One row per report with mean and std of each metric.
    """
    rows = []
    for label, report in reports.items():
        row: dict[str, Any] = {key: label, "n_folds": len(report.folds)}
        for metric in METRIC_NAMES:
            row[f"{metric}_mean"] = report.mean[metric]
            row[f"{metric}_std"] = report.std[metric]
        rows.append(row)
    return pd.DataFrame(rows)


def write_comparison(run_dir: Path, reports: dict[Any, MetricReport], key: str, filename: str) -> Path:
    """Write a comparison table.

    Args:
        run_dir: Run directory.
        reports: Mapping label -> report.
        key: Column name of the label.
        filename: CSV file name.

    Returns:
        Path of the CSV file.
    """
    path = run_dir / filename
    comparison_frame(reports, key).to_csv(path, index=False)
    return path


def write_protocol_result(run_dir: Path, result: ProtocolResult, digest: str | None = None, name: str = "metrics") -> None:
    """Write metrics, traces and checkpoints of a protocol run.

    Args:
        run_dir: Run directory.
        result: Protocol result.
        digest: Content hash of the input dataset.
        name: File stem of the metrics files.
    """
    write_metrics(run_dir, result.report, digest, name=name)
    write_traces(run_dir, result.runs)
    write_checkpoints(run_dir, result.runs)
    (run_dir / "label_audit.json").write_text(json.dumps({"passed": result.label_audit}) + "\n")
    logger.info("Wrote run artifacts to %s", run_dir)


def spectrum_frame(view: SubjectView) -> pd.DataFrame:
    """Eigenvalues, band assignment and spectral energy of one subject.

    Args:
        view: Prepared subject.

    Returns:
        One row per eigenindex.
    """
    bands = np.full(view.n_rois, "", dtype=object)
    for band in BandEnum:
        bands[view.bank.mask(band) > 0] = str(band)
    return pd.DataFrame(
        {
            "index": np.arange(view.n_rois),
            "eigenvalue": view.basis.eigenvalues,
            "band": bands,
            "energy": np.sum(view.spectrum.coefficients**2, axis=1),
        }
    )
