"""Entry point for the freqbrain command-line interface."""

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import NoReturn

from freq_brain.config import EnvironmentSettings, RunConfig, get_default_config
from freq_brain.data import dataset_digest, generate_synthetic, load_dataset, write_dataset
from freq_brain.enums import AblationVariant, BandEnum, StageEnum, StatusEnum
from freq_brain.evaluation import scaling_probe
from freq_brain.evaluation.ablation import AblationSpec, run_ablation_result
from freq_brain.evaluation.protocol import run_protocol_result
from freq_brain.evaluation.sweep import label_fraction_sweep_result, sensitivity_grid
from freq_brain.exceptions import ConfigError, FreqBrainError
from freq_brain.models import Dataset, MetricReport
from freq_brain.output import (
    comparison_frame,
    prepare_run_dir,
    resolve_output_dir,
    spectrum_frame,
    write_comparison,
    write_config_snapshot,
    write_metrics,
    write_protocol_result,
)
from freq_brain.training.subjects import prepare_subjects

logger = logging.getLogger("freq_brain")

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with status 1."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0.0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _float_list(text: str) -> list[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _fraction_list(text: str) -> list[float]:
    fractions = _float_list(text)
    if not fractions or any(not 0.0 < f <= 1.0 for f in fractions):
        raise argparse.ArgumentTypeError(f"fractions must be in (0, 1], got {text!r}")
    return fractions


def _variant_list(text: str) -> list[AblationSpec]:
    try:
        return AblationSpec.parse(name for name in text.split(",") if name.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _log_status(stage: StageEnum, status: StatusEnum) -> None:
    logger.info("stage %s: %s", stage, status)


def load_config(args: argparse.Namespace) -> RunConfig:
    """Resolve the run configuration from a file, overrides and flags.

    Args:
        args: Parsed arguments.

    Returns:
        Validated RunConfig.
    """
    config = RunConfig.from_file(args.config) if args.config else get_default_config()
    overrides = list(args.set or [])
    if getattr(args, "out", None):
        overrides.append(f"output.directory={args.out}")
    if getattr(args, "overwrite", False):
        overrides.append("output.overwrite=true")
    return config.with_overrides(overrides)


def load_source(config: RunConfig) -> Dataset:
    """Load the manifest dataset, or generate the synthetic one.

    Args:
        config: Run configuration.

    Returns:
        Dataset.
    """
    if config.data.manifest is not None:
        return load_dataset(config.data.manifest)
    spec = config.data.synthetic
    return generate_synthetic(spec.n_subjects, spec.n_rois, spec.n_timepoints, spec.band, spec.snr, spec.seed)


def _run_dir(config: RunConfig) -> Path:
    run_dir = prepare_run_dir(resolve_output_dir(config.output.directory, EnvironmentSettings()), config.output.overwrite)
    write_config_snapshot(run_dir, config)
    return run_dir


def _print_report(label: str, report: MetricReport) -> None:
    metrics = "  ".join(f"{name}={report.mean[name]:.3f}±{report.std[name]:.3f}" for name in report.mean)
    print(f"{label}: {metrics}  ({len(report.folds)} folds)")


def cmd_synth(args: argparse.Namespace) -> int:
    """Generate a planted-spectrum dataset and write it to disk.

    Args:
        args: Parsed arguments.

    Returns:
        Exit code.

    Raises:
        ConfigError: If the target directory is non-empty or unwritable.
    """
    try:
        ds = generate_synthetic(args.subjects, args.rois, args.timepoints, args.band, args.snr, args.seed)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    out_dir = resolve_output_dir(args.out, EnvironmentSettings())
    try:
        manifest = write_dataset(ds, out_dir, overwrite=args.overwrite)
    except OSError as exc:
        raise ConfigError(f"cannot write dataset to {out_dir}: {exc}") from exc
    print(manifest)
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    """Run the cross-validated protocol.

    Args:
        args: Parsed arguments.

    Returns:
        Exit code.
    """
    config = load_config(args)
    if args.dry_run:
        print(config.to_yaml(), end="")
        return 0
    ds = load_source(config)
    run_dir = _run_dir(config)
    result = run_protocol_result(ds, config, on_status=_log_status)
    write_protocol_result(run_dir, result, dataset_digest(ds))
    _print_report("run", result.report)
    return 0


def cmd_ablate(args: argparse.Namespace) -> int:
    """Run ablation variants and a comparison table.

    Args:
        args: Parsed arguments.

    Returns:
        Exit code.
    """
    config = load_config(args)
    ds = load_source(config)
    run_dir = _run_dir(config)
    digest = dataset_digest(ds)
    reports: dict[str, MetricReport] = {}
    for spec in args.variants:
        result = run_ablation_result(ds, spec, config, on_status=_log_status)
        write_metrics(run_dir, result.report, digest, name=f"metrics-{spec.variant}")
        reports[str(spec.variant)] = result.report
        _print_report(str(spec.variant), result.report)
    write_comparison(run_dir, reports, "variant", "ablation.csv")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    """Run the label-fraction sweep.

    Args:
        args: Parsed arguments.

    Returns:
        Exit code.
    """
    config = load_config(args)
    ds = load_source(config)
    run_dir = _run_dir(config)
    digest = dataset_digest(ds)
    result = label_fraction_sweep_result(ds, args.fractions, config=config)
    for fraction, report in result.reports.items():
        write_metrics(run_dir, report, digest, name=f"metrics-fraction{fraction:g}")
        _print_report(f"fraction {fraction:g}", report)
    write_comparison(run_dir, result.reports, "label_fraction", "sweep.csv")
    return 0


def cmd_sensitivity(args: argparse.Namespace) -> int:
    """Sweep the two decorrelation coefficients.

    Args:
        args: Parsed arguments.

    Returns:
        Exit code.
    """
    config = load_config(args)
    ds = load_source(config)
    run_dir = _run_dir(config)
    grid = sensitivity_grid(ds, args.gammas, args.betas, config=config)
    frame = comparison_frame(grid, "cell")
    frame.insert(0, "gamma", [gamma for gamma, _ in grid])
    frame.insert(1, "beta", [beta for _, beta in grid])
    frame.drop(columns="cell").to_csv(run_dir / "sensitivity.csv", index=False)
    for (gamma, beta), report in grid.items():
        _print_report(f"gamma={gamma:g} beta={beta:g}", report)
    return 0


def cmd_probe_scaling(args: argparse.Namespace) -> int:
    """Time the frequency-domain encoder over graph sizes.

    Args:
        args: Parsed arguments.

    Returns:
        Exit code.
    """
    report = scaling_probe(args.n_values, k=args.k, trials=args.trials, seed=args.seed)
    frame = report.to_frame()
    if args.out:
        out = resolve_output_dir(args.out, EnvironmentSettings())
        out.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(out, index=False)
    print(frame.to_string(index=False))
    print("slope: undefined" if report.slope is None else f"slope: {report.slope:.3f}")
    return 0


def cmd_dump_spectrum(args: argparse.Namespace) -> int:
    """Print eigenvalues, bands and spectral energy of one subject.

    Args:
        args: Parsed arguments.

    Returns:
        Exit code.

    Raises:
        ConfigError: If the subject ID is unknown.
    """
    config = load_config(args)
    ds = load_source(config)
    ids = ds.ids
    subject = args.subject or ids[0]
    if subject not in ids:
        raise ConfigError(f"unknown subject {subject!r}")
    subset = ds.model_copy(update={"records": (ds.records[ids.index(subject)],)})
    frame = spectrum_frame(prepare_subjects(subset, config.graph, config.spectral)[0])
    print(frame.to_csv(index=False), end="")
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("config", nargs="?", help="YAML or flat key=value config file (defaults apply when omitted)")
    parser.add_argument("--set", action="append", metavar="SECTION.KEY=VALUE", help="Override a config value (repeatable)")
    parser.add_argument("--out", help="Run directory (overrides output.directory)")
    parser.add_argument("--overwrite", action="store_true", help="Allow writing into a non-empty run directory")


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser.

    Returns:
        Parser with one subcommand per entry point.
    """
    parser = _Parser(prog="freqbrain", description="Frequency-enhanced self-supervised learning on brain graphs")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Warnings only")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    synth = commands.add_parser("synth", help="Generate a synthetic dataset")
    synth.add_argument("--subjects", type=int, default=40)
    synth.add_argument("--rois", type=int, default=16)
    synth.add_argument("--timepoints", type=int, default=64)
    synth.add_argument("--band", choices=[band.value for band in BandEnum], default=BandEnum.HIGH.value)
    synth.add_argument("--snr", type=_positive_float, default=2.0)
    synth.add_argument("--seed", type=int, default=7)
    synth.add_argument("--out", required=True, help="Target directory")
    synth.add_argument("--overwrite", action="store_true")
    synth.set_defaults(handler=cmd_synth)

    run = commands.add_parser("run", help="Pretrain, fine-tune and evaluate")
    _add_common(run)
    run.add_argument("--dry-run", action="store_true", help="Print the resolved config and exit")
    run.set_defaults(handler=cmd_run)

    ablate = commands.add_parser("ablate", help="Compare model variants")
    _add_common(ablate)
    ablate.add_argument(
        "--variants",
        type=_variant_list,
        default=[AblationSpec(variant) for variant in AblationVariant],
        help="Comma-separated variants: " + ",".join(variant.value for variant in AblationVariant),
    )
    ablate.set_defaults(handler=cmd_ablate)

    sweep = commands.add_parser("sweep", help="Vary the labeled fraction")
    _add_common(sweep)
    sweep.add_argument("--fractions", type=_fraction_list, default=[0.1, 0.2, 0.5, 1.0])
    sweep.set_defaults(handler=cmd_sweep)

    sensitivity = commands.add_parser("sensitivity", help="Sweep the decorrelation coefficients")
    _add_common(sensitivity)
    sensitivity.add_argument("--gammas", type=_float_list, default=[1e-6, 1e-5, 1e-4])
    sensitivity.add_argument("--betas", type=_float_list, default=[1e-5, 1e-4, 1e-3])
    sensitivity.set_defaults(handler=cmd_sensitivity)

    probe = commands.add_parser("probe-scaling", help="Time the FGNN forward against graph size")
    probe.add_argument("--n-values", type=_int_list, default=[64, 128, 256, 512])
    probe.add_argument("--k", type=int, default=8)
    probe.add_argument("--trials", type=int, default=5)
    probe.add_argument("--seed", type=int, default=0)
    probe.add_argument("--out", help="CSV file for the timing table")
    probe.set_defaults(handler=cmd_probe_scaling)

    dump = commands.add_parser("dump-spectrum", help="Print one subject's graph spectrum")
    _add_common(dump)
    dump.add_argument("--subject", help="Subject ID (defaults to the first)")
    dump.set_defaults(handler=cmd_dump_spectrum)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point for the CLI.

    Args:
        argv: Arguments without the program name; defaults to sys.argv.

    Returns:
        Exit code: 0 success, 1 usage or config error, 2 data error, 3 numeric failure.
    """
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT)

    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except FreqBrainError as exc:
        print(f"freqbrain: error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
