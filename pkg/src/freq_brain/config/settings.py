"""Configuration settings using Pydantic."""

import json
from functools import lru_cache
from pathlib import Path
from typing import Any

import yaml
from pydantic import Field, ValidationError, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from freq_brain.enums import BandEnum, ObjectiveEnum, SolverEnum, TopologyEnum
from freq_brain.exceptions import ConfigError

YAML_SUFFIXES = (".yaml", ".yml")


def _split_csv(value: Any) -> Any:
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


class SyntheticSettings(BaseSettings):
    """Planted-spectrum dataset used when no manifest is given."""

    model_config = SettingsConfigDict(env_prefix="FREQBRAIN_SYNTHETIC_", extra="forbid")

    n_subjects: int = Field(default=40, ge=4, description="Number of subjects (even)")
    n_rois: int = Field(default=16, ge=8, description="Graph size")
    n_timepoints: int = Field(default=64, ge=8, description="Series length")
    band: BandEnum = Field(default=BandEnum.HIGH, description="Band carrying the class signal")
    snr: float = Field(default=2.0, gt=0.0, description="Energy boost factor minus one")
    seed: int = Field(default=7, ge=0, description="Generator seed")


class DataSettings(BaseSettings):
    """Dataset source: a manifest file or a synthetic spec."""

    model_config = SettingsConfigDict(env_prefix="FREQBRAIN_DATA_", extra="forbid")

    manifest: Path | None = Field(default=None, description="Manifest path; None selects the synthetic generator")
    synthetic: SyntheticSettings = Field(default_factory=SyntheticSettings)


class GraphSettings(BaseSettings):
    """Functional-connectivity graph construction."""

    model_config = SettingsConfigDict(env_prefix="FREQBRAIN_GRAPH_", extra="forbid")

    density: float = Field(default=0.2, gt=0.0, le=1.0, description="Fraction of ROI pairs kept as edges")
    solver: SolverEnum = Field(default=SolverEnum.JACOBI, description="Laplacian eigensolver")
    topology: TopologyEnum = Field(
        default=TopologyEnum.AUTO,
        description="correlation: per-subject thresholded PCC graph; shared: the dataset's generator graph; auto: shared when present",
    )


class SpectralSettings(BaseSettings):
    """Filter bank and component selection."""

    model_config = SettingsConfigDict(env_prefix="FREQBRAIN_SPECTRAL_", extra="forbid")

    p_low: float = Field(default=0.2, gt=0.0, lt=1.0, description="Share of eigenindices in the low band")
    p_high: float = Field(default=0.2, gt=0.0, lt=1.0, description="Share of eigenindices in the high band")
    retained: list[BandEnum] = Field(default_factory=lambda: [BandEnum.LOW, BandEnum.HIGH], description="Bands fed to the FGO stack")
    k_features: int | None = Field(default=None, ge=1, description="Feature-column budget K (None = all D columns)")

    split_retained = field_validator("retained", mode="before")(_split_csv)

    @model_validator(mode="after")
    def _check_quotas(self) -> "SpectralSettings":
        if self.p_low + self.p_high > 1.0:
            raise ValueError("p_low + p_high must not exceed 1")
        if not self.retained:
            raise ValueError("at least one band must be retained")
        return self


class ModelSettings(BaseSettings):
    """Encoder dimensions."""

    model_config = SettingsConfigDict(env_prefix="FREQBRAIN_MODEL_", extra="forbid")

    gcn_layers: int = Field(default=2, ge=1, description="GCN depth")
    gcn_hidden: int | None = Field(default=None, ge=1, description="GCN hidden width (None = D)")
    fgo_layers: int = Field(default=3, ge=0, description="Number of FGO operators P")
    mlp_hidden: int | None = Field(default=None, ge=1, description="Projection MLP width (None = max(K, D))")


class LossSettings(BaseSettings):
    """Domain-consistency objective."""

    model_config = SettingsConfigDict(env_prefix="FREQBRAIN_LOSS_", extra="forbid")

    gamma: float = Field(default=1e-5, ge=0.0, description="Time-domain decorrelation weight")
    beta: float = Field(default=1e-4, ge=0.0, description="Frequency-domain decorrelation weight")
    objective: ObjectiveEnum = Field(default=ObjectiveEnum.CCA, description="Objective family")
    standardize: bool = Field(default=True, description="Column-standardize representations before the loss")


class OptimizerSettings(BaseSettings):
    """AdamW settings for pretraining."""

    model_config = SettingsConfigDict(env_prefix="FREQBRAIN_OPTIMIZER_", extra="forbid")

    learning_rate: float = Field(default=1e-5, gt=0.0)
    weight_decay: float = Field(default=0.01, ge=0.0)
    beta1: float = Field(default=0.9, ge=0.0, lt=1.0)
    beta2: float = Field(default=0.999, ge=0.0, lt=1.0)
    eps: float = Field(default=1e-8, gt=0.0)


class FinetuneSettings(BaseSettings):
    """Classifier-head training on frozen representations."""

    model_config = SettingsConfigDict(env_prefix="FREQBRAIN_FINETUNE_", extra="forbid")

    epochs: int = Field(default=200, ge=0)
    learning_rate: float = Field(default=1e-2, gt=0.0)
    weight_decay: float = Field(default=0.01, ge=0.0)


class ProtocolSettings(BaseSettings):
    """Cross-validation protocol."""

    model_config = SettingsConfigDict(env_prefix="FREQBRAIN_PROTOCOL_", extra="forbid")

    folds: int = Field(default=5, ge=2)
    seeds: list[int] = Field(default_factory=lambda: [0, 1, 2, 3, 4], min_length=1)
    pretrain_epochs: int = Field(default=200, ge=0)
    label_fraction: float = Field(default=0.2, gt=0.0, le=1.0)
    strict: bool = Field(default=False, description="Exclude test folds from pretraining")

    split_seeds = field_validator("seeds", mode="before")(_split_csv)


class RuntimeSettings(BaseSettings):
    """Execution policy."""

    model_config = SettingsConfigDict(env_prefix="FREQBRAIN_RUNTIME_", extra="forbid")

    workers: int = Field(default=1, ge=1, description="Threads for per-subject graph construction")


class OutputSettings(BaseSettings):
    """Where run artifacts go."""

    model_config = SettingsConfigDict(env_prefix="FREQBRAIN_OUTPUT_", extra="forbid")

    directory: Path = Field(default=Path("runs/latest"), description="Run directory (relative to the output root)")
    overwrite: bool = Field(default=False, description="Allow writing into a non-empty directory")


class EnvironmentSettings(BaseSettings):
    """Process-level overrides read from the environment or a .env file."""

    model_config = SettingsConfigDict(env_prefix="FREQBRAIN_", env_file=".env", extra="ignore")

    output_root: Path | None = Field(default=None, description="Root prepended to relative output directories")


class RunConfig(BaseSettings):
    """Root settings container."""

    model_config = SettingsConfigDict(env_prefix="FREQBRAIN_", extra="forbid")

    data: DataSettings = Field(default_factory=DataSettings)
    graph: GraphSettings = Field(default_factory=GraphSettings)
    spectral: SpectralSettings = Field(default_factory=SpectralSettings)
    model: ModelSettings = Field(default_factory=ModelSettings)
    loss: LossSettings = Field(default_factory=LossSettings)
    optimizer: OptimizerSettings = Field(default_factory=OptimizerSettings)
    finetune: FinetuneSettings = Field(default_factory=FinetuneSettings)
    protocol: ProtocolSettings = Field(default_factory=ProtocolSettings)
    runtime: RuntimeSettings = Field(default_factory=RuntimeSettings)
    output: OutputSettings = Field(default_factory=OutputSettings)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunConfig":
        """Validate a nested mapping.

        Args:
            data: Mapping of section name to section mapping.

        Returns:
            Validated RunConfig.

        Raises:
            ConfigError: On unknown keys or invalid values.
        """
        try:
            return cls(**data)
        except ValidationError as exc:
            raise ConfigError(f"invalid configuration: {exc}") from exc

    @classmethod
    def from_yaml(cls, path: Path | str) -> "RunConfig":
        """Load settings from YAML file.

        Args:
            path: Path to YAML configuration file.

        Returns:
            RunConfig instance loaded from file.

        Raises:
            ConfigError: If the file is missing or not a mapping.
        """
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")

        with open(path) as f:
            data = yaml.safe_load(f) or {}
        if not isinstance(data, dict):
            raise ConfigError(f"config file {path} must contain a mapping")
        return cls.from_dict(data)

    @classmethod
    def from_flat(cls, path: Path | str) -> "RunConfig":
        """Load settings from a flat ``section.key=value`` text file.

        Args:
            path: Path to the text file; ``#`` starts a comment.

        Returns:
            RunConfig instance loaded from file.

        Raises:
            ConfigError: If the file is missing or a line is malformed.
        """
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        lines = [line.split("#", 1)[0].strip() for line in path.read_text().splitlines()]
        return cls.from_dict(_unflatten([line for line in lines if line]))

    @classmethod
    def from_file(cls, path: Path | str) -> "RunConfig":
        """Load settings from YAML or flat text, chosen by suffix.

        Args:
            path: Config file path.

        Returns:
            RunConfig instance loaded from file.
        """
        path = Path(path)
        if path.suffix.lower() in YAML_SUFFIXES:
            return cls.from_yaml(path)
        return cls.from_flat(path)

    def with_overrides(self, assignments: list[str]) -> "RunConfig":
        """Apply ``section.key=value`` overrides.

        Args:
            assignments: Override expressions, applied in order.

        Returns:
            New validated RunConfig.
        """
        if not assignments:
            return self
        merged = _deep_merge(self.model_dump(mode="json"), _unflatten(assignments))
        return self.from_dict(merged)

    def to_flat(self) -> str:
        """Serialize every materialized value in the flat text format.

        Returns:
            One ``section.key=value`` line per leaf, sorted.
        """
        lines = [f"{key}={json.dumps(value)}" for key, value in _flatten(self.model_dump(mode="json"))]
        return "\n".join(sorted(lines)) + "\n"

    def to_yaml(self) -> str:
        """Serialize every materialized value as YAML.

        Returns:
            YAML document.
        """
        return yaml.safe_dump(self.model_dump(mode="json"), sort_keys=True)


def _unflatten(assignments: list[str]) -> dict[str, Any]:
    data: dict[str, Any] = {}
    for assignment in assignments:
        key, sep, raw = assignment.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"expected section.key=value, got {assignment!r}")
        parts = key.strip().split(".")
        if len(parts) < 2:
            raise ConfigError(f"key {key!r} needs a section prefix")
        node = data
        for part in parts[:-1]:
            child = node.setdefault(part, {})
            if not isinstance(child, dict):
                raise ConfigError(f"key {key!r} collides with a scalar value")
            node = child
        node[parts[-1]] = yaml.safe_load(raw.strip()) if raw.strip() else None
    return data


def _flatten(data: dict[str, Any], prefix: str = "") -> list[tuple[str, Any]]:
    items: list[tuple[str, Any]] = []
    for key, value in data.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            items.extend(_flatten(value, f"{name}."))
        else:
            items.append((name, value))
    return items


def _deep_merge(base: dict[str, Any], update: dict[str, Any]) -> dict[str, Any]:
    merged = dict(base)
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


@lru_cache(maxsize=1)
def get_default_config() -> RunConfig:
    """Get cached default configuration.

    Returns:
        RunConfig loaded from the packaged config.yaml.
    """
    config_path = Path(__file__).parent / "config.yaml"
    return RunConfig.from_yaml(config_path)
