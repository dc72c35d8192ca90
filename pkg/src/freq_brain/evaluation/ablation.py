"""Controlled variants of the full model."""

import logging
from collections.abc import Iterable
from dataclasses import dataclass

from freq_brain.config.settings import RunConfig
from freq_brain.enums import AblationVariant, BandEnum, DomainEnum, ObjectiveEnum
from freq_brain.models import Dataset, MetricReport
from freq_brain.training.pretrain import BOTH_DOMAINS
from freq_brain.workflow.orchestrator import ProtocolResult, StatusCallback, get_orchestrator

logger = logging.getLogger(__name__)

_BAND_VARIANTS = {
    AblationVariant.LOW_BAND: BandEnum.LOW,
    AblationVariant.MID_BAND: BandEnum.MID,
    AblationVariant.HIGH_BAND: BandEnum.HIGH,
}
_LOSS_VARIANTS = {
    AblationVariant.LOSS_EQUAL_COEFF: ObjectiveEnum.CCA_EQUAL,
    AblationVariant.LOSS_COSINE: ObjectiveEnum.COSINE,
    AblationVariant.LOSS_COSINE_DECORR: ObjectiveEnum.COSINE_DECORR,
}


@dataclass(frozen=True)
class AblationSpec:
    """One variant and the configuration changes it implies."""

    variant: AblationVariant

    @classmethod
    def parse(cls, names: Iterable[str]) -> list["AblationSpec"]:
        """Build specs from variant names.

        Args:
            names: Variant names such as ``low_band``.

        Returns:
            Specs in the given order.

        Raises:
            ValueError: On an unknown name; the message lists the valid ones.
        """
        specs = []
        for name in names:
            try:
                specs.append(cls(AblationVariant(name.strip())))
            except ValueError:
                valid = ", ".join(variant.value for variant in AblationVariant)
                raise ValueError(f"unknown variant {name!r}; valid variants: {valid}") from None
        return specs

    @property
    def domains(self) -> frozenset[DomainEnum]:
        """Encoders trained during pretraining."""
        if self.variant == AblationVariant.TIME_ONLY:
            return frozenset({DomainEnum.TIME})
        if self.variant == AblationVariant.FREQ_ONLY:
            return frozenset({DomainEnum.FREQUENCY})
        return BOTH_DOMAINS

    @property
    def readout(self) -> DomainEnum:
        """Representation fed to the classifier."""
        if self.variant == AblationVariant.TIME_ONLY:
            return DomainEnum.TIME
        if self.variant == AblationVariant.FREQ_ONLY:
            return DomainEnum.FREQUENCY
        return DomainEnum.FUSED

    def overrides(self) -> list[str]:
        """Config overrides in ``section.key=value`` form.

        Returns:
            Overrides; empty for variants that only change wiring.
        """
        if self.variant in _BAND_VARIANTS:
            return [f"spectral.retained=[{_BAND_VARIANTS[self.variant]}]"]
        if self.variant in _LOSS_VARIANTS:
            return [f"loss.objective={_LOSS_VARIANTS[self.variant]}"]
        return []

    def apply(self, config: RunConfig) -> RunConfig:
        """Derive the variant's configuration.

        Args:
            config: Base configuration.

        Returns:
            Configuration differing from ``config`` only in ``overrides()``.
        """
        return config.with_overrides(self.overrides())


def run_ablation_result(
    ds: Dataset,
    spec: AblationSpec,
    config: RunConfig | None = None,
    seeds: list[int] | None = None,
    on_status: StatusCallback | None = None,
) -> ProtocolResult:
    """Run the protocol under one variant.

    Args:
        ds: Dataset.
        spec: Variant.
        config: Base configuration.
        seeds: Protocol seeds.
        on_status: Optional stage status callback.

    Returns:
        ProtocolResult of the variant.
    """
    variant_config = spec.apply(config or RunConfig())
    logger.info("Ablation %s: overrides %s", spec.variant, spec.overrides() or "none")
    return get_orchestrator().invoke(
        ds,
        variant_config,
        seeds=seeds,
        domains=spec.domains,
        readout=spec.readout,
        on_status=on_status,
    )


def run_ablation(ds: Dataset, spec: AblationSpec, seeds: list[int] | None = None, config: RunConfig | None = None) -> MetricReport:
    """Metrics of one variant.

    Args:
        ds: Dataset.
        spec: Variant.
        seeds: Protocol seeds.
        config: Base configuration.

    Returns:
        MetricReport over folds x seeds.
    """
    return run_ablation_result(ds, spec, config, seeds).report
