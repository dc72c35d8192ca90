"""Metrics, label auditing, per-fold evaluation, oracles and probes.

The workflow-backed entry points live in their own modules:
``evaluation.protocol``, ``evaluation.ablation`` and ``evaluation.sweep``.
"""

from freq_brain.evaluation.labels import LabelRead, LabelVault
from freq_brain.evaluation.metrics import compute_metrics
from freq_brain.evaluation.oracle import band_energy_oracle, band_energy_share
from freq_brain.evaluation.probe import fit_slope, scaling_probe
from freq_brain.evaluation.runner import ALL_SUBJECTS, SeedRun, evaluate_plan, pooled_embeddings, pretrain_seed

__all__ = [
    "LabelRead",
    "LabelVault",
    "compute_metrics",
    "band_energy_oracle",
    "band_energy_share",
    "fit_slope",
    "scaling_probe",
    "ALL_SUBJECTS",
    "SeedRun",
    "evaluate_plan",
    "pooled_embeddings",
    "pretrain_seed",
]
