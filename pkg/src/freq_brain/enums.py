"""Enums shared across the FreqBrain package."""

from enum import StrEnum, auto


class BandEnum(StrEnum):
    """Graph-frequency bands of the filter bank."""

    LOW = auto()
    MID = auto()
    HIGH = auto()


class DomainEnum(StrEnum):
    """Domain a representation was produced in."""

    TIME = auto()
    FREQUENCY = auto()
    FUSED = auto()


class ProvenanceEnum(StrEnum):
    """Where a dataset came from."""

    SYNTHETIC = auto()
    FILE = auto()


class SolverEnum(StrEnum):
    """Symmetric eigensolver used for the Laplacian."""

    JACOBI = auto()
    LAPACK = auto()


class TopologyEnum(StrEnum):
    """Graph the subject views are built on."""

    AUTO = auto()
    CORRELATION = auto()
    SHARED = auto()


class ObjectiveEnum(StrEnum):
    """Pretraining objective."""

    CCA = auto()
    CCA_EQUAL = auto()
    COSINE = auto()
    COSINE_DECORR = auto()


class AblationVariant(StrEnum):
    """Controlled model variants compared against the full model."""

    FULL = auto()
    TIME_ONLY = auto()
    FREQ_ONLY = auto()
    LOW_BAND = auto()
    MID_BAND = auto()
    HIGH_BAND = auto()
    LOSS_EQUAL_COEFF = auto()
    LOSS_COSINE = auto()
    LOSS_COSINE_DECORR = auto()


class StageEnum(StrEnum):
    """Stages of the evaluation workflow."""

    PREPARE = auto()
    PRETRAIN = auto()
    EVALUATE = auto()


class StatusEnum(StrEnum):
    """Status values for stage lifecycle tracking."""

    WAIT = auto()
    RUNNING = auto()
    DONE = auto()
    SKIPPED = auto()
