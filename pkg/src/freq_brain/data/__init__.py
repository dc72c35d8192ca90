"""Dataset ingestion, synthetic generation and splitting."""

from freq_brain.data.ingest import dataset_digest, load_dataset, write_dataset
from freq_brain.data.splits import make_splits
from freq_brain.data.synthetic import generate_synthetic

__all__ = ["dataset_digest", "load_dataset", "write_dataset", "make_splits", "generate_synthetic"]
