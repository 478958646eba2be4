"""Dataset ingestion, export and splitting."""

from coxgroup.data.export import (
    SavedSubgroup,
    read_region,
    read_subgroup,
    write_dataset_csv,
    write_region,
    write_subgroup,
)
from coxgroup.data.ingest import ColumnSpec, load_csv
from coxgroup.data.split import replicate_rng, train_test_split

__all__ = [
    # Ingestion
    "ColumnSpec",
    "load_csv",
    # Export
    "write_dataset_csv",
    "write_region",
    "read_region",
    "SavedSubgroup",
    "write_subgroup",
    "read_subgroup",
    # Splitting
    "replicate_rng",
    "train_test_split",
]
