"""
Pydantic schemas package.
"""
from app.schemas.base import BaseSchema, RecordSchema
from app.schemas.run_schemas import ExperimentConfig, RunSpec
from app.schemas.record_schemas import (
    CheckResult,
    CountRow,
    MaxMixingRow,
    MixingRow,
    PathRow,
    PermutationRow,
    ScalingRow,
    SequenceRow,
    TvRow
)

__all__ = [
    "BaseSchema",
    "RecordSchema",
    "ExperimentConfig",
    "RunSpec",
    "CheckResult",
    "CountRow",
    "MaxMixingRow",
    "MixingRow",
    "PathRow",
    "PermutationRow",
    "ScalingRow",
    "SequenceRow",
    "TvRow",
]
