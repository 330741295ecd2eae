"""
Output record schemas, one per CSV layout.
"""
from typing import Optional

from pydantic import Field

from app.schemas.base import RecordSchema


class CountRow(RecordSchema):
    """One entry of the count triangle."""

    n: int
    d: int
    count: int


class PathRow(RecordSchema):
    """One sampled path."""

    path: str


class PermutationRow(RecordSchema):
    """One sampled permutation, images space-separated."""

    permutation: str


class SequenceRow(RecordSchema):
    """A building sequence with its path count and weights."""

    sequence: str
    m: Optional[int] = None
    perm: Optional[int] = None
    P: int = Field(..., description="m · perm")


class TvRow(RecordSchema):
    """Estimated distance to stationarity at step t."""

    t: int
    tv_distance: float
    visited_states: int


class MixingRow(RecordSchema):
    """One row of a mixing sweep, measured next to the reference time."""

    n: int
    A: int
    mixing_time: Optional[int] = Field(None, description="Empty when the step cap ran out")
    reference: Optional[int] = None
    ratio: Optional[float] = Field(None, description="mixing_time / reference")
    runs: Optional[int] = Field(None, description="Chains simulated; empty for the exact kernel")
    steps: int = Field(..., description="Last horizon simulated")


class MaxMixingRow(RecordSchema):
    """Slowest area of one width over every class with more than one sequence."""

    n: int
    A: Optional[int] = Field(None, description="Area attaining the maximum")
    mixing_time: Optional[int] = None
    A_star: int
    star_mixing_time: Optional[int] = None
    areas: int = Field(..., description="Number of areas compared")
    runs: Optional[int] = None


class CheckResult(RecordSchema):
    """Outcome of one verification check."""

    name: str
    passed: bool
    detail: str = ""


class ScalingRow(RecordSchema):
    """Build time of one width in the scaling report."""

    n: int
    seconds: float
    fitted_exponent: Optional[float] = Field(None, description="Log-log slope over all widths")
