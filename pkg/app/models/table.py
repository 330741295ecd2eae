"""
Enumerations describing count tables.
"""
from enum import Enum


class TableKind(str, Enum):
    """
    What a count table counts.

    M counts paths; D counts paths weighted by their permutation weight,
    i.e. permutations by total displacement.
    """

    UNWEIGHTED = "M"
    WEIGHTED = "D"


class TableMode(str, Enum):
    """
    Memory mode of a last-fall table.

    Rolling keeps only the two newest layers; full keeps every layer and is
    required for backtrace sampling.
    """

    ROLLING = "rolling"
    FULL = "full"
