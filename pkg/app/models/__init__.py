"""
Domain value types.
"""
from app.models.path import ALPHABET, Move, MotzkinPath, PathStats
from app.models.sequence import BuildingSequence
from app.models.permutation import Permutation
from app.models.table import TableKind, TableMode
from app.models.chain import ChainState, Direction, LocalMove, MoveOp

__all__ = [
    "ALPHABET",
    "Move",
    "MotzkinPath",
    "PathStats",
    "BuildingSequence",
    "Permutation",
    "TableKind",
    "TableMode",
    "ChainState",
    "Direction",
    "LocalMove",
    "MoveOp",
]
