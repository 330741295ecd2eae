"""
Motzkin path value types.
"""
from dataclasses import dataclass
from enum import Enum


class Move(str, Enum):
    """
    Path move enumeration.

    U rises by one, H keeps the level, D falls by one.
    """

    UP = "U"
    FLAT = "H"
    DOWN = "D"

    @property
    def step(self) -> int:
        """Height change caused by the move."""
        if self is Move.UP:
            return 1
        if self is Move.DOWN:
            return -1
        return 0


ALPHABET = frozenset(move.value for move in Move)


@dataclass(frozen=True, slots=True)
class MotzkinPath:
    """
    A Motzkin path stored as its move string over {U, H, D}.

    Instances are only created through path_service.validate or by builders
    that emit valid paths by construction.

    Attributes:
        moves: Move string, e.g. "UUHDHUHDDH"
    """

    moves: str

    @property
    def width(self) -> int:
        """Number of moves."""
        return len(self.moves)

    def __str__(self) -> str:
        return self.moves

    def __len__(self) -> int:
        return len(self.moves)


@dataclass(frozen=True, slots=True)
class PathStats:
    """
    Geometric statistics of a path.

    Attributes:
        width: Number of moves
        area: Area between path and axis
        heights: Per-move height h_i (after the move for U, before it for D,
            the level for H)
    """

    width: int
    area: int
    heights: tuple[int, ...]
