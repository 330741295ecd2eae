"""
Markov chain value types: local moves and chain state.
"""
import random
from dataclasses import dataclass
from enum import Enum

from app.models.sequence import BuildingSequence


class MoveOp(str, Enum):
    """
    Local operation on a building sequence.

    PF: peak to flat, FV: flat to valley, FF: flat to flat,
    PV: peak into valley.
    """

    PF = "PF"
    FV = "FV"
    FF = "FF"
    PV = "PV"


class Direction(str, Enum):
    """Whether a move is applied as defined or undone."""

    FORWARD = "forward"
    REVERSE = "reverse"

    @property
    def sign(self) -> int:
        """+1 for forward, -1 for reverse."""
        return 1 if self is Direction.FORWARD else -1


@dataclass(frozen=True, slots=True)
class LocalMove:
    """
    One proposal of the chain.

    Attributes:
        op: Operation type
        i: First height index
        j: Second height index
        direction: Forward or reverse
    """

    op: MoveOp
    i: int
    j: int
    direction: Direction = Direction.FORWARD

    def reversed(self) -> "LocalMove":
        """The move undoing this one."""
        flipped = Direction.REVERSE if self.direction is Direction.FORWARD else Direction.FORWARD
        return LocalMove(self.op, self.i, self.j, flipped)

    def __str__(self) -> str:
        suffix = "" if self.direction is Direction.FORWARD else "^-1"
        return f"{self.op.value}({self.i},{self.j}){suffix}"


@dataclass(slots=True)
class ChainState:
    """
    Mutable state of one chain.

    Attributes:
        sequence: Current building sequence
        step: Number of steps taken
        rng: The chain's own random source
        accepted: Number of accepted non-trivial moves
    """

    sequence: BuildingSequence
    rng: random.Random
    step: int = 0
    accepted: int = 0
