"""
Motzkin path service: validation, statistics, weight and building sequence.
"""
from typing import Iterator

from app.core.exceptions import BadSymbolError, NegativeHeightError, NonzeroEndError
from app.models.path import ALPHABET, Move, MotzkinPath, PathStats
from app.models.sequence import BuildingSequence


def validate(moves: str) -> MotzkinPath:
    """
    Validate a move string and wrap it as a path.

    Args:
        moves: String over {U, H, D}

    Returns:
        Validated path

    Raises:
        BadSymbolError: On a symbol outside the alphabet
        NegativeHeightError: If a prefix dips below the axis
        NonzeroEndError: If the path does not end on the axis
    """
    height = 0
    for position, symbol in enumerate(moves, start=1):
        if symbol not in ALPHABET:
            raise BadSymbolError(symbol, position)
        height += Move(symbol).step
        if height < 0:
            raise NegativeHeightError(position)
    if height != 0:
        raise NonzeroEndError(height)
    return MotzkinPath(moves)


def path_stats(path: MotzkinPath) -> PathStats:
    """
    Compute width, area and per-move heights.

    Area is accumulated in half units (2h - 1 for U and D, 2h for H) and
    halved at the end.

    Args:
        path: Valid path

    Returns:
        Path statistics
    """
    heights = []
    doubled_area = 0
    level = 0
    for move in map(Move, path.moves):
        if move is Move.UP:
            level += 1
        heights.append(level)
        doubled_area += 2 * level if move is Move.FLAT else 2 * level - 1
        if move is Move.DOWN:
            level -= 1
    return PathStats(width=len(path.moves), area=doubled_area // 2, heights=tuple(heights))


def weight(path: MotzkinPath) -> int:
    """
    Number of permutations mapping to the path.

    Product of h_i over U and D moves and 2h_i + 1 over H moves.

    Args:
        path: Valid path

    Returns:
        Weight, at least 1
    """
    result = 1
    for symbol, height in zip(path.moves, path_stats(path).heights):
        result *= 2 * height + 1 if symbol == "H" else height
    return result


def path_to_sequence(path: MotzkinPath) -> BuildingSequence:
    """
    Decompose a path into its building sequence.

    f_i counts H moves at height i; p_i counts D moves starting at height i,
    each of which closes the most recent open U at that height.

    Args:
        path: Valid path

    Returns:
        The unique building sequence of the path
    """
    stats = path_stats(path)
    top = max(stats.heights, default=0)
    flats = [0] * (top + 1)
    peaks = [0] * (top + 1)
    for symbol, height in zip(path.moves, stats.heights):
        if symbol == "H":
            flats[height] += 1
        elif symbol == "D":
            peaks[height] += 1
    return BuildingSequence.from_counts(flats, peaks)


def enumerate_paths(n: int) -> Iterator[MotzkinPath]:
    """
    Yield every Motzkin path of width n.

    Args:
        n: Width

    Yields:
        Paths in lexicographic order over U < H < D
    """
    moves: list[str] = []

    def extend(height: int) -> Iterator[MotzkinPath]:
        remaining = n - len(moves)
        if remaining == 0:
            yield MotzkinPath("".join(moves))
            return
        if height + 1 <= remaining - 1:
            moves.append("U")
            yield from extend(height + 1)
            moves.pop()
        if height <= remaining - 1:
            moves.append("H")
            yield from extend(height)
            moves.pop()
        if height >= 1:
            moves.append("D")
            yield from extend(height - 1)
            moves.pop()

    yield from extend(0)
