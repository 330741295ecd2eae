"""
Permutation bridge: permutations to paths, uniform permutation per path,
and the brute-force displacement oracle.
"""
import itertools
import logging
import random
from collections import Counter
from typing import Iterator

from app.core.config import settings
from app.core.exceptions import InvariantViolation, TooLargeError
from app.models.path import MotzkinPath
from app.models.permutation import Permutation
from app.services import path_service


logger = logging.getLogger(__name__)


def displacement(pi: Permutation) -> int:
    """
    Total displacement Σ |i - π(i)|, always even.

    Args:
        pi: Permutation

    Returns:
        Total displacement
    """
    return sum(abs(i - image) for i, image in enumerate(pi.images, start=1))


def perm_to_path(pi: Permutation) -> MotzkinPath:
    """
    Map a permutation to its Motzkin path.

    Position i becomes U when π(i) > i and π⁻¹(i) > i, D when both are
    smaller than i, and H otherwise.

    Args:
        pi: Permutation

    Returns:
        Path of width n and area displacement(pi) / 2
    """
    inverse = pi.inverse()
    moves = []
    for i in range(1, pi.size + 1):
        forward, backward = pi(i), inverse(i)
        if forward > i and backward > i:
            moves.append("U")
        elif forward < i and backward < i:
            moves.append("D")
        else:
            moves.append("H")
    return MotzkinPath("".join(moves))


def sample_perm_for_path(path: MotzkinPath, rng: random.Random) -> Permutation:
    """
    Draw uniformly one of the weight(path) permutations mapping to path.

    1. Left to right, every D picks one open U to its left: edge U -> D
       carrying π forward.
    2. Right to left, every U picks one open D to its right: edge D -> U
       carrying π backward.
    3. Left to right, every H at height h picks one of 2h + 1 options: stay
       fixed, or split one of the h forward or h backward edges crossing it.

    Args:
        path: Valid path
        rng: Random source

    Returns:
        Uniform permutation among those with perm_to_path = path

    Raises:
        InvariantViolation: If crossing counts at some H are unbalanced
    """
    moves = path.moves
    n = len(moves)
    heights = path_service.path_stats(path).heights

    # [source, target] pairs; π(source) = target
    forward_edges: list[list[int]] = []
    backward_edges: list[list[int]] = []

    open_ups: list[int] = []
    for position, symbol in enumerate(moves, start=1):
        if symbol == "U":
            open_ups.append(position)
        elif symbol == "D":
            up = open_ups.pop(rng.randrange(len(open_ups)))
            forward_edges.append([up, position])

    open_downs: list[int] = []
    for position in range(n, 0, -1):
        symbol = moves[position - 1]
        if symbol == "D":
            open_downs.append(position)
        elif symbol == "U":
            down = open_downs.pop(rng.randrange(len(open_downs)))
            backward_edges.append([down, position])

    images = [0] * n
    for position, symbol in enumerate(moves, start=1):
        if symbol != "H":
            continue
        height = heights[position - 1]
        crossing_forward = [e for e in forward_edges if e[0] < position < e[1]]
        crossing_backward = [e for e in backward_edges if e[1] < position < e[0]]
        if len(crossing_forward) != height or len(crossing_backward) != height:
            raise InvariantViolation(
                f"unbalanced crossings at H {position}",
                position=position,
                height=height,
                forward=len(crossing_forward),
                backward=len(crossing_backward)
            )
        choice = rng.randrange(2 * height + 1)
        if choice == 2 * height:
            images[position - 1] = position
            continue
        edge = crossing_forward[choice] if choice < height else crossing_backward[choice - height]
        target = edge[1]
        edge[1] = position
        (forward_edges if choice < height else backward_edges).append([position, target])

    for source, target in itertools.chain(forward_edges, backward_edges):
        images[source - 1] = target
    return Permutation(tuple(images))


def enumerate_perms_for_path(path: MotzkinPath) -> list[Permutation]:
    """
    All permutations of the path's width mapping to the path.

    Args:
        path: Valid path of width at most settings.brute_force_max_n

    Returns:
        Permutations in lexicographic order

    Raises:
        TooLargeError: If the width exceeds the brute-force limit
    """
    n = path.width
    if n > settings.brute_force_max_n:
        raise TooLargeError(n, settings.brute_force_max_n)
    return [pi for pi in _all_permutations(n) if perm_to_path(pi) == path]


def brute_force_displacement_table(n: int) -> dict[int, int]:
    """
    Histogram of displacement / 2 over all of S_n.

    Args:
        n: Size, at most settings.brute_force_max_n

    Returns:
        Map d -> number of permutations with total displacement 2d

    Raises:
        TooLargeError: If n exceeds the brute-force limit
    """
    if n > settings.brute_force_max_n:
        raise TooLargeError(n, settings.brute_force_max_n)
    logger.debug("Enumerating all permutations of size %d", n)
    histogram = Counter(
        sum(abs(i - image) for i, image in enumerate(images, start=1)) // 2
        for images in itertools.permutations(range(1, n + 1))
    )
    return dict(sorted(histogram.items()))


def _all_permutations(n: int) -> Iterator[Permutation]:
    for images in itertools.permutations(range(1, n + 1)):
        yield Permutation(images)
