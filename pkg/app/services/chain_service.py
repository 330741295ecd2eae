"""
Metropolis chain over building sequences.

Local moves shift a unit of width between flats, peaks and valleys while
conserving width and area. Proposals are drawn from a fixed universe that
does not depend on the current state; infeasible proposals and rejected
ones leave the chain where it is.
"""
import itertools
import logging
import math
import random
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from app.core.exceptions import InfeasibleError, InvariantViolation
from app.core.rng import bernoulli, uniform_below
from app.models.chain import ChainState, Direction, LocalMove, MoveOp
from app.models.sequence import BuildingSequence
from app.services import blocks_service


logger = logging.getLogger(__name__)

# (array, index offset from i or j, delta) per op; "p" and "f" address the
# dense peak and flat arrays
Delta = tuple[str, str, int, int]


class MoveCatalog:
    """
    Delta rules of the four local operations.

    New operations are added by registering their deltas; apply_move and the
    proposal universe pick them up without further changes.
    """

    def __init__(self) -> None:
        """Initialize catalog with the PF, FV, FF and PV rules."""
        self._rules: dict[MoveOp, tuple[Delta, ...]] = {
            # one peak at i becomes two flats at i-1; a flat climbs from j to j+1
            MoveOp.PF: (("p", "i", 0, -1), ("f", "i", -1, 2), ("f", "j", 0, -1), ("f", "j", 1, 1)),
            # two flats at i become a peak at i; a flat climbs from j to j+1
            MoveOp.FV: (("f", "i", 0, -2), ("p", "i", 0, 1), ("f", "j", 0, -1), ("f", "j", 1, 1)),
            # a flat climbs from i to i+1 while another drops from j to j-1
            MoveOp.FF: (("f", "i", 0, -1), ("f", "i", 1, 1), ("f", "j", 0, -1), ("f", "j", -1, 1)),
            # peaks at i and j become flats at i-1 and j
            MoveOp.PV: (("p", "i", 0, -1), ("f", "i", -1, 2), ("p", "j", 0, -1), ("f", "j", 0, 2)),
        }

    def operations(self) -> list[MoveOp]:
        """Get registered operations in a fixed order."""
        return list(self._rules)

    def deltas(self, move: LocalMove) -> list[tuple[str, int, int]]:
        """
        Resolve a move into (array, index, delta) triples.

        Args:
            move: Local move

        Returns:
            Deltas with signs flipped for reverse moves
        """
        sign = move.direction.sign
        anchors = {"i": move.i, "j": move.j}
        return [
            (array, anchors[anchor] + offset, sign * delta)
            for array, anchor, offset, delta in self._rules[move.op]
        ]


# Global catalog instance
move_catalog = MoveCatalog()


def apply_move(a: BuildingSequence, move: LocalMove) -> Optional[BuildingSequence]:
    """
    Apply a local move.

    All deltas are summed before feasibility is judged, so moves whose index
    ranges overlap are handled as one change.

    Args:
        a: Current sequence
        move: Move to apply

    Returns:
        The new sequence, or None when the result is not a valid building
        sequence
    """
    deltas = move_catalog.deltas(move)
    if any(index < 0 for _, index, _ in deltas):
        return None
    size = max(a.height + 1, max(index for _, index, _ in deltas) + 1)
    flats = [a.flat(k) for k in range(size)]
    peaks = [a.peak(k) for k in range(size)]
    for array, index, delta in deltas:
        (flats if array == "f" else peaks)[index] += delta

    if min(flats) < 0 or min(peaks) < 0 or peaks[0] != 0:
        return None
    top = max((k for k in range(size) if peaks[k]), default=0)
    if any(peaks[k] == 0 for k in range(1, top + 1)):
        return None
    if any(flats[k] for k in range(top + 1, size)):
        return None

    result = BuildingSequence(tuple(flats[:top + 1]), tuple(peaks[1:top + 1]))
    if result.width != a.width or result.area != a.area:
        raise InvariantViolation(
            f"{move} changed width or area of {a}",
            move=str(move),
            sequence=str(a)
        )
    return result


def acceptance_ratio(a: BuildingSequence, a2: BuildingSequence) -> Fraction:
    """
    P(a2) / P(a) from the factors that differ between the two sequences.

    Only the heights whose counts changed, the levels directly above them and
    the top factor are evaluated.

    Args:
        a: Current sequence
        a2: Proposed sequence of the same width and area

    Returns:
        Exact ratio (the caller applies min(1, ·))
    """
    if a == a2:
        return Fraction(1)
    size = max(a.height, a2.height) + 1
    changed = [
        k for k in range(size)
        if a.flat(k) != a2.flat(k) or a.peak(k) != a2.peak(k)
    ]

    numerator, denominator = 1, 1
    for k in changed:
        flat_shift = a2.flat(k) - a.flat(k)
        peak_shift = a2.peak(k) - a.peak(k)
        for base, shift in ((2 * k + 1, flat_shift), (k * k, peak_shift)):
            if shift > 0:
                numerator *= base ** shift
            elif shift < 0:
                denominator *= base ** -shift

    levels = sorted({level for k in changed for level in (k, k + 1)})
    for level in levels:
        numerator *= blocks_service.level_factor(a2, level)
        denominator *= blocks_service.level_factor(a, level)
    numerator *= blocks_service.top_factor(a2)
    denominator *= blocks_service.top_factor(a)
    return Fraction(numerator, denominator)


def acceptance_ratio_full(a: BuildingSequence, a2: BuildingSequence) -> Fraction:
    """P(a2) / P(a) recomputed from scratch."""
    return Fraction(blocks_service.total_weight(a2), blocks_service.total_weight(a))


def initial_state(n: int, area: int) -> BuildingSequence:
    """
    Starting sequence for the chain.

    One peak at each height 1..H with H = ⌊√A⌋, then the remaining width is
    filled with flats, each placed as high as possible without overshooting
    the residual area.

    Args:
        n: Width
        area: Area

    Returns:
        A member of S(n, A)

    Raises:
        InfeasibleError: If S(n, A) is empty
    """
    if n < 0 or area < 0 or area > n * n // 4:
        raise InfeasibleError(n, area)
    top = math.isqrt(area)
    slots = n - 2 * top
    residual = area - top * top
    if slots < 0 or residual > top * slots:
        raise InfeasibleError(n, area)

    flats = [0] * (top + 1)
    for remaining in range(slots, 0, -1):
        height = max(residual - top * (remaining - 1), min(top, residual))
        flats[height] += 1
        residual -= height
    if residual != 0:
        raise InfeasibleError(n, area)
    return BuildingSequence(tuple(flats), tuple([1] * top))


def proposal_universe(n: int) -> list[LocalMove]:
    """
    Fixed proposal set for width n.

    Every registered operation in both directions with i, j in [0, ⌊n/2⌋].

    Args:
        n: Width

    Returns:
        Moves in a fixed order
    """
    bound = n // 2 + 1
    return [
        LocalMove(op, i, j, direction)
        for op in move_catalog.operations()
        for direction in Direction
        for i in range(bound)
        for j in range(bound)
    ]


def neighbours(a: BuildingSequence, n: Optional[int] = None) -> dict[LocalMove, BuildingSequence]:
    """
    Feasible moves out of a.

    Args:
        a: Current sequence
        n: Width (a.width if omitted)

    Returns:
        Map from move to resulting sequence, identity moves included
    """
    width = a.width if n is None else n
    result = {}
    for move in proposal_universe(width):
        moved = apply_move(a, move)
        if moved is not None:
            result[move] = moved
    return result


def step(state: ChainState, universe: list[LocalMove]) -> ChainState:
    """
    Advance one step.

    Holds with probability 1/2; otherwise proposes a uniform move from the
    universe and accepts with probability min(1, P(a')/P(a)).

    Args:
        state: Chain state, mutated in place
        universe: Proposal universe for the state's width

    Returns:
        The same state
    """
    state.step += 1
    rng = state.rng
    if rng.getrandbits(1) == 0:
        return state
    move = universe[uniform_below(rng, len(universe))]
    proposed = apply_move(state.sequence, move)
    if proposed is None or proposed == state.sequence:
        return state
    if bernoulli(rng, acceptance_ratio(state.sequence, proposed)):
        state.sequence = proposed
        state.accepted += 1
    return state


class MetropolisChain:
    """
    Iterator over the states of one chain.

    Example:
        chain = MetropolisChain(initial_state(8, 9), make_rng(0), total_steps=100)
        for state in chain:
            ...
    """

    def __init__(
        self,
        start: BuildingSequence,
        rng: random.Random,
        total_steps: int,
        universe: Optional[list[LocalMove]] = None
    ):
        """
        Initialize chain.

        Args:
            start: Initial sequence
            rng: The chain's own random source
            total_steps: Number of steps to run
            universe: Shared proposal universe (built for the width if None)
        """
        self.state = ChainState(sequence=start, rng=rng)
        self.universe = universe if universe is not None else proposal_universe(start.width)
        self.total_steps = total_steps

    def __iter__(self) -> Iterator[ChainState]:
        return self

    def __next__(self) -> ChainState:
        if self.state.step >= self.total_steps:
            raise StopIteration
        return step(self.state, self.universe)


def transition_matrix(n: int, area: int) -> tuple[list[BuildingSequence], list[list[Fraction]]]:
    """
    Exact transition kernel over S(n, A).

    Args:
        n: Width
        area: Area

    Returns:
        (states, matrix) with matrix[x][y] = P(states[x], states[y])
    """
    states = blocks_service.enumerate_sequences(n, area)
    index = {a: x for x, a in enumerate(states)}
    universe = proposal_universe(n)
    proposal = Fraction(1, 2 * len(universe))

    matrix = [[Fraction(0)] * len(states) for _ in states]
    for x, a in enumerate(states):
        leaving = Fraction(0)
        for move in universe:
            moved = apply_move(a, move)
            if moved is None or moved == a:
                continue
            flow = proposal * min(Fraction(1), acceptance_ratio(a, moved))
            matrix[x][index[moved]] += flow
            leaving += flow
        matrix[x][x] = 1 - leaving
    logger.debug("Transition matrix for S(%d,%d): %d states", n, area, len(states))
    return states, matrix


def exact_distances(n: int, area: int) -> Iterator[tuple[int, float]]:
    """
    Distance to stationarity at t = 0, 1, 2, ... from initial_state.

    Propagates the point mass through the kernel with numpy; no sampling
    noise. The sequence is non-increasing and never ends.
    """
    states, matrix = transition_matrix(n, area)
    kernel = np.array([[float(cell) for cell in row] for row in matrix])
    weights = np.array([float(blocks_service.total_weight(a)) for a in states])
    stationary = weights / weights.sum()

    distribution = np.zeros(len(states))
    distribution[states.index(initial_state(n, area))] = 1.0
    t = 0
    while True:
        yield t, float(0.5 * np.abs(distribution - stationary).sum())
        distribution = distribution @ kernel
        t += 1


def exact_tv_curve(n: int, area: int, steps: int, every: int = 1) -> list[tuple[int, float]]:
    """
    Exact distance to stationarity of the chain started at initial_state.

    Args:
        n: Width
        area: Area
        steps: Horizon
        every: Report spacing

    Returns:
        (t, TV) pairs for t = 0, every, 2·every, ... <= steps
    """
    return [
        (t, distance)
        for t, distance in itertools.islice(exact_distances(n, area), steps + 1)
        if t % every == 0
    ]


def exact_mixing_time(
    n: int,
    area: int,
    epsilon: float,
    every: int = 1,
    max_steps: int = 200_000
) -> Optional[int]:
    """
    First multiple of every at which the exact distance is at most epsilon.

    Args:
        n: Width
        area: Area
        epsilon: Threshold
        every: Spacing of the inspected steps
        max_steps: Last step inspected

    Returns:
        Mixing time, or None if the threshold is not reached by max_steps
    """
    for t, distance in exact_distances(n, area):
        if t > max_steps:
            return None
        if t % every == 0 and distance <= epsilon:
            return t
    return None


def starred_area(n: int) -> int:
    """
    Area at which the chain mixes slowest for width n.

    ((n - 2)/2)² for even n, ((n - 1)/2)² for odd n.
    """
    half = (n - 2) // 2 if n % 2 == 0 else (n - 1) // 2
    return half * half
