"""
Cross-check suite: brute force against both dynamic programs, the
building-sequence sums, sampler roundtrips and the chain's kernel.
"""
import logging
import math
import time
from collections import Counter, deque
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from app.core.config import settings
from app.core.exceptions import AppException, VerificationError
from app.core.rng import derive_seed, make_rng
from app.models.sequence import BuildingSequence
from app.models.table import TableKind, TableMode
from app.schemas.record_schemas import CheckResult, ScalingRow
from app.services import (
    blocks_service,
    chain_service,
    lastfall_service,
    path_service,
    permutation_service,
    topdown_service
)


logger = logging.getLogger(__name__)

WORKED_PATH = "UUHDHUHDDH"
WORKED_SEQUENCE = (1, 1, 1, 2, 2)

Check = Callable[[int, int], Optional[str]]


def check_oracle(max_n: int, seed: int) -> Optional[str]:
    """D(n, ·) equals the brute-force displacement histogram."""
    limit = min(max_n, settings.brute_force_max_n)
    table = lastfall_service.build_table(limit, TableKind.WEIGHTED, TableMode.ROLLING)
    for n in range(limit + 1):
        expected = permutation_service.brute_force_displacement_table(n)
        row = lastfall_service.row(table, n)
        got = {d: count for d, count in enumerate(row) if count}
        if got != expected:
            return f"n={n}: table {got} != brute force {expected}"
    return None


def check_backends(max_n: int, seed: int) -> Optional[str]:
    """Last-fall rows, top-down rows and Σ P(a) agree for both kinds."""
    for kind in TableKind:
        table = lastfall_service.build_table(max_n, kind, TableMode.ROLLING)
        topdown = topdown_service.TopDownTable(kind)
        for n in range(max_n + 1):
            row = lastfall_service.row(table, n)
            other = topdown_service.topdown_row(topdown, n)
            if row != other:
                return f"{kind.value} n={n}: last-fall {row} != top-down {other}"
            weight = blocks_service.total_weight if kind is TableKind.WEIGHTED else blocks_service.path_count
            sums = [
                sum(weight(a) for a in blocks_service.iter_sequences(n, area))
                for area in range(len(row))
            ]
            if row != sums:
                return f"{kind.value} n={n}: last-fall {row} != sequence sums {sums}"
    return None


def check_row_sums(max_n: int, seed: int) -> Optional[str]:
    """
    Σ_d D(n, d) = n! and Σ_A M(n, A) counts every path.

    Runs under its own bound (settings.row_sum_max_n from the CLI); path
    enumeration stops at width 14.
    """
    weighted = lastfall_service.build_table(max_n, TableKind.WEIGHTED, TableMode.ROLLING)
    for n, total in enumerate(lastfall_service.motzkin_numbers(weighted)):
        if total != math.factorial(n):
            return f"n={n}: Σ D = {total} != {math.factorial(n)}"
    limit = min(max_n, 14)
    unweighted = lastfall_service.build_table(limit, TableKind.UNWEIGHTED, TableMode.ROLLING)
    for n, total in enumerate(lastfall_service.motzkin_numbers(unweighted)):
        enumerated = sum(1 for _ in path_service.enumerate_paths(n))
        if total != enumerated:
            return f"n={n}: Σ M = {total} != {enumerated} enumerated paths"
    return None


def check_worked_example(max_n: int, seed: int) -> Optional[str]:
    """Weight 1200, m = 18 and P = 21600 for the width-10 example."""
    path = path_service.validate(WORKED_PATH)
    a = BuildingSequence.from_entries(WORKED_SEQUENCE)
    observed = (
        path_service.weight(path),
        path_service.path_to_sequence(path),
        blocks_service.path_count(a),
        blocks_service.total_weight(a),
    )
    if observed != (1200, a, 18, 21600):
        return f"observed {observed}"
    return None


def check_multiplicities(max_n: int, seed: int) -> Optional[str]:
    """Each sequence is hit by exactly m(a) paths, each of weight perm(a)."""
    for n in range(min(max_n, 10) + 1):
        hits: Counter = Counter()
        for path in path_service.enumerate_paths(n):
            a = path_service.path_to_sequence(path)
            if blocks_service.perm_weight(a) != path_service.weight(path):
                return f"{path}: perm({a}) != weight"
            hits[a] += 1
        for a, count in hits.items():
            if count != blocks_service.path_count(a):
                return f"{a}: {count} paths but m = {blocks_service.path_count(a)}"
    return None


def check_roundtrips(max_n: int, seed: int) -> Optional[str]:
    """Samplers land back on the path or sequence they were given."""
    for n in range(min(max_n, 10) + 1):
        for index, path in enumerate(path_service.enumerate_paths(n)):
            rng = make_rng(derive_seed(seed, index))
            pi = permutation_service.sample_perm_for_path(path, rng)
            if permutation_service.perm_to_path(pi) != path:
                return f"{path}: sampled {pi} maps elsewhere"
            if permutation_service.displacement(pi) != 2 * path_service.path_stats(path).area:
                return f"{path}: displacement of {pi} is not twice the area"
        for area in range(n * n // 4 + 1):
            for a in blocks_service.iter_sequences(n, area):
                drawn = blocks_service.sample_path_for_sequence(a, make_rng(derive_seed(seed, area)))
                if path_service.path_to_sequence(drawn) != a:
                    return f"{a}: sampled {drawn} has another sequence"
    return None


def check_connectivity(max_n: int, seed: int) -> Optional[str]:
    """Local moves connect every S(n, A) from the initial state."""
    for n in range(min(max_n, 10) + 1):
        for area in range(n * n // 4 + 1):
            states = set(blocks_service.enumerate_sequences(n, area))
            reached = reachable(chain_service.initial_state(n, area))
            if reached != states:
                return f"S({n},{area}): reached {len(reached)} of {len(states)}"
    return None


def check_detailed_balance(max_n: int, seed: int) -> Optional[str]:
    """π(a) P(a, b) = π(b) P(b, a) exactly on S(6, 4)."""
    states, matrix = chain_service.transition_matrix(6, 4)
    weights = [blocks_service.total_weight(a) for a in states]
    for x in range(len(states)):
        if sum(matrix[x]) != 1:
            return f"row {states[x]} does not sum to 1"
        for y in range(len(states)):
            if weights[x] * matrix[x][y] != weights[y] * matrix[y][x]:
                return f"flux {states[x]} -> {states[y]} unbalanced"
    return None


def check_stationarity(max_n: int, seed: int) -> Optional[str]:
    """π P = π exactly for every S(n, A) with n <= min(max_n, 8)."""
    for n in range(min(max_n, 8) + 1):
        for area in range(n * n // 4 + 1):
            gap = stationarity_gap(n, area)
            if gap != 0:
                return f"S({n},{area}): |πP - π| reaches {gap}"
    return None


CHECKS: dict[str, Check] = {
    "oracle": check_oracle,
    "backends": check_backends,
    "row_sums": check_row_sums,
    "worked_example": check_worked_example,
    "multiplicities": check_multiplicities,
    "roundtrips": check_roundtrips,
    "connectivity": check_connectivity,
    "detailed_balance": check_detailed_balance,
    "stationarity": check_stationarity,
}


def reachable(start: BuildingSequence) -> set[BuildingSequence]:
    """Breadth-first closure of start under feasible moves."""
    width = start.width
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for moved in chain_service.neighbours(current, width).values():
            if moved not in seen:
                seen.add(moved)
                queue.append(moved)
    return seen


def run_checks(
    max_n: int,
    seed: int = 0,
    names: Optional[list[str]] = None,
    row_sum_max_n: Optional[int] = None
) -> list[CheckResult]:
    """
    Run the named checks (all by default).

    An exception raised inside a check is reported as its failure.

    Args:
        max_n: Largest width exercised
        seed: Base seed for the sampler checks
        names: Subset of CHECKS to run
        row_sum_max_n: Width bound of the row_sums check (max_n if None)

    Returns:
        One result per check
    """
    results = []
    for name in names or list(CHECKS):
        started = time.perf_counter()
        try:
            bound = row_sum_max_n if name == "row_sums" and row_sum_max_n is not None else max_n
            problem = CHECKS[name](bound, seed)
        except AppException as exc:
            problem = f"{exc.error_code}: {exc.message}"
        elapsed = time.perf_counter() - started
        if problem is None:
            logger.info("check %s passed (%.2fs)", name, elapsed)
        else:
            logger.error("check %s failed: %s", name, problem)
        results.append(CheckResult(name=name, passed=problem is None, detail=problem or ""))
    return results


def verify(max_n: int, seed: int = 0, row_sum_max_n: Optional[int] = None) -> list[CheckResult]:
    """
    Run every check and fail loudly.

    Raises:
        VerificationError: If any check fails
    """
    results = run_checks(max_n, seed, row_sum_max_n=row_sum_max_n)
    failed = [result.name for result in results if not result.passed]
    if failed:
        raise VerificationError(failed)
    return results


def scaling_report(widths: Optional[list[int]] = None) -> tuple[list[ScalingRow], float]:
    """
    Time rolling weighted builds and fit runtime ~ n^k on a log-log scale.

    Args:
        widths: Widths to time (settings.scaling_widths if None)

    Returns:
        (rows, fitted exponent k)
    """
    widths = settings.scaling_widths if widths is None else widths
    rows = []
    for n in widths:
        started = time.perf_counter()
        lastfall_service.build_table(n, TableKind.WEIGHTED, TableMode.ROLLING)
        rows.append(ScalingRow(n=n, seconds=time.perf_counter() - started))
    usable = [row for row in rows if row.n > 0 and row.seconds > 0]
    if len(usable) < 2:
        return rows, float("nan")
    slope, _ = np.polyfit(
        np.log([row.n for row in usable]),
        np.log([row.seconds for row in usable]),
        1
    )
    logger.info("Runtime grows like n^%.2f over widths %s", slope, widths)
    fitted = [row.model_copy(update={"fitted_exponent": float(slope)}) for row in rows]
    return fitted, float(slope)


def stationarity_gap(n: int, area: int) -> Fraction:
    """max |πP - π| over S(n, A) for the exact kernel; 0 when π is stationary."""
    states, matrix = chain_service.transition_matrix(n, area)
    law = blocks_service.sequence_weights(n, area)
    pi = [law[a] for a in states]
    moved = [sum(pi[x] * matrix[x][y] for x in range(len(states))) for y in range(len(states))]
    return max((abs(u - v) for u, v in zip(moved, pi)), default=Fraction(0))
