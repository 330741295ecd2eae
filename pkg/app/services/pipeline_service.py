"""
End-to-end samplers: uniform permutations of a given total displacement and
batches of seeded draws.
"""
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, TypeVar

from app.core.config import settings
from app.core.rng import derive_seed, make_rng
from app.models.path import MotzkinPath
from app.models.permutation import Permutation
from app.models.sequence import BuildingSequence
from app.models.table import TableKind
from app.services import blocks_service, lastfall_service, permutation_service
from app.services.lastfall_service import LastFallTable


logger = logging.getLogger(__name__)

T = TypeVar("T")


def sample_permutation(table: LastFallTable, n: int, d: int, rng: random.Random) -> Permutation:
    """
    Uniform permutation of size n with total displacement 2d.

    Draws a path proportionally to its weight from a weighted full table,
    then a uniform permutation of that path.

    Args:
        table: Weighted table in full mode, built to width >= n
        n: Size
        d: Half the total displacement
        rng: Random source

    Returns:
        Uniform member of {π : Σ|i - π(i)| = 2d}

    Raises:
        ValueError: If the table is unweighted
        WrongModeError: If the table is rolling
        EmptyClassError: If no such permutation exists
    """
    if table.kind is not TableKind.WEIGHTED:
        raise ValueError("permutation sampling needs a weighted table")
    path = lastfall_service.sample_path(table, n, d, rng)
    return permutation_service.sample_perm_for_path(path, rng)


def sample_permutation_for_sequence(a: BuildingSequence, rng: random.Random) -> Permutation:
    """
    Uniform permutation among the P(a) mapping to building sequence a.

    Args:
        a: Building sequence, e.g. a state reached by the chain
        rng: Random source

    Returns:
        Permutation whose path has building sequence a
    """
    path = blocks_service.sample_path_for_sequence(a, rng)
    return permutation_service.sample_perm_for_path(path, rng)


def draw_many(
    draw: Callable[[random.Random], T],
    count: int,
    seed: int,
    threads: Optional[int] = None
) -> list[T]:
    """
    Run `count` independent draws.

    Draw k uses make_rng(derive_seed(seed, k)), so the output is the same
    for any number of threads.

    Args:
        draw: Sampler taking a random source
        count: Number of draws
        seed: Base seed
        threads: Worker threads (settings.workers if None)

    Returns:
        Draws in index order
    """
    threads = settings.workers if threads is None else threads

    def one(index: int) -> T:
        return draw(make_rng(derive_seed(seed, index)))

    if threads <= 1 or count <= 1:
        return [one(index) for index in range(count)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(one, range(count)))


def sample_paths(
    table: LastFallTable,
    n: int,
    area: int,
    count: int,
    seed: int,
    threads: Optional[int] = None
) -> list[MotzkinPath]:
    """Seeded batch of backtrace path draws."""
    logger.info("Drawing %d path(s) of width %d and area %d", count, n, area)
    return draw_many(lambda rng: lastfall_service.sample_path(table, n, area, rng), count, seed, threads)


def sample_permutations(
    table: LastFallTable,
    n: int,
    d: int,
    count: int,
    seed: int,
    threads: Optional[int] = None
) -> list[Permutation]:
    """Seeded batch of uniform permutations with displacement 2d."""
    logger.info("Drawing %d permutation(s) of size %d with displacement %d", count, n, 2 * d)
    return draw_many(lambda rng: sample_permutation(table, n, d, rng), count, seed, threads)


def sample_sequence_paths(
    a: BuildingSequence,
    count: int,
    seed: int,
    threads: Optional[int] = None
) -> list[MotzkinPath]:
    """Seeded batch of uniform paths with building sequence a."""
    return draw_many(lambda rng: blocks_service.sample_path_for_sequence(a, rng), count, seed, threads)
