"""
Mixing-time experiments: many independent chains, visit histograms and the
total variation distance to the stationary law.
"""
import itertools
import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from app.core.config import settings
from app.core.exceptions import NotMixedError
from app.core.rng import derive_seed, make_rng
from app.models.sequence import BuildingSequence
from app.models.table import TableKind, TableMode
from app.schemas.record_schemas import MaxMixingRow, MixingRow, TvRow
from app.schemas.run_schemas import ExperimentConfig
from app.services import blocks_service, chain_service, lastfall_service


logger = logging.getLogger(__name__)

Histogram = Counter[BuildingSequence]


@dataclass(frozen=True)
class SweepPoint:
    """
    One row of a mixing sweep.

    Attributes:
        n: Width
        area: Area
        runs: Number of chains
        reference: Expected mixing time to compare against, if known
    """

    n: int
    area: int
    runs: int
    reference: Optional[int] = None

    @classmethod
    def starred(cls, n: int, runs: int, reference: Optional[int] = None) -> "SweepPoint":
        """Point at the slowest-mixing area of width n."""
        return cls(n, chain_service.starred_area(n), runs, reference)


# Reference mixing times at the slowest area: width -> (chains, steps)
REFERENCE_TIMES = {
    14: (100_000, 1_700),
    16: (100_000, 2_350),
    18: (100_000, 3_200),
    20: (100_000, 4_250),
    25: (100_000, 8_900),
    30: (100_000, 14_300),
    35: (400_000, 23_350),
    40: (500_000, 33_600),
}

DEFAULT_SWEEP = tuple(
    SweepPoint.starred(n, runs, reference) for n, (runs, reference) in REFERENCE_TIMES.items()
)

# Widths whose every area is compared, and the chains per area
ALL_AREAS_WIDTHS = tuple(range(4, 13))
ALL_AREAS_RUNS = 10_000


def displacement_total(n: int, area: int) -> int:
    """D(n, A) from a rolling weighted table."""
    table = lastfall_service.build_table(n, TableKind.WEIGHTED, TableMode.ROLLING)
    return lastfall_service.marginal(table, n, area)


def tv_distance(
    histogram: Mapping[BuildingSequence, int],
    n: int,
    area: int,
    total: Optional[int] = None
) -> Fraction:
    """
    Distance between the empirical law of the visited sequences and π.

    Unvisited sequences enter through their stationary mass
    (D - Σ_visited P) / D, so S(n, A) never has to be enumerated.

    Args:
        histogram: Chains per visited sequence
        n: Width
        area: Area
        total: D(n, A), computed when omitted

    Returns:
        Exact distance in [0, 1]
    """
    runs = sum(histogram.values())
    if runs <= 0:
        raise ValueError("histogram is empty")
    total = displacement_total(n, area) if total is None else total
    visited_mass = Fraction(0)
    deviation = Fraction(0)
    for a, hits in histogram.items():
        stationary = Fraction(blocks_service.total_weight(a), total)
        visited_mass += stationary
        deviation += abs(Fraction(hits, runs) - stationary)
    return (1 - visited_mass + deviation) / 2


def _run_chains(
    n: int,
    area: int,
    seed: int,
    indices: range,
    schedule: tuple[int, ...]
) -> list[Counter]:
    """Run chains indices and count their states at each scheduled step."""
    start = chain_service.initial_state(n, area)
    universe = chain_service.proposal_universe(n)
    snapshots: list[Counter] = [Counter() for _ in schedule]
    horizon = schedule[-1] if schedule else 0
    for index in indices:
        rng = make_rng(derive_seed(seed, index))
        chain = chain_service.MetropolisChain(start, rng, horizon, universe)
        slot = 0
        if schedule[0] == 0:
            snapshots[0][start.entries()] += 1
            slot = 1
        for state in chain:
            if slot < len(schedule) and state.step == schedule[slot]:
                snapshots[slot][state.sequence.entries()] += 1
                slot += 1
    return snapshots


def collect_histograms(cfg: ExperimentConfig, workers: Optional[int] = None) -> list[Histogram]:
    """
    Run cfg.runs chains from initial_state and histogram them per step.

    Chain i draws from make_rng(derive_seed(cfg.seed, i)), so the result
    does not depend on the number of workers.

    Args:
        cfg: Experiment configuration
        workers: Processes (settings.workers if None)

    Returns:
        One histogram per entry of cfg.schedule
    """
    workers = settings.workers if workers is None else workers
    schedule = tuple(cfg.schedule)
    if not schedule:
        return []
    logger.info(
        "Running %d chains on S(%d,%d) for %d steps with %d worker(s)",
        cfg.runs, cfg.n, cfg.area, schedule[-1], workers
    )
    if workers <= 1:
        parts = [_run_chains(cfg.n, cfg.area, cfg.seed, range(cfg.runs), schedule)]
    else:
        chunk = -(-cfg.runs // workers)
        ranges = [range(lo, min(lo + chunk, cfg.runs)) for lo in range(0, cfg.runs, chunk)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_run_chains, cfg.n, cfg.area, cfg.seed, indices, schedule)
                for indices in ranges
            ]
            parts = [future.result() for future in futures]

    merged: list[Histogram] = []
    for slot in range(len(schedule)):
        counts: Counter = Counter()
        for part in parts:
            counts.update(part[slot])
        merged.append(Counter({
            BuildingSequence.from_entries(entries): hits for entries, hits in counts.items()
        }))
    return merged


def tv_curve(cfg: ExperimentConfig, workers: Optional[int] = None) -> list[TvRow]:
    """
    Estimated distance to stationarity at each scheduled step.

    Args:
        cfg: Experiment configuration
        workers: Processes

    Returns:
        One row per scheduled step
    """
    total = displacement_total(cfg.n, cfg.area)
    rows = []
    for t, histogram in zip(cfg.schedule, collect_histograms(cfg, workers)):
        distance = tv_distance(histogram, cfg.n, cfg.area, total)
        rows.append(TvRow(t=t, tv_distance=float(distance), visited_states=len(histogram)))
    return rows


def first_crossing(curve: list[TvRow], epsilon: float) -> Optional[int]:
    """First step of the curve whose distance is at most epsilon, or None."""
    return next((row.t for row in curve if row.tv_distance <= epsilon), None)


def estimate_mixing_time(
    cfg: ExperimentConfig,
    epsilon: Optional[float] = None,
    workers: Optional[int] = None
) -> int:
    """
    Smallest scheduled step whose estimated distance is at most epsilon.

    Args:
        cfg: Experiment configuration
        epsilon: Threshold (settings.tv_epsilon if None)
        workers: Processes

    Returns:
        Mixing time estimate

    Raises:
        NotMixedError: If no scheduled step reaches the threshold
    """
    epsilon = settings.tv_epsilon if epsilon is None else epsilon
    curve = tv_curve(cfg, workers)
    mixed_at = first_crossing(curve, epsilon)
    if mixed_at is None:
        last = curve[-1].tv_distance if curve else 1.0
        raise NotMixedError(cfg.steps, epsilon, last)
    logger.info("S(%d,%d) mixed at t=%d", cfg.n, cfg.area, mixed_at)
    return mixed_at


def _round_up(steps: int, every: int) -> int:
    return -(-steps // every) * every


def search_mixing_time(
    n: int,
    area: int,
    runs: int,
    seed: int = 0,
    tv_every: Optional[int] = None,
    workers: Optional[int] = None,
    epsilon: Optional[float] = None,
    max_steps: Optional[int] = None
) -> tuple[Optional[int], int]:
    """
    Estimate the mixing time without knowing a horizon in advance.

    Starts at settings.mixing_first_horizon and doubles the horizon until
    the estimated distance reaches epsilon or max_steps is exhausted. Chain
    i always uses the same seed, so a longer run repeats the shorter one.

    Args:
        n: Width
        area: Area
        runs: Number of chains
        seed: Base seed
        tv_every: Report spacing (settings.tv_every if None)
        workers: Processes
        epsilon: Threshold
        max_steps: Step cap (settings.mixing_max_steps if None)

    Returns:
        (mixing time or None, last horizon simulated)
    """
    tv_every = settings.tv_every if tv_every is None else tv_every
    max_steps = _round_up(settings.mixing_max_steps if max_steps is None else max_steps, tv_every)
    horizon = min(_round_up(settings.mixing_first_horizon, tv_every), max_steps)
    while True:
        cfg = ExperimentConfig(n=n, area=area, steps=horizon, runs=runs, seed=seed, tv_every=tv_every)
        try:
            return estimate_mixing_time(cfg, epsilon, workers), horizon
        except NotMixedError as exc:
            if horizon >= max_steps:
                logger.warning("S(%d,%d): %s", n, area, exc.message)
                return None, horizon
            logger.info("S(%d,%d) not mixed within %d steps, doubling the horizon", n, area, horizon)
            horizon = min(2 * horizon, max_steps)


def point_mixing_time(
    n: int,
    area: int,
    runs: int,
    seed: int = 0,
    tv_every: Optional[int] = None,
    workers: Optional[int] = None,
    epsilon: Optional[float] = None,
    max_steps: Optional[int] = None,
    exact: bool = False
) -> tuple[Optional[int], int]:
    """
    Mixing time of S(n, A), sampled or from the exact kernel.

    The exact route inspects the same grid of steps (multiples of tv_every)
    as the sampled one.

    Returns:
        (mixing time or None, last step inspected)
    """
    if not exact:
        return search_mixing_time(n, area, runs, seed, tv_every, workers, epsilon, max_steps)
    tv_every = settings.tv_every if tv_every is None else tv_every
    epsilon = settings.tv_epsilon if epsilon is None else epsilon
    max_steps = settings.mixing_max_steps if max_steps is None else max_steps
    mixed_at = chain_service.exact_mixing_time(n, area, epsilon, tv_every, max_steps)
    return mixed_at, max_steps if mixed_at is None else mixed_at


def mixing_sweep(
    points: tuple[SweepPoint, ...] = DEFAULT_SWEEP,
    seed: int = 0,
    tv_every: Optional[int] = None,
    runs: Optional[int] = None,
    workers: Optional[int] = None,
    epsilon: Optional[float] = None,
    max_steps: Optional[int] = None,
    exact: bool = False
) -> list[MixingRow]:
    """
    Measure mixing times for a list of (n, A) points.

    Each point searches its own horizon; a point that has not mixed by the
    step cap is reported with an empty mixing time instead of aborting the
    sweep. Measured times are set against the points' reference times.

    Args:
        points: Sweep rows
        seed: Base seed
        tv_every: Report spacing
        runs: Override of every point's chain count
        workers: Processes
        epsilon: Threshold
        max_steps: Step cap
        exact: Use the exact kernel instead of sampled chains

    Returns:
        One row per point
    """
    rows = []
    for point in points:
        chains = runs or point.runs
        mixing_time, steps = point_mixing_time(
            point.n, point.area, chains, seed, tv_every, workers, epsilon, max_steps, exact
        )
        ratio = None
        if mixing_time is not None and point.reference:
            ratio = mixing_time / point.reference
            logger.info(
                "n=%d A=%d: measured %d steps against reference %d (ratio %.2f)",
                point.n, point.area, mixing_time, point.reference, ratio
            )
        rows.append(MixingRow(
            n=point.n,
            A=point.area,
            mixing_time=mixing_time,
            reference=point.reference,
            ratio=ratio,
            runs=None if exact else chains,
            steps=steps
        ))
    return rows


def mixing_areas(n: int) -> list[int]:
    """Areas A whose class S(n, A) holds more than one sequence."""
    return [
        area for area in range(n * n // 4 + 1)
        if len(list(itertools.islice(blocks_service.iter_sequences(n, area), 2))) > 1
    ]


def max_mixing_times(
    widths: tuple[int, ...] = ALL_AREAS_WIDTHS,
    runs: int = ALL_AREAS_RUNS,
    seed: int = 0,
    tv_every: Optional[int] = None,
    workers: Optional[int] = None,
    epsilon: Optional[float] = None,
    max_steps: Optional[int] = None,
    exact: bool = False
) -> list[MaxMixingRow]:
    """
    Slowest-mixing area of each width, compared with the starred area.

    Every area with more than one sequence is measured. An area that did not
    mix by the step cap counts as the slowest. Ties go to the starred area,
    then to the smallest area. A singleton starred class mixes at 0.

    Args:
        widths: Widths to scan
        runs: Chains per area
        seed: Base seed
        tv_every: Report spacing
        workers: Processes
        epsilon: Threshold
        max_steps: Step cap per area
        exact: Use the exact kernel instead of sampled chains

    Returns:
        One row per width
    """
    rows = []
    for n in widths:
        star = chain_service.starred_area(n)
        areas = mixing_areas(n)
        times = {
            area: point_mixing_time(n, area, runs, seed, tv_every, workers, epsilon, max_steps, exact)[0]
            for area in areas
        }
        slowest = max(
            areas,
            key=lambda area: (math.inf if times[area] is None else times[area], area == star, -area),
            default=None
        )
        row = MaxMixingRow(
            n=n,
            A=slowest,
            mixing_time=None if slowest is None else times[slowest],
            A_star=star,
            star_mixing_time=times.get(star, 0),
            areas=len(areas),
            runs=None if exact else runs
        )
        logger.info(
            "n=%d: slowest area %s (t=%s) over %d areas; A*=%d (t=%s)",
            n, row.A, row.mixing_time, row.areas, star, row.star_mixing_time
        )
        rows.append(row)
    return rows
