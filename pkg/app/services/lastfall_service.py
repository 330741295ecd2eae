"""
Last-fall dynamic program for M(n, A) and D(n, d), and backtrace sampling.

State (n, A, l): width n, area A, last fall (trailing run of D moves) of
length l. A path of state (n, A, l) arises from a shorter one by inserting
either a flat at height l inside the last fall (predecessor (n-1, A-l, l')
with l' >= l) or a peak topped at height l (predecessor
(n-2, A-2l+1, l') with l' >= l-1, only for l >= 1). In the weighted table the
flat contributes a factor 2l+1 and the peak l².

Each layer n is stored as rows of prefix sums over l, one row per area:
rows[A][l] = Σ_{l' <= l} value(n, A, l').
"""
import bisect
import logging
import random
import time
from typing import Optional

from app.core.exceptions import EmptyClassError, OutOfRangeError, WrongModeError
from app.core.rng import uniform_below
from app.models.path import MotzkinPath
from app.models.table import TableKind, TableMode


logger = logging.getLogger(__name__)

Layer = list[list[int]]


def max_area(n: int) -> int:
    """Largest area of a width-n path, ⌊n²/4⌋."""
    return n * n // 4


def _suffix(layer: Optional[Layer], area: int, lo: int) -> int:
    """Σ_{l' >= lo} value(area, l') of a layer; out-of-range reads as 0."""
    if layer is None or area < 0 or area >= len(layer):
        return 0
    row = layer[area]
    if lo >= len(row):
        return 0
    return row[-1] - (row[lo - 1] if lo > 0 else 0)


class LastFallTable:
    """
    Count table of the last-fall recurrence.

    Marginals of every built width are kept in both modes; prefix-sum layers
    are kept for every width in full mode and for the two newest widths in
    rolling mode.
    """

    def __init__(self, kind: TableKind = TableKind.WEIGHTED, mode: TableMode = TableMode.ROLLING):
        """
        Initialize an empty table.

        Args:
            kind: Unweighted (M) or weighted (D)
            mode: Rolling or full memory mode
        """
        self.kind = kind
        self.mode = mode
        self.width = -1
        self._layers: dict[int, Layer] = {}
        self._marginals: list[list[int]] = []

    @property
    def weighted(self) -> bool:
        """Whether the table counts permutations rather than paths."""
        return self.kind is TableKind.WEIGHTED

    def extend(self, n: int) -> "LastFallTable":
        """
        Build layers up to width n.

        Args:
            n: Target width

        Returns:
            The table itself
        """
        while self.width < n:
            started = time.perf_counter()
            width = self.width + 1
            layer = self._compute_layer(width)
            self._layers[width] = layer
            self._marginals.append([row[-1] for row in layer])
            self.width = width
            if self.mode is TableMode.ROLLING:
                self._layers.pop(width - 2, None)
            logger.debug(
                "Layer n=%d (%s) built in %.3fs",
                width, self.kind.value, time.perf_counter() - started
            )
        return self

    def _compute_layer(self, n: int) -> Layer:
        if n == 0:
            return [[1]]
        prev1 = self._layers.get(n - 1)
        prev2 = self._layers.get(n - 2)
        weighted = self.weighted
        top = n // 2
        rows: Layer = []
        for area in range(max_area(n) + 1):
            row = []
            running = 0
            for last in range(top + 1):
                value = _suffix(prev1, area - last, last)
                if weighted:
                    value *= 2 * last + 1
                if last >= 1:
                    peak = _suffix(prev2, area - 2 * last + 1, last - 1)
                    if weighted:
                        peak *= last * last
                    value += peak
                running += value
                row.append(running)
            rows.append(row)
        return rows

    def layer(self, n: int) -> Layer:
        """
        Get the prefix-sum rows of width n.

        Raises:
            OutOfRangeError: If n was never built or was evicted
        """
        self._check_width(n)
        if n not in self._layers:
            raise OutOfRangeError(
                f"layer n={n} is not retained in {self.mode.value} mode",
                n=n,
                mode=self.mode.value
            )
        return self._layers[n]

    def marginal_row(self, n: int) -> list[int]:
        """
        Marginals over l for width n, indexed by area.

        Raises:
            OutOfRangeError: If n exceeds the built width
        """
        self._check_width(n)
        return self._marginals[n]

    def _check_width(self, n: int) -> None:
        if n < 0 or n > self.width:
            raise OutOfRangeError(
                f"width {n} outside the built range 0..{self.width}",
                n=n,
                built=self.width
            )


def build_table(
    n: int,
    kind: TableKind = TableKind.WEIGHTED,
    mode: TableMode = TableMode.ROLLING
) -> LastFallTable:
    """
    Fill the last-fall table up to width n.

    Args:
        n: Width, n >= 0
        kind: Unweighted (M) or weighted (D)
        mode: Rolling (two layers) or full (every layer)

    Returns:
        Built table
    """
    started = time.perf_counter()
    table = LastFallTable(kind, mode).extend(n)
    logger.info(
        "Built %s table to n=%d in %s mode (%.2fs)",
        kind.value, n, mode.value, time.perf_counter() - started
    )
    return table


def marginal(table: LastFallTable, n: int, area: int) -> int:
    """
    M(n, A) or D(n, d): the sum over all last-fall lengths.

    Args:
        table: Built table
        n: Width
        area: Area (or d for the weighted table)

    Returns:
        Count, 0 for areas outside [0, ⌊n²/4⌋]

    Raises:
        OutOfRangeError: If n exceeds the built width
    """
    row = table.marginal_row(n)
    if area < 0 or area >= len(row):
        return 0
    return row[area]


def row(table: LastFallTable, n: int) -> list[int]:
    """Copy of the marginal row of width n, indexed by area."""
    return list(table.marginal_row(n))


def prefix(table: LastFallTable, n: int, area: int, last: int) -> int:
    """
    SM(n, A, l) = Σ_{l' <= l} value(n, A, l').

    Raises:
        OutOfRangeError: If the layer is not retained
    """
    layer = table.layer(n)
    if area < 0 or area >= len(layer) or last < 0:
        return 0
    cells = layer[area]
    return cells[min(last, len(cells) - 1)]


def value(table: LastFallTable, n: int, area: int, last: int) -> int:
    """
    Point value M(n, A, l) recovered from adjacent prefix sums.

    Raises:
        OutOfRangeError: If the layer is not retained
    """
    if last < 0 or last > n // 2:
        return 0
    return prefix(table, n, area, last) - prefix(table, n, area, last - 1)


def motzkin_numbers(table: LastFallTable) -> list[int]:
    """Σ_A of each built row (Motzkin numbers for M, n! for D)."""
    return [sum(table.marginal_row(n)) for n in range(table.width + 1)]


def sample_path(table: LastFallTable, n: int, area: int, rng: random.Random) -> MotzkinPath:
    """
    Sample a path of width n and area A by retracing the table.

    Uniform for an unweighted table; proportional to the path weight for a
    weighted one. Moves are emitted right to left.

    Args:
        table: Table built in full mode to width >= n
        n: Width
        area: Area
        rng: Random source

    Returns:
        Sampled path

    Raises:
        WrongModeError: If the table is rolling
        OutOfRangeError: If n exceeds the built width
        EmptyClassError: If no path of width n and area A exists
    """
    if table.mode is not TableMode.FULL:
        raise WrongModeError(TableMode.FULL.value, table.mode.value)
    total = marginal(table, n, area)
    if total == 0:
        raise EmptyClassError(n, area)

    weighted = table.weighted
    x = uniform_below(rng, total)
    cells = table.layer(n)[area]
    last = bisect.bisect_right(cells, x)
    x -= cells[last - 1] if last > 0 else 0

    emitted: list[str] = []
    drop = 0
    while n > 0:
        # Invariant: 0 <= x < value(n, area, last) and the last `drop` moves
        # of the current path were already emitted.
        emitted.append("D" * (last - drop))
        flat_weight = 2 * last + 1 if weighted else 1
        flat_total = flat_weight * _suffix(table.layer(n - 1), area - last, last)
        if x < flat_total:
            emitted.append("H")
            x //= flat_weight
            lo = last
            n, area, drop = n - 1, area - last, last
        else:
            x -= flat_total
            x //= last * last if weighted else 1
            emitted.append("U")
            lo = last - 1
            n, area, drop = n - 2, area - 2 * last + 1, last - 1
        cells = table.layer(n)[area]
        base = cells[lo - 1] if lo > 0 else 0
        last = bisect.bisect_right(cells, x + base, lo)
        x = x + base - (cells[last - 1] if last > 0 else 0)

    return MotzkinPath("".join(reversed("".join(emitted))))
