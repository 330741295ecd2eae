"""
Top-down dynamic program over building-sequence levels.

count(n, A, h, p) is the number of paths of width n and area A whose top
height is h, with p_h = p and no flat at height h. A level chooses its flats
f and the peak count p' of the level below; the interleaving factors are
C(p + f, f) and C(p + f + p' - 1, p' - 1). The weighted kind multiplies in
h^{2p} for the peaks and (2h - 1)^f for the flats one level down.
"""
import logging
from functools import lru_cache

from app.core.binomial import binomial
from app.models.table import TableKind


logger = logging.getLogger(__name__)


class TopDownTable:
    """
    Memoized evaluator of the top-down recursion for one table kind.

    Entries are computed on demand and cached for the lifetime of the
    instance.
    """

    def __init__(self, kind: TableKind = TableKind.UNWEIGHTED):
        """
        Initialize evaluator.

        Args:
            kind: Unweighted (M) or weighted (D)
        """
        self.kind = kind
        self._count = lru_cache(maxsize=None)(self._evaluate)

    @property
    def weighted(self) -> bool:
        """Whether entries count permutations rather than paths."""
        return self.kind is TableKind.WEIGHTED

    def count(self, n: int, area: int, h: int, p: int) -> int:
        """
        Entry (n, A, h, p); out-of-range arguments read as 0.

        Args:
            n: Width
            area: Area
            h: Top height
            p: Number of peaks at height h

        Returns:
            Count (or weighted count)
        """
        if n < 0 or area < 0 or h < 0 or p < 0:
            return 0
        if h == 0:
            return 1 if n == 0 and area == 0 and p == 0 else 0
        return self._count(n, area, h, p)

    def _evaluate(self, n: int, area: int, h: int, p: int) -> int:
        total = 0
        for f in range(n - 2 * p + 1):
            rest_n = n - 2 * p - f
            rest_area = area - (2 * h - 1) * p - (h - 1) * f
            if rest_area < 0:
                break
            if h == 1:
                # ground level: nothing may remain below
                level = binomial(p + f, f) if rest_n == 0 and rest_area == 0 else 0
            else:
                level = 0
                for below in range(1, rest_n // 2 + 1):
                    inner = self.count(rest_n, rest_area, h - 1, below)
                    if inner:
                        level += binomial(p + f, f) * binomial(p + f + below - 1, below - 1) * inner
            if level and self.weighted:
                level *= h ** (2 * p) * (2 * h - 1) ** f
            total += level
        return total

    def marginal(self, n: int, area: int) -> int:
        """
        Σ_h count(n, A, h + 1, 0): paths of any maximum height.

        Args:
            n: Width
            area: Area (or d for the weighted kind)

        Returns:
            M(n, A) or D(n, d)
        """
        if n < 0 or area < 0:
            return 0
        return sum(self.count(n, area, h + 1, 0) for h in range(n // 2 + 1))

    def cache_size(self) -> int:
        """Number of memoized entries."""
        return self._count.cache_info().currsize


def topdown_count(n: int, area: int, h: int, p: int, kind: TableKind = TableKind.UNWEIGHTED) -> int:
    """
    One-off evaluation of count(n, A, h, p).

    Args:
        n: Width
        area: Area
        h: Top height
        p: Peaks at height h
        kind: Table kind

    Returns:
        Entry value
    """
    return TopDownTable(kind).count(n, area, h, p)


def topdown_marginal(n: int, area: int, kind: TableKind = TableKind.UNWEIGHTED) -> int:
    """
    One-off evaluation of the height-wrapped marginal.

    Args:
        n: Width
        area: Area (or d)
        kind: Table kind

    Returns:
        M(n, A) or D(n, d)
    """
    return TopDownTable(kind).marginal(n, area)


def topdown_row(table: TopDownTable, n: int) -> list[int]:
    """
    Marginals for every area 0..⌊n²/4⌋ of width n.

    Args:
        table: Shared evaluator (keeps its cache between rows)
        n: Width

    Returns:
        Row indexed by area
    """
    row = [table.marginal(n, area) for area in range(n * n // 4 + 1)]
    logger.debug("Top-down %s row n=%d (%d cached entries)", table.kind.value, n, table.cache_size())
    return row
