"""
Pascal triangle of exact binomial coefficients, grown on demand.
"""
import logging
import threading


logger = logging.getLogger(__name__)


class PascalTriangle:
    """
    Rows of arbitrary-precision binomial coefficients.

    Rows are appended when a larger n is requested and never modified
    afterwards, so readers can share one instance.
    """

    def __init__(self, rows: int = 0):
        """
        Initialize triangle.

        Args:
            rows: Highest row index built eagerly
        """
        self._rows: list[list[int]] = [[1]]
        self._lock = threading.Lock()
        self.ensure(rows)

    def ensure(self, n: int) -> None:
        """
        Make sure row n exists.

        Args:
            n: Row index
        """
        if n < len(self._rows):
            return
        with self._lock:
            while len(self._rows) <= n:
                last = self._rows[-1]
                row = [1]
                row.extend(last[k - 1] + last[k] for k in range(1, len(last)))
                row.append(1)
                self._rows.append(row)
            logger.debug("Pascal triangle extended to row %d", n)

    def binomial(self, n: int, k: int) -> int:
        """
        Get C(n, k).

        Args:
            n: Row index
            k: Column index

        Returns:
            The coefficient, or 0 when k < 0, k > n or n < 0
        """
        if n < 0 or k < 0 or k > n:
            return 0
        if n >= len(self._rows):
            self.ensure(n)
        return self._rows[n][k]

    def size(self) -> int:
        """Get number of rows built."""
        return len(self._rows)


# Global triangle instance
pascal = PascalTriangle(rows=64)


def binomial(n: int, k: int) -> int:
    """
    Shortcut for pascal.binomial.

    Args:
        n: Row index
        k: Column index

    Returns:
        C(n, k) from the shared triangle
    """
    return pascal.binomial(n, k)
