"""
Building-sequence algebra: weights, path counts, enumeration of S(n, A) and
the uniform top-down sequence-to-path sampler.
"""
import logging
import random
from fractions import Fraction
from typing import Iterator, Optional

from app.core.binomial import binomial
from app.core.config import settings
from app.core.exceptions import CapExceededError
from app.core.rng import random_combination
from app.models.path import MotzkinPath
from app.models.sequence import BuildingSequence


logger = logging.getLogger(__name__)


def perm_weight(a: BuildingSequence) -> int:
    """
    perm(a) = Π (2i+1)^{f_i} · Π i^{2 p_i}.

    Args:
        a: Building sequence

    Returns:
        Common weight of every path built from a
    """
    result = 1
    for i, f in enumerate(a.flats):
        result *= (2 * i + 1) ** f
    for i, p in enumerate(a.peaks, start=1):
        result *= i ** (2 * p)
    return result


def top_factor(a: BuildingSequence) -> int:
    """
    Ways to place the p_h - 1 valleys among the top flats.

    C(f_h + p_h - 1, p_h - 1); 1 for an all-flat sequence.
    """
    h = a.height
    if h == 0:
        return 1
    return binomial(a.flat(h) + a.peak(h) - 1, a.peak(h) - 1)


def level_factor(a: BuildingSequence, i: int) -> int:
    """
    Interleaving factor between heights i and i - 1, for 1 <= i <= h.

    C(p_i + f_{i-1}, f_{i-1}), times C(p_i + f_{i-1} + p_{i-1} - 1, p_{i-1} - 1)
    when i >= 2. Outside [1, h] the factor is 1.
    """
    if i < 1 or i > a.height:
        return 1
    p, f = a.peak(i), a.flat(i - 1)
    factor = binomial(p + f, f)
    if i >= 2:
        below = a.peak(i - 1)
        factor *= binomial(p + f + below - 1, below - 1)
    return factor


def path_count(a: BuildingSequence) -> int:
    """
    m(a): number of distinct paths with building sequence a.

    Args:
        a: Building sequence

    Returns:
        Product of the top factor and every level factor; 1 when h = 0
    """
    result = top_factor(a)
    for i in range(1, a.height + 1):
        result *= level_factor(a, i)
    return result


def total_weight(a: BuildingSequence) -> int:
    """P(a) = m(a) · perm(a), the number of permutations mapping to a."""
    return path_count(a) * perm_weight(a)


def iter_sequences(n: int, area: int) -> Iterator[BuildingSequence]:
    """
    Yield every member of S(n, A) in order of (h, f_0, p_1, f_1, ...).

    Args:
        n: Width
        area: Area

    Yields:
        Building sequences
    """
    if n < 0 or area < 0:
        return
    for h in range(n // 2 + 1):
        if 2 * h > n or h * h > area:
            break
        yield from _iter_with_height(n, area, h)


def _iter_with_height(n: int, area: int, h: int) -> Iterator[BuildingSequence]:
    flats = [0] * (h + 1)
    peaks = [0] * h

    def place_flat(i: int, width_left: int, area_left: int) -> Iterator[BuildingSequence]:
        if i == h:
            if h * width_left == area_left and (h > 0 or area_left == 0):
                flats[h] = width_left
                yield BuildingSequence(tuple(flats), tuple(peaks))
            return
        for f in range(width_left + 1):
            rest_width = width_left - f
            rest_area = area_left - i * f
            # heights i+1..h still need one peak each
            if rest_width < 2 * (h - i) or rest_area < h * h - i * i:
                break
            if rest_area > h * rest_width:
                continue
            flats[i] = f
            yield from place_peak(i + 1, rest_width, rest_area)

    def place_peak(i: int, width_left: int, area_left: int) -> Iterator[BuildingSequence]:
        p = 1
        while 2 * p <= width_left:
            rest_width = width_left - 2 * p
            rest_area = area_left - (2 * i - 1) * p
            if rest_width < 2 * (h - i) or rest_area < h * h - i * i:
                break
            if rest_area <= h * rest_width:
                peaks[i - 1] = p
                yield from place_flat(i, rest_width, rest_area)
            p += 1

    yield from place_flat(0, n, area)


def enumerate_sequences(n: int, area: int, cap: Optional[int] = None) -> list[BuildingSequence]:
    """
    Materialize S(n, A).

    Args:
        n: Width
        area: Area
        cap: Maximum number of sequences (settings.enumeration_cap if None)

    Returns:
        All building sequences of width n and area A, ordered by
        (h, f_0, p_1, f_1, ...)

    Raises:
        CapExceededError: If S(n, A) has more than cap members
    """
    cap = settings.enumeration_cap if cap is None else cap
    result = []
    for a in iter_sequences(n, area):
        result.append(a)
        if len(result) > cap:
            raise CapExceededError(n, area, cap)
    return result


def sequence_weights(n: int, area: int) -> dict[BuildingSequence, Fraction]:
    """
    The law π(a) = P(a) / Σ P over S(n, A).

    Args:
        n: Width
        area: Area

    Returns:
        Exact probabilities keyed by sequence, empty if S(n, A) is empty
    """
    weights = {a: total_weight(a) for a in enumerate_sequences(n, area)}
    total = sum(weights.values())
    return {a: Fraction(w, total) for a, w in weights.items()}


def _place(rng: random.Random, items: list[str], extra: int, token: str) -> list[str]:
    """Insert `extra` copies of token among items at a uniform set of slots."""
    total = len(items) + extra
    chosen = set(random_combination(rng, total, extra))
    source = iter(items)
    return [token if slot in chosen else next(source) for slot in range(total)]


def _close_excursions(tokens: list[str], groups: int) -> list[str]:
    """Split tokens at valley markers into `groups` excursions U...D."""
    excursions = []
    current: list[str] = []
    for token in tokens:
        if token == "|":
            excursions.append("U" + "".join(current) + "D")
            current = []
        else:
            current.append(token)
    excursions.append("U" + "".join(current) + "D")
    assert len(excursions) == groups
    return excursions


def sample_path_for_sequence(a: BuildingSequence, rng: random.Random) -> MotzkinPath:
    """
    Draw uniformly one of the m(a) paths with building sequence a.

    Works top-down: at height h the p_h - 1 valleys are placed among the
    f_h flats; then at each lower height the f_{i-1} flats are placed among
    the p_i excursions, and the p_{i-1} - 1 valleys among the result, each a
    uniform random combination.

    Args:
        a: Building sequence
        rng: Random source

    Returns:
        Uniformly drawn path
    """
    h = a.height
    if h == 0:
        return MotzkinPath("H" * a.flat(0))

    level = _place(rng, ["H"] * a.flat(h), a.peak(h) - 1, "|")
    excursions = _close_excursions(level, a.peak(h))
    for i in range(h, 1, -1):
        level = _place(rng, excursions, a.flat(i - 1), "H")
        level = _place(rng, level, a.peak(i - 1) - 1, "|")
        excursions = _close_excursions(level, a.peak(i - 1))
    ground = _place(rng, excursions, a.flat(0), "H")
    return MotzkinPath("".join(ground))


def parse_sequence(text: str) -> BuildingSequence:
    """Parse "f0;p1,f1;..." or the interleaved comma form "f0,p1,f1,..."."""
    return BuildingSequence.parse(text)


def format_sequence(a: BuildingSequence) -> str:
    """Serialize as "f0;p1,f1;...;ph,fh"."""
    return str(a)
