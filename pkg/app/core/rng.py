"""
Random-source helpers shared by the samplers.

Every sampler takes an injected ``random.Random``; nothing here touches the
module-level generator.
"""
import hashlib
import random
from fractions import Fraction


def make_rng(seed: int) -> random.Random:
    """
    Create an independent random source.

    Args:
        seed: Integer seed

    Returns:
        Seeded generator
    """
    return random.Random(seed)


def derive_seed(seed: int, index: int) -> int:
    """
    Derive the seed of task ``index`` from a base seed.

    The rule is sha256("<seed>:<index>") read as a 64-bit integer, so that
    task seeds do not depend on how tasks are scheduled.

    Args:
        seed: Base seed
        index: Task (chain or draw) index

    Returns:
        Derived seed
    """
    digest = hashlib.sha256(f"{seed}:{index}".encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big")


def uniform_below(rng: random.Random, bound: int) -> int:
    """
    Draw an integer uniformly from [0, bound).

    Rejection sampling on bit-strings of bound.bit_length() bits; exact for
    arbitrarily large bounds.

    Args:
        rng: Random source
        bound: Exclusive upper bound, positive

    Returns:
        Uniform integer
    """
    if bound <= 0:
        raise ValueError("bound must be positive")
    bits = bound.bit_length()
    while True:
        candidate = rng.getrandbits(bits)
        if candidate < bound:
            return candidate


def bernoulli(rng: random.Random, ratio: Fraction) -> bool:
    """
    Accept with probability min(1, ratio), exactly.

    Args:
        rng: Random source
        ratio: Non-negative rational

    Returns:
        True on acceptance
    """
    if ratio >= 1:
        return True
    if ratio <= 0:
        return False
    return uniform_below(rng, ratio.denominator) < ratio.numerator


def random_combination(rng: random.Random, total: int, k: int) -> list[int]:
    """
    Choose k distinct indices from range(total) uniformly.

    Partial Fisher-Yates over an index array.

    Args:
        rng: Random source
        total: Population size
        k: Number of indices, 0 <= k <= total

    Returns:
        Sorted list of chosen indices
    """
    if k < 0 or k > total:
        raise ValueError(f"cannot choose {k} of {total}")
    pool = list(range(total))
    for slot in range(k):
        pick = slot + uniform_below(rng, total - slot)
        pool[slot], pool[pick] = pool[pick], pool[slot]
    return sorted(pool[:k])
