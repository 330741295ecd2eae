"""
Permutation value type (1-indexed).
"""
from dataclasses import dataclass

from app.core.exceptions import BadPermutationError


@dataclass(frozen=True, slots=True)
class Permutation:
    """
    A bijection on {1..n}.

    Attributes:
        images: images[i - 1] is π(i)
    """

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise BadPermutationError(f"{list(self.images)} is not a permutation of 1..{len(self.images)}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        """Identity permutation of size n."""
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """
        Parse space-separated 1-indexed images, e.g. "5 2 3 1 4".

        Raises:
            BadPermutationError: On malformed text
        """
        try:
            return cls(tuple(int(item) for item in text.split()))
        except ValueError:
            raise BadPermutationError(f"cannot parse permutation '{text}'")

    @property
    def size(self) -> int:
        """n."""
        return len(self.images)

    def __call__(self, i: int) -> int:
        """π(i) for 1 <= i <= n."""
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        """π⁻¹."""
        inv = [0] * len(self.images)
        for position, image in enumerate(self.images, start=1):
            inv[image - 1] = position
        return Permutation(tuple(inv))

    def __str__(self) -> str:
        return " ".join(str(image) for image in self.images)
