"""
Building sequence value type.
"""
from dataclasses import dataclass
from typing import Iterable, Sequence

from app.core.exceptions import BadSequenceError


@dataclass(frozen=True, slots=True)
class BuildingSequence:
    """
    Per-height census (f_0, p_1, f_1, ..., p_h, f_h) of flats and peaks.

    Attributes:
        flats: (f_0, ..., f_h), flats at each height
        peaks: (p_1, ..., p_h), peaks at each height; peaks[i - 1] is p_i
    """

    flats: tuple[int, ...]
    peaks: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.flats) != len(self.peaks) + 1:
            raise BadSequenceError(
                f"expected {len(self.peaks) + 1} flat entries, got {len(self.flats)}"
            )
        if any(f < 0 for f in self.flats):
            raise BadSequenceError("flat counts must be non-negative")
        if any(p < 1 for p in self.peaks):
            raise BadSequenceError("every peak count up to the maximum height must be positive")

    @classmethod
    def from_entries(cls, entries: Sequence[int]) -> "BuildingSequence":
        """
        Build from the interleaved form (f_0, p_1, f_1, ..., p_h, f_h).

        Args:
            entries: Odd-length interleaved entries

        Returns:
            Building sequence

        Raises:
            BadSequenceError: If the length is even or a constraint fails
        """
        if len(entries) % 2 != 1:
            raise BadSequenceError("interleaved form must have odd length")
        return cls(flats=tuple(entries[0::2]), peaks=tuple(entries[1::2]))

    @classmethod
    def from_counts(cls, flats: Iterable[int], peaks: Iterable[int]) -> "BuildingSequence":
        """
        Build from dense count arrays, trimming everything above the top peak.

        Args:
            flats: f_0, f_1, ... (any length)
            peaks: p_0, p_1, ... (index 0 ignored)

        Returns:
            Building sequence

        Raises:
            BadSequenceError: If a flat lies above the top peak or a gap exists
        """
        flat_list = list(flats)
        peak_list = list(peaks)
        height = 0
        for index in range(len(peak_list) - 1, 0, -1):
            if peak_list[index] != 0:
                height = index
                break
        if any(f != 0 for f in flat_list[height + 1:]):
            raise BadSequenceError("flats above the highest peak")
        padded = flat_list[:height + 1] + [0] * (height + 1 - len(flat_list))
        return cls(flats=tuple(padded), peaks=tuple(peak_list[1:height + 1]))

    @classmethod
    def parse(cls, text: str) -> "BuildingSequence":
        """
        Parse "f0;p1,f1;p2,f2;..." or the flat comma form "f0,p1,f1,...".

        Args:
            text: Serialized sequence

        Returns:
            Building sequence

        Raises:
            BadSequenceError: On malformed text
        """
        text = text.strip()
        try:
            if ";" in text:
                groups = text.split(";")
                entries = [int(groups[0])]
                for group in groups[1:]:
                    peak, flat = group.split(",")
                    entries.extend((int(peak), int(flat)))
            else:
                entries = [int(item) for item in text.split(",")]
        except ValueError:
            raise BadSequenceError(f"cannot parse building sequence '{text}'")
        return cls.from_entries(entries)

    @property
    def height(self) -> int:
        """Maximum height h."""
        return len(self.peaks)

    @property
    def width(self) -> int:
        """Σ f_i + 2 Σ p_i."""
        return sum(self.flats) + 2 * sum(self.peaks)

    @property
    def area(self) -> int:
        """Σ i·f_i + Σ (2i - 1)·p_i."""
        flat_area = sum(i * f for i, f in enumerate(self.flats))
        peak_area = sum((2 * i - 1) * p for i, p in enumerate(self.peaks, start=1))
        return flat_area + peak_area

    def flat(self, i: int) -> int:
        """f_i, zero outside [0, h]."""
        return self.flats[i] if 0 <= i < len(self.flats) else 0

    def peak(self, i: int) -> int:
        """p_i, zero outside [1, h]."""
        return self.peaks[i - 1] if 1 <= i <= len(self.peaks) else 0

    def entries(self) -> tuple[int, ...]:
        """Interleaved form (f_0, p_1, f_1, ..., p_h, f_h)."""
        out = [self.flats[0]]
        for peak, flat in zip(self.peaks, self.flats[1:]):
            out.extend((peak, flat))
        return tuple(out)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Order by height, then interleaved entries."""
        return self.height, self.entries()

    def __str__(self) -> str:
        parts = [str(self.flats[0])]
        parts.extend(f"{p},{f}" for p, f in zip(self.peaks, self.flats[1:]))
        return ";".join(parts)
