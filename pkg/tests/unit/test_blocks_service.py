"""
Unit tests for building-sequence weights, enumeration and sampling.
"""
from collections import Counter

import pytest
from hypothesis import given, settings as hypothesis_settings, strategies as st

from app.core.exceptions import BadSequenceError, CapExceededError
from app.core.rng import make_rng
from app.models.sequence import BuildingSequence
from app.services import blocks_service, lastfall_service, path_service


def seq(*entries: int) -> BuildingSequence:
    return BuildingSequence.from_entries(entries)


class TestWeights:
    """Test perm, m and P."""

    def test_worked_example(self, worked_sequence):
        """Test perm = 1200, m = 18 and P = 21600 for (1;1,1;2,2)."""
        assert blocks_service.perm_weight(worked_sequence) == 1200
        assert blocks_service.path_count(worked_sequence) == 18
        assert blocks_service.total_weight(worked_sequence) == 21600

    def test_factors_of_worked_example(self, worked_sequence):
        """Test the top factor and both level factors."""
        assert blocks_service.top_factor(worked_sequence) == 3
        assert blocks_service.level_factor(worked_sequence, 2) == 3
        assert blocks_service.level_factor(worked_sequence, 1) == 2

    def test_level_factor_outside_range(self, worked_sequence):
        """Test that levels outside [1, h] contribute 1."""
        assert blocks_service.level_factor(worked_sequence, 0) == 1
        assert blocks_service.level_factor(worked_sequence, 3) == 1

    def test_all_flat(self):
        """Test that the all-flat sequence has one path of weight 1."""
        a = seq(5)
        assert blocks_service.top_factor(a) == 1
        assert blocks_service.path_count(a) == 1
        assert blocks_service.perm_weight(a) == 1

    def test_small_examples(self):
        """Test (0;1,0) for UD and (0;1,1) for UHD."""
        assert blocks_service.total_weight(seq(0, 1, 0)) == 1
        assert blocks_service.perm_weight(seq(0, 1, 1)) == 3
        assert blocks_service.path_count(seq(0, 1, 1)) == 1

    def test_multiplicities_match_enumeration(self):
        """Test that every sequence is hit by m(a) paths, each of weight perm(a)."""
        hits: Counter = Counter()
        for path in path_service.enumerate_paths(8):
            a = path_service.path_to_sequence(path)
            assert path_service.weight(path) == blocks_service.perm_weight(a)
            hits[a] += 1
        for a, count in hits.items():
            assert count == blocks_service.path_count(a)


class TestEnumeration:
    """Test enumeration of S(n, A)."""

    def test_single_members(self):
        """Test S(2, 1) and S(3, 2)."""
        assert blocks_service.enumerate_sequences(2, 1) == [seq(0, 1, 0)]
        assert blocks_service.enumerate_sequences(3, 2) == [seq(0, 1, 1)]

    def test_slow_class_size(self):
        """Test that S(8, 9) has six members."""
        assert len(blocks_service.enumerate_sequences(8, 9)) == 6

    def test_empty_class(self):
        """Test that areas above ⌊n²/4⌋ give nothing."""
        assert blocks_service.enumerate_sequences(4, 5) == []
        assert list(blocks_service.iter_sequences(-1, 0)) == []

    def test_members_have_width_and_area(self):
        """Test every member of S(10, A) for all A."""
        for area in range(26):
            for a in blocks_service.iter_sequences(10, area):
                assert (a.width, a.area) == (10, area)

    def test_order(self):
        """Test that members come sorted by height, then entries."""
        members = blocks_service.enumerate_sequences(10, 12)
        assert members == sorted(members, key=BuildingSequence.sort_key)
        assert len(set(members)) == len(members)

    def test_cap(self):
        """Test that a too-small cap is refused."""
        with pytest.raises(CapExceededError):
            blocks_service.enumerate_sequences(8, 9, cap=3)

    def test_sums_reproduce_tables(self, weighted_full, unweighted_full):
        """Test Σ P(a) = D(n, A) and Σ m(a) = M(n, A) for widths up to 12."""
        for n in range(13):
            for area in range(n * n // 4 + 1):
                members = list(blocks_service.iter_sequences(n, area))
                assert sum(map(blocks_service.total_weight, members)) == lastfall_service.marginal(weighted_full, n, area)
                assert sum(map(blocks_service.path_count, members)) == lastfall_service.marginal(unweighted_full, n, area)

    def test_sequence_weights(self):
        """Test that the law on S(8, 9) sums to 1 and is proportional to P."""
        law = blocks_service.sequence_weights(8, 9)
        assert sum(law.values()) == 1
        for a, probability in law.items():
            assert probability * 4852 == blocks_service.total_weight(a)


class TestSampler:
    """Test the sequence-to-path sampler."""

    def test_roundtrip(self, rng):
        """Test that draws keep their building sequence."""
        for area in range(10):
            for a in blocks_service.iter_sequences(7, area):
                drawn = blocks_service.sample_path_for_sequence(a, rng)
                path_service.validate(drawn.moves)
                assert path_service.path_to_sequence(drawn) == a

    def test_reaches_every_path(self, worked_sequence):
        """Test that all 18 paths of (1;1,1;2,2) are drawn."""
        rng = make_rng(11)
        drawn = {blocks_service.sample_path_for_sequence(worked_sequence, rng).moves for _ in range(1000)}
        assert len(drawn) == 18
        assert "UUHDHUHDDH" in drawn

    def test_all_flat(self, rng):
        """Test that height 0 yields only flats."""
        assert blocks_service.sample_path_for_sequence(seq(4), rng).moves == "HHHH"

    def test_deterministic(self, worked_sequence):
        """Test that equal seeds give equal draws."""
        first = [blocks_service.sample_path_for_sequence(worked_sequence, make_rng(2)) for _ in range(3)]
        second = [blocks_service.sample_path_for_sequence(worked_sequence, make_rng(2)) for _ in range(3)]
        assert first == second


class TestFormat:
    """Test parsing and formatting."""

    @pytest.mark.parametrize("text", ["1;1,1;2,2", "1,1,1,2,2", " 1;1,1;2,2 "])
    def test_parse(self, text, worked_sequence):
        """Test both accepted forms."""
        assert blocks_service.parse_sequence(text) == worked_sequence

    def test_format(self, worked_sequence):
        """Test the semicolon form."""
        assert blocks_service.format_sequence(worked_sequence) == "1;1,1;2,2"
        assert blocks_service.format_sequence(seq(3)) == "3"

    @pytest.mark.parametrize("text", ["1;0,1", "1,2", "x;1,1", "1;1"])
    def test_parse_rejects(self, text):
        """Test malformed sequences."""
        with pytest.raises(BadSequenceError):
            blocks_service.parse_sequence(text)


sequences = st.integers(min_value=0, max_value=4).flatmap(
    lambda h: st.builds(
        BuildingSequence,
        flats=st.tuples(*[st.integers(min_value=0, max_value=3)] * (h + 1)),
        peaks=st.tuples(*[st.integers(min_value=1, max_value=3)] * h)
    )
)


class TestSequenceProperties:
    """Test building-sequence identities on random sequences."""

    @given(sequences, st.integers(min_value=0, max_value=2 ** 32))
    @hypothesis_settings(max_examples=200, deadline=None)
    def test_drawn_path_matches_identities(self, a, seed):
        """Test that a drawn path has the sequence's width, area and weight."""
        path = blocks_service.sample_path_for_sequence(a, make_rng(seed))
        stats = path_service.path_stats(path_service.validate(path.moves))

        assert stats.width == a.width == sum(a.flats) + 2 * sum(a.peaks)
        assert stats.area == a.area
        assert path_service.path_to_sequence(path) == a
        assert path_service.weight(path) == blocks_service.perm_weight(a)

    @given(sequences)
    @hypothesis_settings(max_examples=200, deadline=None)
    def test_text_forms(self, a):
        """Test that both serialized forms parse back."""
        assert blocks_service.parse_sequence(blocks_service.format_sequence(a)) == a
        assert BuildingSequence.from_entries(a.entries()) == a

    @given(sequences)
    @hypothesis_settings(max_examples=200, deadline=None)
    def test_total_weight_factorizes(self, a):
        """Test P(a) = m(a) · perm(a) with m(a) >= 1."""
        assert blocks_service.path_count(a) >= 1
        assert blocks_service.total_weight(a) == blocks_service.path_count(a) * blocks_service.perm_weight(a)
