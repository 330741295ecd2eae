"""
Unit tests for the shared Pascal triangle.
"""
import math

from app.core.binomial import PascalTriangle, binomial, pascal


class TestPascalTriangle:
    """Test binomial coefficient lookup."""

    def test_matches_math_comb(self):
        """Test that every entry up to row 40 equals math.comb."""
        for n in range(41):
            for k in range(n + 1):
                assert binomial(n, k) == math.comb(n, k)

    def test_out_of_range_is_zero(self):
        """Test that k < 0, k > n and n < 0 read as 0."""
        assert binomial(5, -1) == 0
        assert binomial(5, 6) == 0
        assert binomial(-1, 0) == 0

    def test_grows_on_demand(self):
        """Test that rows beyond the eager size are built when requested."""
        triangle = PascalTriangle(rows=4)
        assert triangle.size() == 5

        assert triangle.binomial(200, 100) == math.comb(200, 100)
        assert triangle.size() == 201

    def test_shared_instance_prebuilt(self):
        """Test that the global triangle is built eagerly."""
        assert pascal.size() >= 65
