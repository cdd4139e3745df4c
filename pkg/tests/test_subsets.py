import math

import pytest
from hypothesis import given, strategies as st

from jgraphs import (
    MAX_GROUND_SET,
    SubsetLabel,
    binomial,
    intersection_size,
    rank_subset,
    unrank_subset,
)


class TestBinomial:
    @pytest.mark.parametrize(
        "n,m,value",
        [(0, 0, 1), (5, 2, 10), (6, 3, 20), (9, 4, 126), (64, 32, math.comb(64, 32))],
    )
    def test_values(self, n, m, value):
        assert binomial(n, m) == value

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            binomial(65, 2)
        with pytest.raises(ValueError):
            binomial(5, 6)
        with pytest.raises(ValueError):
            binomial(5, -1)


class TestSubsetLabel:
    def test_from_elements_and_str(self):
        s = SubsetLabel.from_elements(5, [2, 1])
        assert s.m == 2
        assert s.elements() == (1, 2)
        assert str(s) == "{1,2}"

    def test_parse_round_trip(self):
        s = SubsetLabel.parse("{1,3,5}", 6)
        assert s == SubsetLabel.from_elements(6, [1, 3, 5])
        assert SubsetLabel.parse(str(s), 6) == s

    def test_parse_rejects_garbage(self):
        for bad in ["1,2", "{1,2", "{0,1}", "{1,99}", "{1,1,2}", "{a}"]:
            with pytest.raises(ValueError):
                SubsetLabel.parse(bad, 5)

    def test_parse_empty_set(self):
        assert SubsetLabel.parse("{}", 5).m == 0

    def test_complement(self):
        s = SubsetLabel.from_elements(6, [1, 2, 3])
        assert s.complement().elements() == (4, 5, 6)
        assert s.complement().complement() == s

    def test_elements_are_one_based(self):
        s = SubsetLabel.from_elements(MAX_GROUND_SET, [MAX_GROUND_SET])
        assert s.elements() == (MAX_GROUND_SET,)
        with pytest.raises(ValueError):
            SubsetLabel.from_elements(5, [0])
        with pytest.raises(ValueError):
            SubsetLabel.from_elements(5, [6])

    def test_intersection_size(self):
        a = SubsetLabel.from_elements(6, [1, 2, 3])
        b = SubsetLabel.from_elements(6, [3, 4, 5])
        assert intersection_size(a, b) == 1
        assert intersection_size(a, a) == 3


class TestRanking:
    def test_frozen_anchors(self):
        # colex order on 2-subsets of {1..5}: {1,2} first, {4,5} last
        assert rank_subset(SubsetLabel.from_elements(5, [1, 2])) == 0
        assert rank_subset(SubsetLabel.from_elements(5, [1, 3])) == 1
        assert rank_subset(SubsetLabel.from_elements(5, [2, 3])) == 2
        assert rank_subset(SubsetLabel.from_elements(5, [4, 5])) == 9

    def test_colex_is_sorted_by_reversed_tuple(self):
        labels = [unrank_subset(r, 6, 3) for r in range(binomial(6, 3))]
        keys = [tuple(reversed(s.elements())) for s in labels]
        assert keys == sorted(keys)

    @pytest.mark.parametrize("n,m", [(5, 2), (6, 3), (9, 4), (12, 1), (12, 11)])
    def test_round_trip_exhaustive(self, n, m):
        for r in range(binomial(n, m)):
            assert rank_subset(unrank_subset(r, n, m)) == r

    def test_unrank_rejects_bad_rank(self):
        with pytest.raises(ValueError):
            unrank_subset(10, 5, 2)
        with pytest.raises(ValueError):
            unrank_subset(-1, 5, 2)

    @given(st.data())
    def test_round_trip_random(self, data):
        n = data.draw(st.integers(2, MAX_GROUND_SET))
        m = data.draw(st.integers(1, n - 1))
        elems = data.draw(
            st.lists(st.integers(1, n), min_size=m, max_size=m, unique=True)
        )
        s = SubsetLabel.from_elements(n, elems)
        assert unrank_subset(rank_subset(s), n, m) == s
