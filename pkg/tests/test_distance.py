"""거리 측도 서비스 테스트"""

import pytest
from hypothesis import given, settings, strategies as st

from s2s.errors import InvalidArgumentError
from s2s.models.schemas import CostModel
from s2s.services.distance import (
    damerau_levenshtein,
    hamming,
    jaccard_distance,
    jaccard_ratio,
    levenshtein,
    levenshtein_memoized,
)
from s2s.services.similarity import jaccard_similarity
from tests import oracles
from tests.conftest import random_pairs, strings_over

TINY = list(strings_over("ab", 3))


class TestLevenshtein:
    @pytest.mark.parametrize(
        "S, T, expected",
        [
            ("kitten", "sitting", 3),
            ("", "", 0),
            ("", "abc", 3),
            ("flaw", "lawn", 2),
            ("abc", "abc", 0),
        ]
    )
    def test_unit_costs(self, S, T, expected):
        assert levenshtein(S, T).value == expected

    def test_expensive_substitution_uses_indels(self):
        costs = CostModel(substitute_cost=5)
        assert levenshtein("ab", "ba", costs).value == 2
        assert oracles.levenshtein_memo("ab", "ba", sub=5) == 2

    def test_asymmetric_costs(self):
        costs = CostModel(insert_cost=2, delete_cost=3)
        assert levenshtein("", "ab", costs).value == 4
        assert levenshtein("ab", "", costs).value == 6

    def test_full_mode_keeps_matrix(self):
        result = levenshtein("abc", "ab")
        assert (result.matrix.rows, result.matrix.cols) == (4, 3)
        assert result.matrix.cells[0].tolist() == [0, 1, 2]
        assert levenshtein("abc", "ab", space_mode="two_row").matrix is None

    def test_unknown_space_mode(self):
        with pytest.raises(InvalidArgumentError):
            levenshtein("a", "b", space_mode="reduced")

    def test_random_pairs_modes_agree(self):
        costs = CostModel(insert_cost=1, delete_cost=2, substitute_cost=3)
        for S, T in random_pairs(500, 40, seed=21):
            full = levenshtein(S, T, costs).value
            assert levenshtein(S, T, costs, space_mode="two_row").value == full
            assert full == oracles.levenshtein_memo(S, T, ins=1, dele=2, sub=3)

    def test_memoized_matches_dp(self):
        for S, T in random_pairs(50, 20, seed=4):
            assert levenshtein_memoized(S, T) == levenshtein(S, T).value

    @pytest.mark.parametrize(
        "costs",
        [
            CostModel(insert_cost=0.1, delete_cost=0.7, substitute_cost=0.3),
            CostModel(insert_cost=0.35, delete_cost=0.2, substitute_cost=0.45, match_cost=0.05),
        ]
    )
    def test_non_integer_costs_are_exact(self, costs):
        assert levenshtein("abaa", "bbaabbabab", costs).value == levenshtein_memoized("abaa", "bbaabbabab", costs)
        for S, T in random_pairs(300, 12, alphabet="ab", seed=41):
            expected = levenshtein_memoized(S, T, costs)
            assert levenshtein(S, T, costs).value == expected
            assert levenshtein(S, T, costs, space_mode="two_row").value == expected

    def test_non_integer_costs_match_reference(self):
        costs = CostModel(insert_cost=0.1, delete_cost=0.7, substitute_cost=0.3)
        for S, T in random_pairs(300, 12, alphabet="ab", seed=42):
            assert levenshtein(S, T, costs).value == oracles.levenshtein_memo(S, T, ins=0.1, dele=0.7, sub=0.3)

    def test_memoized_rejects_long_inputs(self):
        with pytest.raises(InvalidArgumentError):
            levenshtein_memoized("a" * 100000, "b")

    def test_metric_axioms_on_small_strings(self):
        for a in TINY:
            assert levenshtein(a, a).value == 0
            for b in TINY:
                ab = levenshtein(a, b).value
                assert ab == levenshtein(b, a).value
                assert (ab == 0) == (a == b)
                for c in TINY:
                    assert levenshtein(a, c).value <= ab + levenshtein(b, c).value

    @settings(max_examples=80, deadline=None)
    @given(st.text(alphabet="xyz", max_size=15), st.text(alphabet="xyz", max_size=15))
    def test_bounds(self, S, T):
        value = levenshtein(S, T).value
        assert abs(len(S) - len(T)) <= value <= max(len(S), len(T))


class TestHamming:
    @pytest.mark.parametrize(
        "S, T, expected",
        [("karolin", "kathrin", 3), ("1011101", "1001001", 2), ("", "", 0)]
    )
    def test_examples(self, S, T, expected):
        assert hamming(S, T).value == expected

    def test_length_mismatch_names_lengths(self):
        with pytest.raises(InvalidArgumentError) as excinfo:
            hamming("abc", "ab")
        assert "3" in str(excinfo.value) and "2" in str(excinfo.value)

    @given(st.text(alphabet="ab", max_size=12))
    def test_upper_bounds_levenshtein(self, S):
        T = S[::-1]
        assert levenshtein(S, T).value <= hamming(S, T).value


class TestDamerauLevenshtein:
    @pytest.mark.parametrize(
        "S, T, expected",
        [
            ("ab", "ba", 1),
            ("ca", "abc", 3),
            ("abcdef", "abcdfe", 1),
            ("", "ab", 2),
            ("kitten", "sitting", 3),
        ]
    )
    def test_examples(self, S, T, expected):
        assert damerau_levenshtein(S, T).value == expected

    def test_transpose_cost(self):
        assert damerau_levenshtein("ab", "ba", CostModel(transpose_cost=1.5)).value == 1.5
        # 전치가 비싸면 치환 두 번
        assert damerau_levenshtein("ab", "ba", CostModel(transpose_cost=5)).value == 2

    def test_random_pairs_against_memo(self):
        for S, T in random_pairs(500, 30, alphabet="ab", seed=8):
            full = damerau_levenshtein(S, T).value
            assert full == oracles.osa_memo(S, T)
            assert damerau_levenshtein(S, T, space_mode="reduced").value == full
            assert full <= levenshtein(S, T).value

    def test_non_integer_costs_match_memo(self):
        costs = CostModel(insert_cost=0.3, delete_cost=0.1, substitute_cost=0.7, transpose_cost=0.2)
        for S, T in random_pairs(300, 12, alphabet="ab", seed=43):
            expected = oracles.osa_memo(S, T, ins=0.3, dele=0.1, sub=0.7, trans=0.2)
            assert damerau_levenshtein(S, T, costs).value == expected
            assert damerau_levenshtein(S, T, costs, space_mode="reduced").value == expected

    def test_unknown_space_mode(self):
        with pytest.raises(InvalidArgumentError):
            damerau_levenshtein("a", "b", space_mode="two_row")


class TestJaccard:
    def test_half_overlap(self):
        assert jaccard_ratio("abc", "bcd") == 0.5
        assert jaccard_distance("abc", "bcd").value == 0.5

    def test_multiset_is_ignored(self):
        assert jaccard_ratio("aaab", "ab") == 1.0

    def test_both_empty(self):
        assert jaccard_ratio("", "") == 1.0
        assert jaccard_distance("", "").value == 0.0

    def test_one_empty(self):
        assert jaccard_distance("", "ab").value == 1.0

    @settings(max_examples=500)
    @given(st.text(alphabet="abcdef", max_size=10), st.text(alphabet="abcdef", max_size=10))
    def test_similarity_plus_distance_is_one(self, S, T):
        total = jaccard_similarity(S, T).value + jaccard_distance(S, T).value
        assert total == 1.0
