"""선형 공간 모드의 DP 셀 보유량 계약"""

import random

import pytest

from s2s.services.alignment import dtw, global_align, hirschberg_align
from s2s.services.distance import damerau_levenshtein, levenshtein
from s2s.services.lexical_search import kmp_search
from s2s.utils.instrument import probe


def _pair(n: int, m: int, seed: int = 0):
    rng = random.Random(seed)
    return (
        "".join(rng.choice("acgt") for _ in range(n)),
        "".join(rng.choice("acgt") for _ in range(m)),
    )


@pytest.mark.parametrize("n, m", [(1, 1), (10, 3), (64, 64), (200, 37), (5, 300)])
class TestPeakCells:
    def test_levenshtein_two_rows(self, n, m):
        S, T = _pair(n, m)
        with probe() as counters:
            levenshtein(S, T, space_mode="two_row")
        assert counters.peak_cells <= 2 * (m + 1)
        assert counters.live_cells == 0

    def test_damerau_three_rows(self, n, m):
        S, T = _pair(n, m)
        with probe() as counters:
            damerau_levenshtein(S, T, space_mode="reduced")
        assert counters.peak_cells <= 3 * (m + 1)

    def test_hirschberg_linear(self, n, m):
        S, T = _pair(n, m)
        with probe() as counters:
            hirschberg_align(S, T)
        assert 0 < counters.peak_cells <= 3 * (m + 1)
        assert counters.live_cells == 0

    def test_dtw_linear(self, n, m):
        rng = random.Random(n * 1000 + m)
        S = [rng.random() for _ in range(n)]
        T = [rng.random() for _ in range(m)]
        with probe() as counters:
            dtw(S, T, space_mode="linear")
        assert counters.peak_cells <= 3 * m
        assert counters.live_cells == 0


@pytest.mark.parametrize(
    "run, cells",
    [
        (lambda: levenshtein("kitten", "sitting"), 7 * 8),
        (lambda: damerau_levenshtein("kitten", "sitting"), 7 * 8),
        (lambda: global_align("kitten", "sitting"), 7 * 8),
        (lambda: dtw([1, 2, 3], [1, 2]), 3 * 2),
    ]
)
def test_full_modes_hold_whole_matrix(run, cells):
    with probe() as counters:
        run()
    assert counters.peak_cells >= cells
    assert counters.live_cells == 0


def test_buffers_kept_by_caller_stay_live():
    with probe() as counters:
        result = levenshtein("abc", "ab")
        assert counters.live_cells == 4 * 3
        del result
    assert counters.live_cells == 0


def test_probe_is_inactive_outside_block():
    with probe() as counters:
        pass
    kmp_search("ab", "abab")
    assert counters.comparisons == 0


@pytest.mark.slow
def test_large_inputs_stay_linear():
    S, T = _pair(5000, 500, seed=1)
    with probe() as counters:
        levenshtein(S, T, space_mode="two_row")
    assert counters.peak_cells <= 2 * 501

    with probe() as counters:
        hirschberg_align(S, T)
    assert counters.peak_cells <= 3 * 501
