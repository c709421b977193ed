"""처리량 기준 (데스크톱 규모)"""

import random
import time

import pytest

from s2s.services.distance import levenshtein
from s2s.services.lexical_search import kmp_search

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module", autouse=True)
def warm_up_jit():
    kmp_search("ab", "abab")


def test_kmp_ten_megabytes_under_one_second():
    rng = random.Random(0)
    text = "".join(rng.choice("acgt") for _ in range(10 * 1024 * 1024))
    pattern = "acgtacgtac"

    start = time.perf_counter()
    offsets = kmp_search(pattern, text)
    elapsed = time.perf_counter() - start

    assert elapsed < 1.0
    assert all(text[o:o + len(pattern)] == pattern for o in offsets[:100])


def test_two_row_levenshtein_ten_thousand_chars_under_five_seconds():
    rng = random.Random(1)
    S = "".join(rng.choice("abcdefghij") for _ in range(10_000))
    T = "".join(rng.choice("abcdefghij") for _ in range(10_000))

    start = time.perf_counter()
    value = levenshtein(S, T, space_mode="two_row").value
    elapsed = time.perf_counter() - start

    assert elapsed < 5.0
    assert 0 < value <= 10_000
