"""공통 pytest 픽스처"""

import itertools
import random
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner

from s2s.services.alignment import dtw, local_align
from s2s.services.distance import damerau_levenshtein, levenshtein
from s2s.services.lexical_search import kmp_search
from s2s.utils.matrix_loader import matrix_loader

FIXTURES = Path(__file__).parent / "fixtures"


def strings_over(alphabet: str, max_len: int):
    """alphabet 위 길이 0..max_len의 모든 문자열"""
    for size in range(max_len + 1):
        for letters in itertools.product(alphabet, repeat=size):
            yield "".join(letters)


def random_pairs(count: int, max_len: int, alphabet: str = "acgt", seed: int = 7):
    rng = random.Random(seed)
    for _ in range(count):
        a = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))
        b = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, max_len)))
        yield a, b


@pytest.fixture(scope="session", autouse=True)
def warm_jit():
    """numba 커널 첫 컴파일 (hypothesis deadline에 포함되지 않도록)"""
    levenshtein("ab", "ba")
    damerau_levenshtein("ab", "ba", space_mode="reduced")
    local_align("ab", "ba")
    dtw([1.0, 2.0], [1.0])
    kmp_search("ab", "abab")


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def blosum62():
    return matrix_loader.load(str(FIXTURES / "blosum62.txt"))


@pytest.fixture(scope="session")
def gaussian_corpus():
    """1,000개 8차원 가우시안 벡터 (IVF recall 기준 코퍼스)"""
    rng = np.random.default_rng(1234)
    vectors = rng.standard_normal((1000, 8))
    return [(f"v{i:04d}", vectors[i]) for i in range(vectors.shape[0])]


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()
