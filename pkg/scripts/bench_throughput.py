"""처리량 측정 스크립트 (KMP 10MB / two-row Levenshtein 10,000자)"""

import random
import sys
import time
from pathlib import Path
sys.path.append(str(Path(__file__).parent.parent))

from s2s.services.distance import levenshtein
from s2s.services.lexical_search import SEARCH_ALGORITHMS, kmp_search


def bench_kmp(size_mb: int = 10):
    print(f"\n=== KMP ({size_mb}MB 텍스트, 10심볼 패턴) ===")
    rng = random.Random(0)
    text = "".join(rng.choice("acgt") for _ in range(size_mb * 1024 * 1024))
    kmp_search("ab", "abab")  # JIT 컴파일

    start = time.perf_counter()
    offsets = kmp_search("acgtacgtac", text)
    elapsed = time.perf_counter() - start
    print(f"출현: {len(offsets)}회")
    print(f"소요: {elapsed:.3f}s (기준 < 1s)")
    return elapsed < 1.0


def bench_search_algorithms(size: int = 200_000):
    print(f"\n=== 검색 알고리즘 비교 ({size:,}자) ===")
    rng = random.Random(1)
    text = "".join(rng.choice("ab") for _ in range(size))
    for name, runner in SEARCH_ALGORITHMS.items():
        start = time.perf_counter()
        found = runner("abbab", text)
        print(f"  {name:12s} {time.perf_counter() - start:.3f}s ({len(found)}회)")
    return True


def bench_levenshtein(length: int = 10_000):
    print(f"\n=== two-row Levenshtein ({length:,}자 x {length:,}자) ===")
    rng = random.Random(2)
    S = "".join(rng.choice("abcdefghij") for _ in range(length))
    T = "".join(rng.choice("abcdefghij") for _ in range(length))

    start = time.perf_counter()
    value = levenshtein(S, T, space_mode="two_row").value
    elapsed = time.perf_counter() - start
    print(f"거리: {value:.0f}")
    print(f"소요: {elapsed:.3f}s (기준 < 5s)")
    return elapsed < 5.0


def main():
    print("=" * 50)
    print("s2s 처리량 측정")
    print("=" * 50)

    results = {
        "KMP": bench_kmp(),
        "검색 비교": bench_search_algorithms(),
        "Levenshtein": bench_levenshtein(),
    }

    print("\n" + "=" * 50)
    for name, ok in results.items():
        print(f"[{'PASS' if ok else 'FAIL'}] {name}")
    return 0 if all(results.values()) else 1


if __name__ == "__main__":
    exit(main())
