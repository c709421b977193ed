"""정확 패턴 검색 서비스 (naive / Rabin-Karp / Boyer-Moore / KMP)"""

import logging
from typing import Callable, Dict, List, Tuple

import numba as nb
import numpy as np

from s2s.errors import InvalidArgumentError
from s2s.models.schemas import MatchList
from s2s.models.sequence import SymbolsLike, as_sequence
from s2s.utils.dp import jitkw
from s2s.utils.instrument import add_comparisons

logger = logging.getLogger(__name__)

RK_BASE = 257
RK_MODULUS = (1 << 61) - 1

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = (1 << 64) - 1


def _symbols(pattern: SymbolsLike, text: SymbolsLike) -> Tuple[Tuple[str, ...], Tuple[str, ...]]:
    p = as_sequence(pattern).symbols
    if not p:
        raise InvalidArgumentError("빈 패턴은 검색할 수 없습니다.")
    return p, as_sequence(text).symbols


# ============================================
# Naive
# ============================================

def naive_search(pattern: SymbolsLike, text: SymbolsLike) -> List[int]:
    """모든 시작 위치에서 패턴 전체를 비교: O(nm)"""
    p, t = _symbols(pattern, text)
    m = len(p)
    return [i for i in range(len(t) - m + 1) if t[i:i + m] == p]


# ============================================
# Rabin-Karp
# ============================================

def fingerprint(symbol: str) -> int:
    """
    심볼의 64비트 지문

    - 한 글자: 코드 포인트
    - 토큰: UTF-8 바이트의 FNV-1a 64비트 해시
    """
    if len(symbol) == 1:
        return ord(symbol)
    h = _FNV_OFFSET
    for byte in symbol.encode("utf-8"):
        h = ((h ^ byte) * _FNV_PRIME) & _MASK64
    return h


def rabin_karp_search(
    pattern: SymbolsLike,
    text: SymbolsLike,
    base: int = RK_BASE,
    modulus: int = RK_MODULUS
) -> List[int]:
    """
    롤링 해시 검색 (해시가 같은 위치는 심볼 단위로 다시 확인)

    Args:
        base, modulus: 다항식 해시 파라미터 (기본 257, 2^61-1)
    """
    p, t = _symbols(pattern, text)
    if base < 2 or modulus < 2:
        raise InvalidArgumentError("base와 modulus는 2 이상이어야 합니다.")
    m, n = len(p), len(t)
    if m > n:
        return []

    p_fp = [fingerprint(s) for s in p]
    t_fp = [fingerprint(s) for s in t]
    high = pow(base, m - 1, modulus)

    p_hash = 0
    t_hash = 0
    for k in range(m):
        p_hash = (p_hash * base + p_fp[k]) % modulus
        t_hash = (t_hash * base + t_fp[k]) % modulus

    offsets = []
    collisions = 0
    for i in range(n - m + 1):
        if t_hash == p_hash:
            if t[i:i + m] == p:
                offsets.append(i)
            else:
                collisions += 1
        if i < n - m:
            t_hash = ((t_hash - t_fp[i] * high) * base + t_fp[i + m]) % modulus

    if collisions:
        logger.debug("Rabin-Karp 해시 충돌 %d건 (검증으로 제외)", collisions)
    return offsets


# ============================================
# Boyer-Moore
# ============================================

def bad_character_table(pattern: Tuple[str, ...]) -> Dict[str, int]:
    """심볼 → 패턴 내 마지막 위치"""
    return {symbol: i for i, symbol in enumerate(pattern)}


def good_suffix_table(pattern: Tuple[str, ...]) -> List[int]:
    """
    강한 good-suffix 이동량

    shift[j]: 위치 j-1에서 불일치했을 때 (pattern[j:]가 일치한 상태) 이동량.
    shift[0]은 전체 일치 후 이동량.
    """
    m = len(pattern)
    shift = [0] * (m + 1)
    border = [0] * (m + 1)

    i, j = m, m + 1
    border[i] = j
    while i > 0:
        while j <= m and pattern[i - 1] != pattern[j - 1]:
            if shift[j] == 0:
                shift[j] = j - i
            j = border[j]
        i -= 1
        j -= 1
        border[i] = j

    j = border[0]
    for i in range(m + 1):
        if shift[i] == 0:
            shift[i] = j
        if i == j:
            j = border[j]
    return shift


def boyer_moore_search(pattern: SymbolsLike, text: SymbolsLike) -> List[int]:
    """bad-character + good-suffix 규칙의 Boyer-Moore"""
    p, t = _symbols(pattern, text)
    m, n = len(p), len(t)
    bad = bad_character_table(p)
    shift = good_suffix_table(p)

    offsets = []
    s = 0
    while s <= n - m:
        j = m - 1
        while j >= 0 and p[j] == t[s + j]:
            j -= 1
        if j < 0:
            offsets.append(s)
            s += shift[0]
        else:
            s += max(shift[j + 1], j - bad.get(t[s + j], -1))
    return offsets


# ============================================
# Knuth-Morris-Pratt
# ============================================

def failure_function(pattern: SymbolsLike) -> List[int]:
    """f[i] = pattern[0..i]의 가장 긴 진접두사이자 접미사의 길이"""
    p = as_sequence(pattern).symbols
    if not p:
        raise InvalidArgumentError("빈 패턴의 실패 함수는 정의되지 않습니다.")

    f = [0] * len(p)
    k = 0
    for i in range(1, len(p)):
        while k > 0 and p[i] != p[k]:
            k = f[k - 1]
        if p[i] == p[k]:
            k += 1
        f[i] = k
    return f


@nb.jit(**jitkw)
def _kmp_scan(text, pattern, failure):
    n = text.shape[0]
    m = pattern.shape[0]
    out = np.empty(max(n - m + 1, 0), dtype=np.int64)
    count = 0
    comparisons = 0
    q = 0
    for i in range(n):
        while True:
            comparisons += 1
            if pattern[q] == text[i]:
                q += 1
                break
            if q == 0:
                break
            q = failure[q - 1]
        if q == m:
            out[count] = i - m + 1
            count += 1
            q = failure[q - 1]
    return out[:count], comparisons


def _code_points(text: str) -> np.ndarray:
    if not text:
        return np.empty(0, dtype=np.int64)
    return np.frombuffer(text.encode("utf-32-le"), dtype="<u4").astype(np.int64)


def _encode_for_kmp(pattern: SymbolsLike, text: SymbolsLike) -> Tuple[np.ndarray, np.ndarray]:
    """문자열이면 코드 포인트, 토큰이면 패턴 어휘 ID (패턴에 없는 심볼은 -1)"""
    if isinstance(pattern, str) and isinstance(text, str):
        return _code_points(pattern), _code_points(text)

    p = as_sequence(pattern).symbols
    vocab: Dict[str, int] = {}
    p_ids = np.fromiter((vocab.setdefault(s, len(vocab)) for s in p), dtype=np.int64, count=len(p))
    t = as_sequence(text).symbols
    t_ids = np.fromiter((vocab.get(s, -1) for s in t), dtype=np.int64, count=len(t))
    return p_ids, t_ids


def kmp_search(pattern: SymbolsLike, text: SymbolsLike) -> List[int]:
    """실패 함수 기반 선형 시간 스캔 (비교 횟수 ≤ 2n)"""
    failure = np.asarray(failure_function(pattern), dtype=np.int64)
    p_ids, t_ids = _encode_for_kmp(pattern, text)
    offsets, comparisons = _kmp_scan(t_ids, p_ids, failure)
    add_comparisons(int(comparisons))
    return offsets.tolist()


SEARCH_ALGORITHMS: Dict[str, Callable[[SymbolsLike, SymbolsLike], List[int]]] = {
    "naive": naive_search,
    "rabin_karp": rabin_karp_search,
    "boyer_moore": boyer_moore_search,
    "kmp": kmp_search,
}


def search(pattern: SymbolsLike, text: SymbolsLike, algorithm: str = "kmp") -> MatchList:
    """
    패턴의 모든 출현 위치 (겹치는 출현 포함)

    Args:
        pattern: 찾을 패턴 (비어 있으면 안 됨)
        text: 검색 대상
        algorithm: naive / rabin_karp / boyer_moore / kmp

    Returns:
        오름차순 시작 위치 목록 (심볼 단위)
    """
    runner = SEARCH_ALGORITHMS.get(algorithm.replace("-", "_"))
    if runner is None:
        raise InvalidArgumentError(
            f"지원하지 않는 검색 알고리즘입니다: {algorithm} (허용: {', '.join(SEARCH_ALGORITHMS)})"
        )
    return MatchList(offsets=runner(pattern, text))
