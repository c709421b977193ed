"""유사도 측도 서비스 (Jaccard / Jaro(-Winkler) / LCS / 코사인 / 그리디 임베딩 매칭)"""

import logging
import math
from typing import Optional, Sequence

import numpy as np

from s2s.config import settings
from s2s.errors import InvalidArgumentError
from s2s.models.schemas import GreedyMatchScore, SimilarityScore
from s2s.models.sequence import SymbolsLike, as_sequence, encode_symbols
from s2s.services.distance import jaccard_ratio
from s2s.utils import dp
from s2s.utils.embedding_loader import EmbeddingStore

logger = logging.getLogger(__name__)


# ============================================
# 어휘 기반 유사도
# ============================================

def jaccard_similarity(S: SymbolsLike, T: SymbolsLike) -> SimilarityScore:
    """고유 심볼 집합의 교집합 크기 / 합집합 크기"""
    return SimilarityScore(value=jaccard_ratio(S, T))


def jaro(S: SymbolsLike, T: SymbolsLike) -> SimilarityScore:
    """
    Jaro 유사도

    매칭 창 max(0, max(n,m)//2 - 1) 안의 같은 심볼을 순서대로 짝짓고,
    순서가 어긋난 짝의 절반을 전치 수 t로 센다.
    """
    s = as_sequence(S).symbols
    t = as_sequence(T).symbols
    # 입력 순서와 무관하게 같은 매칭을 쓰도록 정렬
    if (len(s), s) > (len(t), t):
        s, t = t, s
    n, m = len(s), len(t)

    if n == 0 and m == 0:
        return SimilarityScore(value=1.0)
    if n == 0 or m == 0:
        return SimilarityScore(value=0.0)

    window = max(0, max(n, m) // 2 - 1)
    s_matched = [False] * n
    t_matched = [False] * m
    matches = 0
    for i in range(n):
        for j in range(max(0, i - window), min(i + window + 1, m)):
            if not t_matched[j] and s[i] == t[j]:
                s_matched[i] = t_matched[j] = True
                matches += 1
                break

    if matches == 0:
        return SimilarityScore(value=0.0)

    out_of_order = 0
    k = 0
    for i in range(n):
        if not s_matched[i]:
            continue
        while not t_matched[k]:
            k += 1
        if s[i] != t[k]:
            out_of_order += 1
        k += 1

    transpositions = out_of_order / 2
    value = (matches / n + matches / m + (matches - transpositions) / matches) / 3
    return SimilarityScore(value=value)


def jaro_winkler(
    S: SymbolsLike,
    T: SymbolsLike,
    p: Optional[float] = None,
    max_prefix: Optional[int] = None
) -> SimilarityScore:
    """
    Jaro-Winkler 유사도: jaro + ℓ·p·(1 - jaro)

    Args:
        p: 접두사 가중치 (0 ≤ p ≤ 0.25, 기본 settings.winkler_prefix_weight)
        max_prefix: 공통 접두사 길이 상한 ℓ (기본 settings.winkler_max_prefix)

    p·max_prefix ≤ 1이어야 값이 [0, 1]에 머문다.
    """
    p = settings.winkler_prefix_weight if p is None else p
    max_prefix = settings.winkler_max_prefix if max_prefix is None else max_prefix
    if not 0.0 <= p <= 0.25:
        raise InvalidArgumentError(f"p는 0 이상 0.25 이하여야 합니다: {p}")
    if max_prefix < 0:
        raise InvalidArgumentError(f"max_prefix는 0 이상이어야 합니다: {max_prefix}")
    if p * max_prefix > 1.0:
        raise InvalidArgumentError(f"p·max_prefix는 1 이하여야 합니다: p={p}, max_prefix={max_prefix}")

    base = jaro(S, T).value
    s = as_sequence(S).symbols
    t = as_sequence(T).symbols
    prefix = 0
    for a, b in zip(s[:max_prefix], t[:max_prefix]):
        if a != b:
            break
        prefix += 1

    return SimilarityScore(value=min(1.0, base + prefix * p * (1.0 - base)))


def lcs_similarity(S: SymbolsLike, T: SymbolsLike) -> SimilarityScore:
    """|LCS(S,T)| / max(n, m) (둘 다 비면 1)"""
    (s_ids, t_ids), _ = encode_symbols(S, T)
    n, m = len(s_ids), len(t_ids)
    if n == 0 and m == 0:
        return SimilarityScore(value=1.0)

    prev = np.zeros(m + 1, dtype=np.int64)
    for i in range(n):
        prev = dp.lcs_row(prev, s_ids[i], t_ids)
    return SimilarityScore(value=int(prev[-1]) / max(n, m))


# ============================================
# 벡터 기반 유사도
# ============================================

def _as_vector(values, name: str) -> np.ndarray:
    vector = np.asarray(values, dtype=np.float64)
    if vector.ndim != 1 or vector.size == 0:
        raise InvalidArgumentError(f"{name}는 비어 있지 않은 1차원 벡터여야 합니다.")
    if not np.all(np.isfinite(vector)):
        raise InvalidArgumentError(f"{name}에 유한하지 않은 값이 있습니다.")
    return vector


def cosine_similarity(u: Sequence[float], v: Sequence[float]) -> float:
    """⟨u,v⟩ / (‖u‖‖v‖), 반올림 오차 대비 [-1, 1]로 자름"""
    u = _as_vector(u, "u")
    v = _as_vector(v, "v")
    if u.shape != v.shape:
        raise InvalidArgumentError(f"벡터 차원이 다릅니다: {u.shape[0]} vs {v.shape[0]}")

    uu = float(np.dot(u, u))
    vv = float(np.dot(v, v))
    if uu == 0.0 or vv == 0.0:
        raise InvalidArgumentError("영벡터의 코사인 유사도는 정의되지 않습니다.")

    value = float(np.dot(u, v)) / math.sqrt(uu * vv)
    return min(1.0, max(-1.0, value))


def _unit_rows(matrix, name: str) -> np.ndarray:
    rows = np.asarray(matrix, dtype=np.float64)
    if rows.ndim != 2 or rows.shape[0] == 0 or rows.shape[1] == 0:
        raise InvalidArgumentError(f"{name}는 비어 있지 않은 2차원 행렬이어야 합니다.")
    norms = np.sqrt((rows * rows).sum(axis=1))
    if np.any(norms == 0.0):
        raise InvalidArgumentError(f"{name}에 영벡터 행이 있습니다: {int(np.argmin(norms))}행")
    return rows / norms[:, None]


def greedy_match_score(A, B) -> GreedyMatchScore:
    """
    토큰 임베딩 그리디 매칭 (IDF 가중치/기준선 보정 없음)

    recall = (1/n) Σ_i max_j cos(A_i, B_j)
    precision = (1/m) Σ_j max_i cos(A_i, B_j)
    """
    a = _unit_rows(A, "A")
    b = _unit_rows(B, "B")
    if a.shape[1] != b.shape[1]:
        raise InvalidArgumentError(f"임베딩 차원이 다릅니다: {a.shape[1]} vs {b.shape[1]}")

    # 원소별 곱의 합: 행 순서와 무관하게 각 쌍의 값이 같다
    table = np.clip((a[:, None, :] * b[None, :, :]).sum(axis=2), -1.0, 1.0)

    recall = math.fsum(table.max(axis=1)) / table.shape[0]
    precision = math.fsum(table.max(axis=0)) / table.shape[1]
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return GreedyMatchScore(precision=precision, recall=recall, f1=f1)


# ============================================
# 단어 벡터 저장소 기반
# ============================================

def word_similarity(store: EmbeddingStore, w1: str, w2: str) -> float:
    """저장소에서 찾은 두 단어 벡터의 코사인 유사도"""
    vectors = []
    for word in (w1, w2):
        vector = store.lookup(word)
        if vector is None:
            raise InvalidArgumentError(f"어휘에 없는 단어입니다: {word}")
        vectors.append(vector)
    return cosine_similarity(*vectors)


def text_similarity(store: EmbeddingStore, S: SymbolsLike, T: SymbolsLike, mode: str = "mean") -> float:
    """두 텍스트의 풀링 벡터 코사인 유사도"""
    return cosine_similarity(
        store.embed(as_sequence(S).symbols, mode),
        store.embed(as_sequence(T).symbols, mode)
    )


def _token_matrix(store: EmbeddingStore, tokens: SymbolsLike, name: str) -> np.ndarray:
    rows = [store.lookup(token) for token in as_sequence(tokens).symbols]
    rows = [row for row in rows if row is not None]
    if not rows:
        raise InvalidArgumentError(f"{name}에 어휘 안 토큰이 없습니다.")
    return np.vstack(rows)


def greedy_match_texts(store: EmbeddingStore, S: SymbolsLike, T: SymbolsLike) -> GreedyMatchScore:
    """토큰별 단어 벡터로 greedy_match_score 계산 (어휘 밖 토큰은 건너뜀)"""
    return greedy_match_score(_token_matrix(store, S, "S"), _token_matrix(store, T, "T"))
