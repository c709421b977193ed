"""거리 측도 서비스 (Levenshtein / Hamming / Damerau-Levenshtein / Jaccard)"""

import logging
import sys
from functools import lru_cache
from typing import Optional

import numpy as np

from s2s.errors import InvalidArgumentError
from s2s.models.schemas import CostModel, DistanceOutput, ScoreMatrix
from s2s.models.sequence import SymbolsLike, as_sequence, encode_symbols
from s2s.utils import dp

logger = logging.getLogger(__name__)

LEVENSHTEIN_SPACE_MODES = ("full", "two_row")
DAMERAU_SPACE_MODES = ("full", "reduced")


def _check_mode(space_mode: str, allowed) -> None:
    if space_mode not in allowed:
        raise InvalidArgumentError(f"지원하지 않는 space_mode입니다: {space_mode} (허용: {', '.join(allowed)})")


def levenshtein(
    S: SymbolsLike,
    T: SymbolsLike,
    costs: Optional[CostModel] = None,
    space_mode: str = "full"
) -> DistanceOutput:
    """
    가중 Levenshtein 거리 (Wagner-Fischer)

    Args:
        S, T: 비교할 시퀀스
        costs: 편집 연산 가중치 (기본: 단위 비용)
        space_mode: full (행렬 포함) / two_row (두 행만 유지, 행렬 없음)
    """
    _check_mode(space_mode, LEVENSHTEIN_SPACE_MODES)
    costs = costs or CostModel()
    (s_ids, t_ids), _ = encode_symbols(S, T)
    n, m = len(s_ids), len(t_ids)

    if space_mode == "two_row":
        prev = dp.edit_first_row(m, costs)
        for i in range(1, n + 1):
            prev = dp.edit_row(prev, i, s_ids[i - 1], t_ids, costs)
        return DistanceOutput(value=float(prev[-1]))

    D = dp.new_matrix(n + 1, m + 1)
    D[0] = dp.edit_first_row(m, costs)
    for i in range(1, n + 1):
        D[i] = dp.edit_row(D[i - 1], i, s_ids[i - 1], t_ids, costs)
    return DistanceOutput(value=float(D[n, m]), matrix=ScoreMatrix(cells=D))


def levenshtein_memoized(S: SymbolsLike, T: SymbolsLike, costs: Optional[CostModel] = None) -> float:
    """
    접두사에 대한 하향식 메모이제이션 재귀

    DP와 같은 값을 돌려준다. n+m이 재귀 한도를 넘으면 InvalidArgumentError.
    """
    costs = costs or CostModel()
    S, T = as_sequence(S).symbols, as_sequence(T).symbols
    budget = sys.getrecursionlimit() // 4
    if len(S) + len(T) > budget:
        raise InvalidArgumentError(f"입력 길이 합 {len(S) + len(T)}이 재귀 한도 {budget}를 넘습니다.")

    @lru_cache(maxsize=None)
    def solve(i: int, j: int) -> float:
        if i == 0:
            return j * costs.insert_cost
        if j == 0:
            return i * costs.delete_cost
        step = costs.match_cost if S[i - 1] == T[j - 1] else costs.substitute_cost
        return min(
            solve(i - 1, j) + costs.delete_cost,
            solve(i, j - 1) + costs.insert_cost,
            solve(i - 1, j - 1) + step
        )

    return float(solve(len(S), len(T)))


def hamming(S: SymbolsLike, T: SymbolsLike) -> DistanceOutput:
    """같은 길이 두 시퀀스에서 심볼이 다른 위치의 수"""
    (s_ids, t_ids), _ = encode_symbols(S, T)
    if len(s_ids) != len(t_ids):
        raise InvalidArgumentError(
            f"Hamming 거리는 길이가 같아야 합니다: len(S)={len(s_ids)}, len(T)={len(t_ids)}"
        )
    return DistanceOutput(value=float(np.count_nonzero(s_ids != t_ids)))


def damerau_levenshtein(
    S: SymbolsLike,
    T: SymbolsLike,
    costs: Optional[CostModel] = None,
    space_mode: str = "full"
) -> DistanceOutput:
    """
    제한형 Damerau-Levenshtein (OSA): 인접 전치 1회를 한 연산으로 계산

    space_mode: full (행렬 포함) / reduced (세 행만 유지)
    """
    _check_mode(space_mode, DAMERAU_SPACE_MODES)
    costs = costs or CostModel()
    (s_ids, t_ids), _ = encode_symbols(S, T)
    n, m = len(s_ids), len(t_ids)

    if space_mode == "reduced":
        prev2 = None
        prev = dp.edit_first_row(m, costs)
        for i in range(1, n + 1):
            cur = dp.edit_row(
                prev, i, s_ids[i - 1], t_ids, costs,
                prev2=prev2, prev_s_id=s_ids[i - 2] if i >= 2 else None
            )
            prev2, prev = prev, cur
        return DistanceOutput(value=float(prev[-1]))

    D = dp.new_matrix(n + 1, m + 1)
    D[0] = dp.edit_first_row(m, costs)
    for i in range(1, n + 1):
        D[i] = dp.edit_row(
            D[i - 1], i, s_ids[i - 1], t_ids, costs,
            prev2=D[i - 2] if i >= 2 else None,
            prev_s_id=s_ids[i - 2] if i >= 2 else None
        )
    return DistanceOutput(value=float(D[n, m]), matrix=ScoreMatrix(cells=D))


def jaccard_ratio(S: SymbolsLike, T: SymbolsLike) -> float:
    """|set(S) ∩ set(T)| / |set(S) ∪ set(T)| (둘 다 비면 1)"""
    a = as_sequence(S).alphabet
    b = as_sequence(T).alphabet
    union = len(a | b)
    if union == 0:
        return 1.0
    return len(a & b) / union


def jaccard_distance(S: SymbolsLike, T: SymbolsLike) -> DistanceOutput:
    """1 - Jaccard 유사도 (둘 다 비면 0)"""
    return DistanceOutput(value=1.0 - jaccard_ratio(S, T))
