"""쌍별 정렬 서비스 (전역/지역/Hirschberg/LCSubstring/LCSubsequence/DTW)"""

import logging
import numbers
from typing import Any, Callable, List, Optional, Sequence, Set, Tuple

import numpy as np

from s2s.config import settings
from s2s.errors import InvalidArgumentError
from s2s.models.schemas import AlignmentResult, GapPenalty, ScoreMatrix, WarpResult
from s2s.models.scoring import ScoreLookup, Scoring, uniform_scoring
from s2s.models.sequence import GAP, SymbolsLike, as_sequence, encode_symbols
from s2s.utils import dp

logger = logging.getLogger(__name__)

_GAP_ID = -1

DTW_SPACE_MODES = ("full", "linear")


def _resolve_scoring(
    scoring: Optional[Scoring],
    gap: Optional[GapPenalty]
) -> Tuple[Scoring, GapPenalty]:
    default_scoring, default_gap = uniform_scoring(
        settings.match_score, settings.mismatch_score, settings.gap_penalty
    )
    return scoring or default_scoring, gap or default_gap


def _decode(ids: List[int], vocab: List[str]) -> List[Optional[str]]:
    return [GAP if i == _GAP_ID else vocab[i] for i in ids]


def _traceback_global(
    H: np.ndarray,
    s_ids: np.ndarray,
    t_ids: np.ndarray,
    lookup: ScoreLookup,
    gap: float
) -> Tuple[List[int], List[int]]:
    """전역 정렬 역추적 (동점 시 대각 > 위 > 왼쪽)"""
    i, j = len(s_ids), len(t_ids)
    out_a: List[int] = []
    out_b: List[int] = []

    while i > 0 or j > 0:
        if i > 0 and j > 0:
            diag = H[i - 1, j - 1] + lookup.pair(s_ids[i - 1], t_ids[j - 1])
            up = H[i - 1, j] + gap
            left = H[i, j - 1] + gap
            best = max(diag, up, left)
            move = "diag" if diag == best else ("up" if up == best else "left")
        else:
            move = "up" if i > 0 else "left"

        if move == "diag":
            out_a.append(int(s_ids[i - 1]))
            out_b.append(int(t_ids[j - 1]))
            i, j = i - 1, j - 1
        elif move == "up":
            out_a.append(int(s_ids[i - 1]))
            out_b.append(_GAP_ID)
            i -= 1
        else:
            out_a.append(_GAP_ID)
            out_b.append(int(t_ids[j - 1]))
            j -= 1

    out_a.reverse()
    out_b.reverse()
    return out_a, out_b


def _global_matrix(s_ids, t_ids, lookup: ScoreLookup, gap: float) -> np.ndarray:
    n, m = len(s_ids), len(t_ids)
    H = dp.new_matrix(n + 1, m + 1)
    H[0] = dp.nw_first_row(m, gap)
    for i in range(1, n + 1):
        H[i] = dp.nw_row(H[i - 1], i, s_ids[i - 1], t_ids, lookup, gap)
    return H


def global_align(
    S: SymbolsLike,
    T: SymbolsLike,
    scoring: Optional[Scoring] = None,
    gap: Optional[GapPenalty] = None,
    keep_matrix: bool = False
) -> AlignmentResult:
    """
    Needleman-Wunsch 전역 정렬

    Args:
        S, T: 정렬할 시퀀스
        scoring: 균일 점수 또는 치환 행렬 (기본: settings의 match/mismatch)
        gap: 선형 갭 페널티
        keep_matrix: 점수 행렬 포함 여부

    Returns:
        최적 전역 정렬 하나 (동점 시 대각 > 위 > 왼쪽)
    """
    scoring, gap = _resolve_scoring(scoring, gap)
    (s_ids, t_ids), vocab = encode_symbols(S, T)
    lookup = scoring.lookup(vocab)

    H = _global_matrix(s_ids, t_ids, lookup, gap.per_gap)
    out_a, out_b = _traceback_global(H, s_ids, t_ids, lookup, gap.per_gap)

    return AlignmentResult(
        aligned_a=_decode(out_a, vocab),
        aligned_b=_decode(out_b, vocab),
        score=float(H[-1, -1]),
        matrix=ScoreMatrix(cells=H) if keep_matrix else None
    )


# ============================================
# Hirschberg (선형 공간 전역 정렬)
# ============================================

def _nw_last_row(s_ids, t_ids, lookup: ScoreLookup, gap: float) -> np.ndarray:
    """두 행만 유지하며 마지막 행 계산"""
    prev = dp.nw_first_row(len(t_ids), gap)
    for i in range(1, len(s_ids) + 1):
        prev = dp.nw_row(prev, i, s_ids[i - 1], t_ids, lookup, gap)
    return prev


def _hirschberg(s_ids, t_ids, lookup: ScoreLookup, gap: float, out_a: List[int], out_b: List[int]) -> None:
    n, m = len(s_ids), len(t_ids)

    if n == 0:
        out_a.extend([_GAP_ID] * m)
        out_b.extend(int(t) for t in t_ids)
        return
    if m == 0:
        out_a.extend(int(s) for s in s_ids)
        out_b.extend([_GAP_ID] * n)
        return
    if n == 1:
        H = _global_matrix(s_ids, t_ids, lookup, gap)
        a, b = _traceback_global(H, s_ids, t_ids, lookup, gap)
        del H
        out_a.extend(a)
        out_b.extend(b)
        return

    mid = n // 2
    forward = _nw_last_row(s_ids[:mid], t_ids, lookup, gap)
    backward = _nw_last_row(s_ids[mid:][::-1], t_ids[::-1], lookup, gap)
    split = int(np.argmax(forward + backward[::-1]))
    del forward, backward

    _hirschberg(s_ids[:mid], t_ids[:split], lookup, gap, out_a, out_b)
    _hirschberg(s_ids[mid:], t_ids[split:], lookup, gap, out_a, out_b)


def hirschberg_align(
    S: SymbolsLike,
    T: SymbolsLike,
    scoring: Optional[Scoring] = None,
    gap: Optional[GapPenalty] = None
) -> AlignmentResult:
    """
    Hirschberg 분할 정복 전역 정렬: O(m) 보조 공간

    점수는 global_align과 같은 행 계산으로 구하므로 정확히 일치한다.
    정렬 자체는 다른 최적 정렬일 수 있다.
    """
    scoring, gap = _resolve_scoring(scoring, gap)
    (s_ids, t_ids), vocab = encode_symbols(S, T)
    lookup = scoring.lookup(vocab)

    out_a: List[int] = []
    out_b: List[int] = []
    _hirschberg(s_ids, t_ids, lookup, gap.per_gap, out_a, out_b)

    last = _nw_last_row(s_ids, t_ids, lookup, gap.per_gap)
    score = float(last[-1])

    return AlignmentResult(
        aligned_a=_decode(out_a, vocab),
        aligned_b=_decode(out_b, vocab),
        score=score
    )


# ============================================
# Smith-Waterman (지역 정렬)
# ============================================

def local_align(
    S: SymbolsLike,
    T: SymbolsLike,
    scoring: Optional[Scoring] = None,
    gap: Optional[GapPenalty] = None,
    keep_matrix: bool = False
) -> AlignmentResult:
    """
    Smith-Waterman 지역 정렬

    최고 점수 셀(동점 시 행 우선 순서의 첫 셀)에서 0인 셀까지 역추적한다.
    양수 점수 셀이 없으면 빈 정렬, 점수 0.
    """
    scoring, gap = _resolve_scoring(scoring, gap)
    g = gap.per_gap
    (s_ids, t_ids), vocab = encode_symbols(S, T)
    lookup = scoring.lookup(vocab)
    n, m = len(s_ids), len(t_ids)

    H = dp.new_matrix(n + 1, m + 1)
    for i in range(1, n + 1):
        H[i] = dp.sw_row(H[i - 1], s_ids[i - 1], t_ids, lookup, g)

    flat = int(np.argmax(H))
    i, j = divmod(flat, m + 1)
    score = float(H[i, j])
    matrix = ScoreMatrix(cells=H) if keep_matrix else None

    if score <= 0:
        return AlignmentResult(aligned_a=[], aligned_b=[], score=0.0, matrix=matrix)

    out_a: List[int] = []
    out_b: List[int] = []
    while i > 0 and j > 0 and H[i, j] > 0:
        diag = H[i - 1, j - 1] + lookup.pair(s_ids[i - 1], t_ids[j - 1])
        up = H[i - 1, j] + g
        left = H[i, j - 1] + g
        best = max(diag, up, left)
        if diag == best:
            out_a.append(int(s_ids[i - 1]))
            out_b.append(int(t_ids[j - 1]))
            i, j = i - 1, j - 1
        elif up == best:
            out_a.append(int(s_ids[i - 1]))
            out_b.append(_GAP_ID)
            i -= 1
        else:
            out_a.append(_GAP_ID)
            out_b.append(int(t_ids[j - 1]))
            j -= 1

    out_a.reverse()
    out_b.reverse()
    return AlignmentResult(
        aligned_a=_decode(out_a, vocab),
        aligned_b=_decode(out_b, vocab),
        score=score,
        matrix=matrix
    )


def score_alignment(result: AlignmentResult, scoring: Optional[Scoring] = None, gap: Optional[GapPenalty] = None) -> float:
    """정렬 결과를 열 단위로 다시 채점"""
    scoring, gap = _resolve_scoring(scoring, gap)
    total = 0.0
    for a, b in zip(result.aligned_a, result.aligned_b):
        if a is GAP or b is GAP:
            total += gap.per_gap
        else:
            total += scoring.score(a, b)
    return total


# ============================================
# 최장 공통 부분문자열 / 부분열
# ============================================

def longest_common_substring(S: SymbolsLike, T: SymbolsLike) -> Tuple[int, Set[Tuple[str, ...]]]:
    """
    최장 공통 연속 부분문자열

    Returns:
        (길이, 길이를 달성하는 서로 다른 부분문자열 전체 집합)
    """
    S = as_sequence(S)
    (s_ids, t_ids), _ = encode_symbols(S, T)

    best = 0
    ends: List[int] = []
    prev = np.zeros(len(t_ids) + 1, dtype=np.int64)
    for i in range(1, len(s_ids) + 1):
        cur = dp.run_row(prev, s_ids[i - 1], t_ids)
        row_max = int(cur.max())
        if row_max > best:
            best = row_max
            ends = [i]
        elif row_max == best and best > 0:
            ends.append(i)
        prev = cur

    witnesses = {S.symbols[end - best:end] for end in ends}
    return best, witnesses


def longest_common_subsequence(S: SymbolsLike, T: SymbolsLike) -> Tuple[int, List[str]]:
    """
    최장 공통 부분열

    Returns:
        (길이, 역추적으로 얻은 LCS 하나)
    """
    S = as_sequence(S)
    (s_ids, t_ids), _ = encode_symbols(S, T)
    n, m = len(s_ids), len(t_ids)

    L = dp.new_matrix(n + 1, m + 1, dtype=np.int64)
    for i in range(1, n + 1):
        L[i] = dp.lcs_row(L[i - 1], s_ids[i - 1], t_ids)

    witness: List[str] = []
    i, j = n, m
    while i > 0 and j > 0:
        if s_ids[i - 1] == t_ids[j - 1]:
            witness.append(S.symbols[i - 1])
            i, j = i - 1, j - 1
        elif L[i - 1, j] >= L[i, j - 1]:
            i -= 1
        else:
            j -= 1
    witness.reverse()
    return int(L[n, m]), witness


# ============================================
# DTW
# ============================================

def _is_numeric(values: Sequence[Any]) -> bool:
    return not isinstance(values, str) and all(
        isinstance(v, (numbers.Real, np.number)) and not isinstance(v, bool) for v in values
    )


class _CostGrid:
    """DTW 셀 비용을 행 단위로 생성"""

    def __init__(self, S: Sequence[Any], T: Sequence[Any], local_cost: Optional[Callable[[Any, Any], float]]):
        self.S = S
        self.T = T
        self.local_cost = local_cost
        if local_cost is not None:
            self.kind = "custom"
        elif _is_numeric(S) and _is_numeric(T):
            self.kind = "numeric"
            self.s_values = np.asarray(S, dtype=np.float64)
            self.t_values = np.asarray(T, dtype=np.float64)
        else:
            self.kind = "symbol"
            (self.s_ids, self.t_ids), _ = encode_symbols(
                as_sequence(S) if isinstance(S, str) else [str(v) for v in S],
                as_sequence(T) if isinstance(T, str) else [str(v) for v in T]
            )

    def row(self, i: int, c0: int, c1: int, reverse: bool = False) -> np.ndarray:
        """S[i] 대 T[c0..c1] 비용 (reverse면 열 역순)"""
        if self.kind == "numeric":
            cost = np.abs(self.t_values[c0:c1 + 1] - self.s_values[i])
        elif self.kind == "symbol":
            cost = (self.t_ids[c0:c1 + 1] != self.s_ids[i]).astype(np.float64)
        else:
            a = self.S[i]
            cost = np.fromiter(
                (self.local_cost(a, self.T[j]) for j in range(c0, c1 + 1)),
                dtype=np.float64,
                count=c1 - c0 + 1
            )
        if cost.size and not (np.all(np.isfinite(cost)) and cost.min() >= 0):
            raise InvalidArgumentError("DTW 로컬 비용은 유한한 음이 아닌 값이어야 합니다.")
        return cost[::-1] if reverse else cost


def _dtw_forward(grid: _CostGrid, r0: int, r1: int, c0: int, c1: int, reverse: bool = False) -> np.ndarray:
    """
    두 행만 유지하는 DTW 전진 계산

    reverse=False: (r0,c0)에서 행 r1의 각 열까지의 최소 비용
    reverse=True: (r1,c1)에서 역방향으로 행 r0의 각 열까지 (열 역순으로 반환)
    """
    rows = range(r1, r0 - 1, -1) if reverse else range(r0, r1 + 1)
    prev = None
    for i in rows:
        prev = dp.dtw_row(prev, grid.row(i, c0, c1, reverse=reverse))
    return prev


def _dtw_path(grid: _CostGrid, r0: int, r1: int, c0: int, c1: int, path: List[Tuple[int, int]]) -> None:
    if r0 == r1:
        path.extend((r0, j) for j in range(c0, c1 + 1))
        return
    if c0 == c1:
        path.extend((i, c0) for i in range(r0, r1 + 1))
        return

    mid = (r0 + r1) // 2
    head = _dtw_forward(grid, r0, mid, c0, c1)
    tail = _dtw_forward(grid, mid + 1, r1, c0, c1, reverse=True)[::-1]

    # 행 mid → mid+1 전이: 수직 (j, j) 또는 대각 (j, j+1)
    vertical = head + tail
    diagonal = head[:-1] + tail[1:]
    jv = int(np.argmin(vertical))
    jd = int(np.argmin(diagonal))
    if diagonal[jd] <= vertical[jv]:
        left_end, right_start = jd, jd + 1
    else:
        left_end, right_start = jv, jv
    del head, tail, vertical, diagonal

    _dtw_path(grid, r0, mid, c0, c0 + left_end, path)
    _dtw_path(grid, mid + 1, r1, c0 + right_start, c1, path)


def dtw(
    S: Sequence[Any],
    T: Sequence[Any],
    local_cost: Optional[Callable[[Any, Any], float]] = None,
    space_mode: str = "full"
) -> WarpResult:
    """
    동적 시간 워핑

    Args:
        S, T: 수치 시퀀스(기본 비용 |a-b|) 또는 심볼 시퀀스(기본 비용 0/1)
        local_cost: 음이 아닌 쌍별 비용 함수
        space_mode: full (전체 행렬) / linear (중간 행 분할 정복, O(m) 셀)

    Returns:
        (0,0)에서 (n-1,m-1)까지의 최적 워프 경로와 총 비용
    """
    if len(S) == 0 or len(T) == 0:
        raise InvalidArgumentError("DTW 입력 시퀀스는 비어 있을 수 없습니다.")
    if space_mode not in DTW_SPACE_MODES:
        raise InvalidArgumentError(f"지원하지 않는 space_mode입니다: {space_mode}")

    grid = _CostGrid(S, T, local_cost)
    n, m = len(S), len(T)

    if space_mode == "linear":
        last = _dtw_forward(grid, 0, n - 1, 0, m - 1)
        total = float(last[-1])
        del last
        path: List[Tuple[int, int]] = []
        _dtw_path(grid, 0, n - 1, 0, m - 1, path)
        return WarpResult(path=path, total_cost=total)

    D = dp.new_matrix(n, m)
    prev = None
    for i in range(n):
        D[i] = dp.dtw_row(prev, grid.row(i, 0, m - 1))
        prev = D[i]

    # 역추적 (동점 시 대각 > 위 > 왼쪽)
    i, j = n - 1, m - 1
    path = [(i, j)]
    while i > 0 or j > 0:
        if i == 0:
            j -= 1
        elif j == 0:
            i -= 1
        else:
            diag, up, left = D[i - 1, j - 1], D[i - 1, j], D[i, j - 1]
            best = min(diag, up, left)
            if diag == best:
                i, j = i - 1, j - 1
            elif up == best:
                i -= 1
            else:
                j -= 1
        path.append((i, j))
    path.reverse()

    return WarpResult(path=path, total_cost=float(D[-1, -1]))
