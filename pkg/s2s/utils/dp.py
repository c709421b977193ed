"""DP 행 단위 점화식

각 함수는 이전 행으로부터 다음 행 하나를 계산한다. 위/대각 항은 numpy로 한 번에
구하고, 행 내부의 왼쪽 의존성(H[i][j-1] 항)은 numba 커널이 j 순서대로 갱신한다.
셀마다 점화식과 같은 부동소수 연산을 같은 순서로 하므로 비정수 가중치에서도
하향식 재귀와 값이 비트 단위로 같다.

행/행렬 버퍼는 new_row / new_matrix로만 할당한다 (활성 프로브가 보유 셀 수를 센다).
"""

from typing import Optional

import numba as nb
import numpy as np

from s2s.models.schemas import CostModel
from s2s.models.scoring import ScoreLookup
from s2s.utils.instrument import track

jitkw = {
    "nopython": True,
    "nogil": True,
    "cache": False,
    "error_model": "numpy",
}


def new_row(width: int) -> np.ndarray:
    return track(np.empty(width, dtype=np.float64))


def new_matrix(rows: int, cols: int, dtype=np.float64) -> np.ndarray:
    return track(np.zeros((rows, cols), dtype=dtype))


@nb.jit(**jitkw)
def _sweep_max(row, step):
    for j in range(1, row.shape[0]):
        left = row[j - 1] + step
        if left > row[j]:
            row[j] = left


@nb.jit(**jitkw)
def _sweep_min(row, step):
    for j in range(1, row.shape[0]):
        left = row[j - 1] + step
        if left < row[j]:
            row[j] = left


@nb.jit(**jitkw)
def _dtw_first(row, cost):
    row[0] = cost[0]
    for j in range(1, row.shape[0]):
        row[j] = cost[j] + row[j - 1]


@nb.jit(**jitkw)
def _dtw_fill(row, prev, cost):
    row[0] = cost[0] + prev[0]
    for j in range(1, row.shape[0]):
        row[j] = cost[j] + min(prev[j], prev[j - 1], row[j - 1])


# ============================================
# 정렬 (최대화)
# ============================================

def nw_first_row(m: int, gap: float) -> np.ndarray:
    row = new_row(m + 1)
    row[:] = np.arange(m + 1, dtype=np.float64) * gap
    return row


def nw_row(
    prev: np.ndarray,
    i: int,
    s_id: int,
    t_ids: np.ndarray,
    lookup: ScoreLookup,
    gap: float
) -> np.ndarray:
    """Needleman-Wunsch: H[i][j] = max(대각+s, 위+gap, 왼쪽+gap), H[i][0] = i*gap"""
    row = new_row(prev.shape[0])
    row[0] = i * gap
    np.maximum(prev[:-1] + lookup.row(s_id, t_ids), prev[1:] + gap, out=row[1:])
    _sweep_max(row, float(gap))
    return row


def sw_row(
    prev: np.ndarray,
    s_id: int,
    t_ids: np.ndarray,
    lookup: ScoreLookup,
    gap: float
) -> np.ndarray:
    """Smith-Waterman: nw_row에 0 하한 추가"""
    row = new_row(prev.shape[0])
    row[0] = 0.0
    np.maximum(prev[:-1] + lookup.row(s_id, t_ids), prev[1:] + gap, out=row[1:])
    np.maximum(row, 0.0, out=row)
    _sweep_max(row, float(gap))
    return row


# ============================================
# 편집 거리 (최소화)
# ============================================

def edit_first_row(m: int, costs: CostModel) -> np.ndarray:
    row = new_row(m + 1)
    row[:] = np.arange(m + 1, dtype=np.float64) * costs.insert_cost
    return row


def edit_row(
    prev: np.ndarray,
    i: int,
    s_id: int,
    t_ids: np.ndarray,
    costs: CostModel,
    prev2: Optional[np.ndarray] = None,
    prev_s_id: Optional[int] = None
) -> np.ndarray:
    """
    Wagner-Fischer 행 (prev2가 있으면 OSA 인접 전치 항 포함)

    D[i][j] = min(D[i-1][j]+del, D[i][j-1]+ins, D[i-1][j-1]+(match|sub),
                  D[i-2][j-2]+transpose  if S_i=T_{j-1} and S_{i-1}=T_j)
    """
    diag_cost = np.where(t_ids == s_id, costs.match_cost, costs.substitute_cost)
    row = new_row(prev.shape[0])
    row[0] = i * costs.delete_cost
    np.minimum(prev[1:] + costs.delete_cost, prev[:-1] + diag_cost, out=row[1:])

    if prev2 is not None and t_ids.shape[0] >= 2:
        swap = (t_ids[:-1] == s_id) & (t_ids[1:] == prev_s_id)
        row[2:] = np.where(
            swap,
            np.minimum(row[2:], prev2[:-2] + costs.transpose_cost),
            row[2:]
        )

    _sweep_min(row, float(costs.insert_cost))
    return row


# ============================================
# 최장 공통 부분열/부분문자열 (정수 셀)
# ============================================

def lcs_row(prev: np.ndarray, s_id: int, t_ids: np.ndarray) -> np.ndarray:
    """L[i][j] = max(L[i-1][j], L[i][j-1], L[i-1][j-1] + [S_i = T_j])"""
    base = np.empty_like(prev)
    base[0] = 0
    base[1:] = np.maximum(prev[1:], prev[:-1] + (t_ids == s_id))
    return np.maximum.accumulate(base)


def run_row(prev: np.ndarray, s_id: int, t_ids: np.ndarray) -> np.ndarray:
    """공통 접미 길이: R[i][j] = R[i-1][j-1]+1 if S_i = T_j else 0"""
    cur = np.zeros_like(prev)
    cur[1:] = np.where(t_ids == s_id, prev[:-1] + 1, 0)
    return cur


# ============================================
# DTW (최소화, 셀 비용 가변)
# ============================================

def dtw_row(prev: Optional[np.ndarray], cost: np.ndarray) -> np.ndarray:
    """
    D[i][j] = c(i,j) + min(D[i-1][j], D[i-1][j-1], D[i][j-1])

    prev가 None이면 첫 행 (왼쪽 누적).
    """
    row = new_row(cost.shape[0])
    cost = np.ascontiguousarray(cost, dtype=np.float64)
    if prev is None:
        _dtw_first(row, cost)
    else:
        _dtw_fill(row, prev, cost)
    return row
