"""Pydantic 스키마 정의"""

from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


# ============================================
# 점수/비용 파라미터
# ============================================

class CostModel(BaseModel):
    """편집 연산 가중치 (기본값: 단위 비용 Levenshtein)"""
    model_config = ConfigDict(frozen=True)

    insert_cost: float = Field(1.0, ge=0, allow_inf_nan=False)
    delete_cost: float = Field(1.0, ge=0, allow_inf_nan=False)
    substitute_cost: float = Field(1.0, ge=0, allow_inf_nan=False)
    transpose_cost: float = Field(1.0, ge=0, allow_inf_nan=False)
    match_cost: float = Field(0.0, allow_inf_nan=False)


class GapPenalty(BaseModel):
    """선형 갭 페널티 (최대화 시 음수가 페널티)"""
    model_config = ConfigDict(frozen=True)

    per_gap: float = Field(-1.0, allow_inf_nan=False)


# ============================================
# 정렬 결과
# ============================================

class ScoreMatrix(BaseModel):
    """DP 점수 행렬 ((n+1) x (m+1), 경계 행/열 포함)"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    cells: np.ndarray

    @field_validator("cells")
    @classmethod
    def _two_dimensional(cls, value: np.ndarray) -> np.ndarray:
        if value.ndim != 2:
            raise ValueError("점수 행렬은 2차원이어야 합니다.")
        return value

    @property
    def rows(self) -> int:
        return int(self.cells.shape[0])

    @property
    def cols(self) -> int:
        return int(self.cells.shape[1])


class AlignmentResult(BaseModel):
    """정렬 결과 (None = 갭)"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    aligned_a: List[Optional[str]]
    aligned_b: List[Optional[str]]
    score: float
    matrix: Optional[ScoreMatrix] = None

    @model_validator(mode="after")
    def _check_rows(self) -> "AlignmentResult":
        if len(self.aligned_a) != len(self.aligned_b):
            raise ValueError("정렬된 두 행의 길이가 다릅니다.")
        for a, b in zip(self.aligned_a, self.aligned_b):
            if a is None and b is None:
                raise ValueError("같은 열에 갭이 두 개 있습니다.")
        return self

    def stripped(self) -> Tuple[List[str], List[str]]:
        """갭을 제거한 두 행"""
        return (
            [a for a in self.aligned_a if a is not None],
            [b for b in self.aligned_b if b is not None],
        )


class WarpResult(BaseModel):
    """DTW 워프 경로와 총 비용"""
    model_config = ConfigDict(frozen=True)

    path: List[Tuple[int, int]]
    total_cost: float = Field(ge=0)


# ============================================
# 거리 / 유사도
# ============================================

class DistanceOutput(BaseModel):
    """거리 값 (전체 공간 모드에서만 행렬 포함)"""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: float
    matrix: Optional[ScoreMatrix] = None


class SimilarityScore(BaseModel):
    """유사도 값 (어휘 측도 [0,1], 코사인 [-1,1])"""
    model_config = ConfigDict(frozen=True)

    value: float


class GreedyMatchScore(BaseModel):
    """토큰 임베딩 그리디 매칭 점수"""
    model_config = ConfigDict(frozen=True)

    precision: float
    recall: float
    f1: float


# ============================================
# 검색
# ============================================

class MatchList(BaseModel):
    """패턴 출현 시작 위치 (0-based, 심볼 단위, 오름차순)"""
    model_config = ConfigDict(frozen=True)

    offsets: List[int]

    def __len__(self) -> int:
        return len(self.offsets)


class Neighbor(BaseModel):
    """kNN 결과 (점수가 클수록 가까움)"""
    model_config = ConfigDict(frozen=True)

    id: str
    score: float


# ============================================
# 출력 관련
# ============================================

class RenderOptions(BaseModel):
    """정렬 텍스트 출력 옵션"""
    model_config = ConfigDict(frozen=True)

    gap_symbol: str = Field("-", min_length=1)
    column_width: Optional[int] = Field(None, ge=1)   # None = auto
    line_wrap: int = Field(60, ge=1)                   # 블록당 열 수
    marker_row: bool = False                           # | 일치, . 불일치, 공백 갭
    separator: Optional[str] = None                    # None = auto

    @field_validator("gap_symbol")
    @classmethod
    def _not_blank(cls, value: str) -> str:
        if not value.strip():
            raise ValueError("gap_symbol은 공백만으로 구성될 수 없습니다.")
        return value


class CliOutput(BaseModel):
    """CLI json 출력"""
    method: str
    inputs: Dict[str, Any]
    result: Any
    elapsed_ms: float
