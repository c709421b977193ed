"""정렬 점수 체계 (균일 점수 / 치환 행렬)"""

import math
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from s2s.errors import InvalidArgumentError
from s2s.models.schemas import GapPenalty


class ScoreLookup:
    """공유 어휘 ID 기반 점수 조회 (DP 행 단위 벡터화용)"""

    def row(self, s_id: int, t_ids: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def pair(self, a_id: int, b_id: int) -> float:
        raise NotImplementedError


class _UniformLookup(ScoreLookup):
    def __init__(self, match: float, mismatch: float):
        self.match = match
        self.mismatch = mismatch

    def row(self, s_id: int, t_ids: np.ndarray) -> np.ndarray:
        return np.where(t_ids == s_id, self.match, self.mismatch)

    def pair(self, a_id: int, b_id: int) -> float:
        return self.match if a_id == b_id else self.mismatch


class _TableLookup(ScoreLookup):
    def __init__(self, table: np.ndarray, index: np.ndarray):
        # table: 알파벳 밖 심볼용 기본 점수 행/열이 마지막에 붙은 확장 표
        self.table = table
        self.index = index

    def row(self, s_id: int, t_ids: np.ndarray) -> np.ndarray:
        return self.table[self.index[s_id]][self.index[t_ids]]

    def pair(self, a_id: int, b_id: int) -> float:
        return float(self.table[self.index[a_id], self.index[b_id]])


class UniformScoring(BaseModel):
    """score(a,a)=match, score(a,b)=mismatch"""
    model_config = ConfigDict(frozen=True)

    match: float = Field(1.0, allow_inf_nan=False)
    mismatch: float = Field(-1.0, allow_inf_nan=False)

    def score(self, a: str, b: str) -> float:
        return self.match if a == b else self.mismatch

    def lookup(self, vocab: Sequence[str]) -> ScoreLookup:
        return _UniformLookup(self.match, self.mismatch)


class SubstitutionMatrix:
    """
    심볼 쌍별 치환 점수 표 (BLOSUM 등)

    - alphabet: 헤더 심볼 순서
    - scores: 정방 행렬, scores[i][j] = score(alphabet[i], alphabet[j])
    - default_score: 알파벳 밖 쌍의 점수 (미지정 시 표 최솟값)
    """

    def __init__(
        self,
        alphabet: Iterable[str],
        scores: Union[np.ndarray, List[List[float]]],
        default_score: Optional[float] = None
    ):
        self.alphabet: Tuple[str, ...] = tuple(alphabet)
        table = np.array(scores, dtype=np.float64)

        if len(set(self.alphabet)) != len(self.alphabet):
            raise InvalidArgumentError("치환 행렬 알파벳에 중복 심볼이 있습니다.")
        if table.shape != (len(self.alphabet), len(self.alphabet)):
            raise InvalidArgumentError(
                f"치환 행렬 크기 {table.shape}가 알파벳 크기 {len(self.alphabet)}와 맞지 않습니다."
            )
        if not np.all(np.isfinite(table)):
            raise InvalidArgumentError("치환 행렬에 유한하지 않은 값이 있습니다.")

        if default_score is None:
            default_score = float(table.min()) if table.size else 0.0
        if not math.isfinite(default_score):
            raise InvalidArgumentError("default_score는 유한해야 합니다.")

        self.scores = table
        self.scores.setflags(write=False)
        self.default_score = float(default_score)
        self._position: Dict[str, int] = {symbol: i for i, symbol in enumerate(self.alphabet)}

    @classmethod
    def identity(cls, alphabet: Iterable[str], match: float, mismatch: float) -> "SubstitutionMatrix":
        alphabet = tuple(alphabet)
        size = len(alphabet)
        table = np.full((size, size), mismatch, dtype=np.float64)
        np.fill_diagonal(table, match)
        return cls(alphabet, table, default_score=mismatch)

    def score(self, a: str, b: str) -> float:
        i = self._position.get(a)
        j = self._position.get(b)
        if i is None or j is None:
            return self.default_score
        return float(self.scores[i, j])

    def __getitem__(self, pair: Tuple[str, str]) -> float:
        return self.score(*pair)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubstitutionMatrix):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and np.array_equal(self.scores, other.scores)
            and self.default_score == other.default_score
        )

    def __repr__(self) -> str:
        return f"SubstitutionMatrix(alphabet={''.join(self.alphabet)!r}, default={self.default_score})"

    def lookup(self, vocab: Sequence[str]) -> ScoreLookup:
        size = len(self.alphabet)
        table = np.full((size + 1, size + 1), self.default_score, dtype=np.float64)
        table[:size, :size] = self.scores
        index = np.fromiter(
            (self._position.get(symbol, size) for symbol in vocab),
            dtype=np.int64,
            count=len(vocab)
        )
        return _TableLookup(table, index)


Scoring = Union[UniformScoring, SubstitutionMatrix]


def uniform_scoring(match: float, mismatch: float, gap: float) -> Tuple[UniformScoring, GapPenalty]:
    """
    균일 점수 체계 생성

    Args:
        match: 일치 점수
        mismatch: 불일치 점수
        gap: 갭 하나당 페널티

    Returns:
        (점수 체계, 갭 페널티)
    """
    return UniformScoring(match=match, mismatch=mismatch), GapPenalty(per_gap=gap)
