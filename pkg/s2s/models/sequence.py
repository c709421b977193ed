"""심볼 시퀀스 타입"""

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Tuple, Union
from typing import Sequence as SeqLike

import numpy as np

# 정렬 행의 갭 표시 (토큰은 항상 문자열이므로 None과 겹치지 않음)
GAP = None


@dataclass(frozen=True)
class Sequence:
    """
    비교 단위(심볼)의 순서 있는 목록

    - 문자 모드: 유니코드 스칼라 값 하나가 심볼 하나
    - 토큰 모드: 구분자로 나눈 토큰 하나가 심볼 하나
    - 심볼은 동등 비교만 사용 (순서 가정 없음)
    """

    symbols: Tuple[str, ...] = ()

    @classmethod
    def of(cls, symbols: Iterable[str]) -> "Sequence":
        """문자열 리스트로부터 생성 (토큰/문장 단위 비교용)"""
        return cls(tuple(symbols))

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Sequence(self.symbols[index])
        return self.symbols[index]

    @property
    def alphabet(self) -> frozenset:
        """입력에 등장한 심볼 집합 (Σ)"""
        return frozenset(self.symbols)

    def join(self, delimiter: str = "") -> str:
        return delimiter.join(self.symbols)


SymbolsLike = Union[Sequence, str, SeqLike[str]]


def as_sequence(value: SymbolsLike) -> Sequence:
    """str(문자 모드), 문자열 리스트, Sequence를 모두 Sequence로 변환"""
    if isinstance(value, Sequence):
        return value
    if isinstance(value, str):
        return Sequence(tuple(value))
    return Sequence(tuple(value))


def encode_symbols(*sequences: SymbolsLike) -> Tuple[List[np.ndarray], List[str]]:
    """
    여러 시퀀스를 공유 어휘의 정수 ID 배열로 변환

    Returns:
        (시퀀스별 int64 배열, ID → 심볼 목록)
    """
    vocab: Dict[str, int] = {}
    arrays = []
    for seq in sequences:
        seq = as_sequence(seq)
        ids = np.fromiter(
            (vocab.setdefault(symbol, len(vocab)) for symbol in seq.symbols),
            dtype=np.int64,
            count=len(seq)
        )
        arrays.append(ids)
    return arrays, list(vocab)
