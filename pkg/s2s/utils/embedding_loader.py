"""단어 벡터 파일 로딩 유틸리티 (GloVe / fastText 텍스트 형식)"""

import io
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, TextIO, Union

import numpy as np

from s2s.errors import InvalidArgumentError, ParseError

logger = logging.getLogger(__name__)

POOL_MODES = ("mean", "last")


def pool(vectors: Sequence[Sequence[float]], mode: str = "mean") -> np.ndarray:
    """
    토큰 벡터들을 텍스트 벡터 하나로 합침

    Args:
        vectors: 같은 차원의 벡터 목록 (비어 있으면 안 됨)
        mode: mean (원소별 평균) / last (마지막 토큰 벡터)
    """
    if mode not in POOL_MODES:
        raise InvalidArgumentError(f"지원하지 않는 풀링 모드입니다: {mode}")
    if len(vectors) == 0:
        raise InvalidArgumentError("풀링할 벡터가 없습니다.")
    dims = {len(v) for v in vectors}
    if len(dims) != 1:
        raise InvalidArgumentError(f"벡터 차원이 일정하지 않습니다: {sorted(dims)}")

    stacked = np.asarray(vectors, dtype=np.float64)
    if mode == "last":
        return stacked[-1].copy()
    return stacked.mean(axis=0)


class EmbeddingStore:
    """
    단어 → 벡터 저장소 (로드 후 읽기 전용)

    - dimension: 벡터 차원 E
    - duplicates: 로드 중 덮어쓴 중복 단어 수 (마지막 항목 우선)
    """

    def __init__(self, dimension: int, entries: Optional[Dict[str, np.ndarray]] = None, duplicates: int = 0):
        if dimension < 1:
            raise InvalidArgumentError("임베딩 차원은 1 이상이어야 합니다.")
        self.dimension = dimension
        self.entries: Dict[str, np.ndarray] = {}
        self.duplicates = duplicates
        for word, vector in (entries or {}).items():
            vector = np.asarray(vector, dtype=np.float64)
            if vector.shape != (dimension,):
                raise InvalidArgumentError(f"'{word}' 벡터 차원이 {dimension}이 아닙니다.")
            vector.setflags(write=False)
            self.entries[word] = vector

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, word: str) -> bool:
        return word in self.entries

    def lookup(self, word: str) -> Optional[np.ndarray]:
        """정확히 일치하는 단어의 벡터 (없으면 None)"""
        return self.entries.get(word)

    def embed(self, tokens: Iterable[str], mode: str = "mean") -> np.ndarray:
        """
        텍스트 토큰들의 벡터를 풀링 (어휘 밖 토큰은 건너뜀)

        Raises:
            InvalidArgumentError: 어휘 안 토큰이 하나도 없을 때
        """
        found = []
        skipped = []
        for token in tokens:
            vector = self.entries.get(token)
            if vector is None:
                skipped.append(token)
            else:
                found.append(vector)

        if skipped:
            logger.debug("어휘 밖 토큰 %d개 건너뜀: %s", len(skipped), skipped[:5])
        if not found:
            raise InvalidArgumentError("어휘에 있는 토큰이 없습니다.")
        return pool(found, mode)


def _lines(source: Union[str, TextIO, Iterable[str]]) -> Iterable[str]:
    if isinstance(source, str):
        return io.StringIO(source)
    return source


def _is_fasttext_header(fields: List[str]) -> bool:
    return len(fields) == 2 and all(f.isdigit() for f in fields)


def load_word_vectors(
    source: Union[str, TextIO, Iterable[str]],
    expected_dim: Optional[int] = None
) -> EmbeddingStore:
    """
    단어 벡터 텍스트 파싱

    각 줄: 단어 + 공백 + E개의 실수. 첫 줄이 "개수 차원" 형태면 fastText 헤더로 보고 건너뛴다.

    Args:
        source: 벡터 텍스트 또는 텍스트 스트림
        expected_dim: 기대 차원 (없으면 첫 데이터 줄에서 추론)

    Raises:
        ParseError: 차원 불일치, 숫자가 아닌 값 (행 번호 포함)
    """
    dimension = expected_dim
    entries: Dict[str, np.ndarray] = {}
    duplicates = 0
    seen_data = False

    for line_no, raw in enumerate(_lines(source), start=1):
        line = raw.rstrip("\r\n").rstrip(" ")
        if not line:
            continue
        fields = line.split(" ")

        if not seen_data and line_no == 1 and _is_fasttext_header(fields):
            logger.info("fastText 헤더 건너뜀: %s", line)
            header_dim = int(fields[1])
            if dimension is not None and dimension != header_dim:
                raise ParseError(f"헤더 차원 {header_dim}이 기대 차원 {dimension}과 다릅니다.", line_no)
            dimension = header_dim
            continue

        word, values = fields[0], fields[1:]
        if dimension is None:
            dimension = len(values)
            if dimension == 0:
                raise ParseError(f"'{word}'에 벡터 값이 없습니다.", line_no)
        if len(values) != dimension:
            raise ParseError(f"'{word}' 벡터 차원 {len(values)}이 {dimension}과 다릅니다.", line_no)
        try:
            vector = np.array([float(v) for v in values], dtype=np.float64)
        except ValueError:
            raise ParseError(f"'{word}' 벡터에 숫자가 아닌 값이 있습니다.", line_no)

        if word in entries:
            duplicates += 1
        entries[word] = vector
        seen_data = True

    if dimension is None:
        raise ParseError("벡터 항목이 없습니다.")
    if duplicates:
        logger.warning("중복 단어 %d개 (마지막 항목 사용)", duplicates)

    return EmbeddingStore(dimension, entries, duplicates=duplicates)


def save_word_vectors(store: EmbeddingStore, sink: Optional[TextIO] = None) -> str:
    """EmbeddingStore → GloVe 텍스트 (실수는 유효숫자 6자리)"""
    lines = [
        word + " " + " ".join(f"{x:.6g}" for x in vector)
        for word, vector in store.entries.items()
    ]
    text = "".join(line + "\n" for line in lines)
    if sink is not None:
        sink.write(text)
    return text


class EmbeddingLoader:
    """단어 벡터 파일을 읽는 클래스"""

    def load(self, file_path: str, expected_dim: Optional[int] = None) -> EmbeddingStore:
        path = Path(file_path)
        if not path.exists():
            raise FileNotFoundError(f"파일을 찾을 수 없습니다: {file_path}")

        with path.open(encoding="utf-8") as f:
            store = load_word_vectors(f, expected_dim)
        logger.info("단어 벡터 로드: %s (%d 단어, E=%d)", path.name, len(store), store.dimension)
        return store

    def save(self, store: EmbeddingStore, file_path: str) -> None:
        with Path(file_path).open("w", encoding="utf-8") as f:
            save_word_vectors(store, f)


# 싱글톤 인스턴스
embedding_loader = EmbeddingLoader()
