"""텍스트 토큰화 유틸리티"""

import re
from typing import List, Optional

from s2s.errors import InvalidArgumentError
from s2s.models.sequence import Sequence

TOKENIZE_MODES = ("char", "whitespace", "delimiter")


class Tokenizer:
    """
    텍스트를 심볼 시퀀스로 나누는 클래스

    - char: 유니코드 스칼라 단위 (그래핌 클러스터 아님)
    - whitespace: 공백 문자 기준 최대 토큰
    - delimiter: 지정 구분자 기준, 빈 토큰 제거
    """

    def __init__(self, mode: str = "char", delimiter: Optional[str] = None):
        if mode not in TOKENIZE_MODES:
            raise InvalidArgumentError(f"지원하지 않는 토큰화 모드입니다: {mode}")
        if mode == "delimiter" and not delimiter:
            raise InvalidArgumentError("delimiter 모드에는 비어 있지 않은 구분자가 필요합니다.")
        self.mode = mode
        self.delimiter = delimiter
        self.token_pattern = re.compile(r"\S+")

    def split(self, text: str) -> List[str]:
        if self.mode == "char":
            return list(text)
        if self.mode == "whitespace":
            return self.token_pattern.findall(text)
        return [token for token in text.split(self.delimiter) if token]

    def tokenize(self, text: str) -> Sequence:
        return Sequence(tuple(self.split(text)))


def tokenize(text: str, mode: str = "char", delimiter: Optional[str] = None) -> Sequence:
    """
    텍스트 → Sequence

    Args:
        text: 입력 텍스트
        mode: char / whitespace / delimiter
        delimiter: delimiter 모드의 구분자

    Returns:
        토큰화된 Sequence
    """
    return Tokenizer(mode, delimiter).tokenize(text)
