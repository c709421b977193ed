"""치환 행렬 파일 로딩 유틸리티 (NCBI 텍스트 형식)"""

import io
import logging
from pathlib import Path
from typing import Iterable, List, TextIO, Union

import numpy as np

from s2s.errors import ParseError
from s2s.models.scoring import SubstitutionMatrix

logger = logging.getLogger(__name__)


def _lines(source: Union[str, TextIO, Iterable[str]]) -> Iterable[str]:
    if isinstance(source, str):
        return io.StringIO(source)
    return source


def parse_substitution_matrix(source: Union[str, TextIO, Iterable[str]]) -> SubstitutionMatrix:
    """
    NCBI 형식 치환 행렬 파싱

    형식:
        # 주석 줄
           A  R  N ...        (헤더: 열 심볼)
        A  4 -1 -2 ...        (행 심볼 + 점수)

    Args:
        source: 행렬 텍스트 또는 텍스트 스트림

    Returns:
        SubstitutionMatrix

    Raises:
        ParseError: 행 길이 불일치, 숫자가 아닌 점수, 중복/불일치 심볼 (행 번호 포함)
    """
    header: List[str] = []
    header_line = 0
    rows = {}

    for line_no, raw in enumerate(_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue

        fields = line.split()
        if not header:
            header = fields
            header_line = line_no
            if len(set(header)) != len(header):
                raise ParseError("헤더에 중복 심볼이 있습니다.", line_no)
            continue

        symbol, values = fields[0], fields[1:]
        if len(values) != len(header):
            raise ParseError(
                f"'{symbol}' 행의 점수 개수 {len(values)}가 헤더 심볼 수 {len(header)}와 다릅니다.",
                line_no
            )
        if symbol in rows:
            raise ParseError(f"중복 행 심볼입니다: {symbol}", line_no)
        if symbol not in header:
            raise ParseError(f"헤더에 없는 행 심볼입니다: {symbol}", line_no)
        try:
            rows[symbol] = [float(value) for value in values]
        except ValueError:
            raise ParseError(f"'{symbol}' 행에 숫자가 아닌 점수가 있습니다.", line_no)

    if not header:
        raise ParseError("헤더 행이 없습니다.")
    missing = [symbol for symbol in header if symbol not in rows]
    if missing:
        raise ParseError(f"행이 없는 헤더 심볼: {' '.join(missing)}", header_line)

    table = np.array([rows[symbol] for symbol in header], dtype=np.float64)
    logger.debug("치환 행렬 로드: %d 심볼", len(header))
    return SubstitutionMatrix(header, table)


def _format_score(value: float) -> str:
    return str(int(value)) if float(value).is_integer() else repr(float(value))


def serialize_substitution_matrix(matrix: SubstitutionMatrix) -> str:
    """SubstitutionMatrix → NCBI 형식 텍스트 (parse 결과와 고정점)"""
    cells = [[_format_score(v) for v in row] for row in matrix.scores]
    width = max(
        [len(s) for s in matrix.alphabet] + [len(c) for row in cells for c in row] + [1]
    )
    label_width = max([len(s) for s in matrix.alphabet] + [1])

    lines = [" " * label_width + "".join(f" {s:>{width}}" for s in matrix.alphabet)]
    for symbol, row in zip(matrix.alphabet, cells):
        lines.append(f"{symbol:<{label_width}}" + "".join(f" {c:>{width}}" for c in row))
    return "\n".join(lines) + "\n"


class MatrixLoader:
    """치환 행렬 파일을 읽는 클래스"""

    def load(self, file_path: str) -> SubstitutionMatrix:
        path = Path(file_path)
        if not path.exists():
            raise FileNotFoundError(f"파일을 찾을 수 없습니다: {file_path}")

        with path.open(encoding="utf-8") as f:
            return parse_substitution_matrix(f)


# 싱글톤 인스턴스
matrix_loader = MatrixLoader()
