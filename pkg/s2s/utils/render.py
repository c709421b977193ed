"""정렬 텍스트 렌더링 / 점수 행렬 내보내기"""

import csv
import io
from typing import List, Optional, Tuple

from s2s.errors import InvalidArgumentError
from s2s.models.schemas import AlignmentResult, RenderOptions, ScoreMatrix
from s2s.models.sequence import GAP, SymbolsLike, as_sequence

MATRIX_FORMATS = ("csv", "tsv")


def _marker(a: Optional[str], b: Optional[str]) -> str:
    if a is GAP or b is GAP:
        return " "
    return "|" if a == b else "."


def render_alignment(result: AlignmentResult, opts: Optional[RenderOptions] = None) -> str:
    """
    정렬 결과 → 텍스트

    블록마다 S 행, (marker_row면) 표시 행, T 행. 블록 사이는 빈 줄.
    열 너비는 열마다 따로 정하지 않고 정렬 전체에 하나를 쓴다 (자동이면 가장 긴 심볼 폭).
    칸은 왼쪽 정렬. 예: [GAP, ATT] / [X, ATT] → "-   ATT" / "X   ATT"
    """
    opts = opts or RenderOptions()
    columns = len(result.aligned_a)
    if columns == 0:
        return ""

    top = [opts.gap_symbol if a is GAP else a for a in result.aligned_a]
    bottom = [opts.gap_symbol if b is GAP else b for b in result.aligned_b]
    width = opts.column_width or max(len(cell) for cell in top + bottom)
    separator = opts.separator if opts.separator is not None else ("" if width == 1 else " ")

    markers = [_marker(a, b) for a, b in zip(result.aligned_a, result.aligned_b)]

    def line(cells: List[str]) -> str:
        return separator.join(cell.ljust(width) for cell in cells)

    blocks = []
    for start in range(0, columns, opts.line_wrap):
        end = start + opts.line_wrap
        rows = [line(top[start:end])]
        if opts.marker_row:
            rows.append(line(markers[start:end]))
        rows.append(line(bottom[start:end]))
        blocks.append("\n".join(rows))
    return "\n\n".join(blocks)


def format_number(value: float) -> str:
    """정수 값은 정수로, 그 외는 최단 왕복 표현"""
    value = float(value)
    if value.is_integer():
        return str(int(value))
    return repr(value)


def export_matrix(
    matrix: ScoreMatrix,
    format: str = "csv",
    labels: Optional[Tuple[SymbolsLike, SymbolsLike]] = None
) -> str:
    """
    점수 행렬 → CSV/TSV 텍스트

    labels=(S, T)면 첫 행은 ["", "", T1..Tm], 각 행 앞에 "" (경계 행) 또는 S_i.
    """
    if format not in MATRIX_FORMATS:
        raise InvalidArgumentError(f"지원하지 않는 행렬 형식입니다: {format}")

    buffer = io.StringIO()
    writer = csv.writer(buffer, delimiter="," if format == "csv" else "\t", lineterminator="\n")

    row_labels = None
    if labels is not None:
        S, T = (as_sequence(labels[0]).symbols, as_sequence(labels[1]).symbols)
        if len(S) + 1 != matrix.rows or len(T) + 1 != matrix.cols:
            raise InvalidArgumentError(
                f"라벨 길이 ({len(S)}, {len(T)})가 행렬 크기 {matrix.rows}x{matrix.cols}와 맞지 않습니다."
            )
        writer.writerow(["", ""] + list(T))
        row_labels = [""] + list(S)

    for r, row in enumerate(matrix.cells):
        cells = [format_number(v) for v in row]
        writer.writerow(cells if row_labels is None else [row_labels[r]] + cells)

    return buffer.getvalue()
