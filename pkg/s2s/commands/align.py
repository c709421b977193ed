"""align 서브커맨드"""

from typing import Optional

import click

from s2s.commands.common import Timer, emit, handle_errors, join_symbols, pair_operands, pair_options, sequence_inputs
from s2s.config import settings
from s2s.errors import InvalidArgumentError
from s2s.models.schemas import GapPenalty, RenderOptions
from s2s.models.scoring import UniformScoring
from s2s.services import alignment
from s2s.utils.matrix_loader import matrix_loader
from s2s.utils.render import format_number, render_alignment

ALIGN_METHODS = ("global", "hirschberg", "local", "lcsubstring", "lcsubsequence", "dtw")


def _alignment_payload(result):
    return {"aligned_a": result.aligned_a, "aligned_b": result.aligned_b, "score": result.score}


def _numeric(symbols, name: str):
    try:
        return [float(s) for s in symbols]
    except ValueError:
        raise InvalidArgumentError(f"{name}에 숫자가 아닌 값이 있습니다 (--numeric).")


@click.command("align")
@click.argument("method", type=click.Choice(ALIGN_METHODS))
@pair_options
@click.option("--match", type=float, default=settings.match_score, show_default=True, help="일치 점수")
@click.option("--mismatch", type=float, default=settings.mismatch_score, show_default=True, help="불일치 점수")
@click.option("--gap", type=float, default=settings.gap_penalty, show_default=True, help="갭 하나당 페널티")
@click.option("--matrix-file", type=click.Path(dir_okay=False), help="NCBI 형식 치환 행렬 (match/mismatch 대신)")
@click.option("--numeric", is_flag=True, help="dtw: 토큰을 실수로 해석 (비용 |a-b|)")
@click.option("--space-mode", type=click.Choice(alignment.DTW_SPACE_MODES), default="full", show_default=True,
              help="dtw 공간 모드")
@click.option("--marker-row", is_flag=True, help="| . 표시 행 출력")
@click.option("--line-wrap", type=int, default=settings.render_line_wrap, show_default=True, help="블록당 열 수")
@click.option("--gap-symbol", default=settings.gap_symbol, show_default=True, help="갭 표시 문자열")
@handle_errors("정렬")
def align(
    method: str,
    a: Optional[str],
    b: Optional[str],
    file_a: Optional[str],
    file_b: Optional[str],
    mode: str,
    delimiter: Optional[str],
    output: str,
    match: float,
    mismatch: float,
    gap: float,
    matrix_file: Optional[str],
    numeric: bool,
    space_mode: str,
    marker_row: bool,
    line_wrap: int,
    gap_symbol: str
):
    """
    쌍별 정렬 (global, hirschberg, local, lcsubstring, lcsubsequence, dtw)

    A, B는 인라인 문자열 또는 --file-a/--file-b.
    """
    text_a, text_b = pair_operands(a, b, file_a, file_b)
    S, T, inputs = sequence_inputs(text_a, text_b, mode, delimiter)

    if matrix_file:
        scoring = matrix_loader.load(matrix_file)
        inputs["matrix_file"] = matrix_file
    else:
        scoring = UniformScoring(match=match, mismatch=mismatch)
        inputs.update(match=match, mismatch=mismatch)
    gap_penalty = GapPenalty(per_gap=gap)
    options = RenderOptions(gap_symbol=gap_symbol, line_wrap=line_wrap, marker_row=marker_row)

    with Timer() as timer:
        if method in ("global", "hirschberg", "local"):
            inputs["gap"] = gap
            runner = {
                "global": alignment.global_align,
                "hirschberg": alignment.hirschberg_align,
                "local": alignment.local_align,
            }[method]
            result = runner(S, T, scoring, gap_penalty)
            payload = _alignment_payload(result)
            rendered = render_alignment(result, options)
            plain = (rendered + "\n" if rendered else "") + f"score: {format_number(result.score)}"

        elif method == "lcsubstring":
            length, witnesses = alignment.longest_common_substring(S, T)
            ordered = sorted(list(w) for w in witnesses)
            payload = {"length": length, "witnesses": ordered}
            plain = "\n".join([str(length)] + [join_symbols(w, mode, delimiter) for w in ordered])

        elif method == "lcsubsequence":
            length, witness = alignment.longest_common_subsequence(S, T)
            payload = {"length": length, "witness": witness}
            plain = f"{length}\n{join_symbols(witness, mode, delimiter)}"

        else:
            inputs.update(numeric=numeric, space_mode=space_mode)
            left = _numeric(S, "A") if numeric else list(S)
            right = _numeric(T, "B") if numeric else list(T)
            result = alignment.dtw(left, right, space_mode=space_mode)
            payload = {"total_cost": result.total_cost, "path": [list(step) for step in result.path]}
            plain = f"{format_number(result.total_cost)}\n" + " ".join(f"({i},{j})" for i, j in result.path)

    emit(output, method, inputs, payload, timer.elapsed_ms, plain)
