"""matrix 서브커맨드 (DP 점수 행렬 내보내기)"""

from typing import Optional

import click

from s2s.commands.common import Timer, emit, handle_errors, pair_operands, pair_options, sequence_inputs
from s2s.commands.distance import cost_options
from s2s.config import settings
from s2s.models.schemas import CostModel, GapPenalty
from s2s.models.scoring import UniformScoring
from s2s.services import alignment, distance
from s2s.utils.matrix_loader import matrix_loader
from s2s.utils.render import MATRIX_FORMATS, export_matrix

MATRIX_METHODS = ("global", "local", "levenshtein", "damerau-levenshtein")


@click.command("matrix")
@click.argument("method", type=click.Choice(MATRIX_METHODS))
@pair_options
@click.option("--match", type=float, default=settings.match_score, show_default=True, help="일치 점수")
@click.option("--mismatch", type=float, default=settings.mismatch_score, show_default=True, help="불일치 점수")
@click.option("--gap", type=float, default=settings.gap_penalty, show_default=True, help="갭 하나당 페널티")
@click.option("--matrix-file", type=click.Path(dir_okay=False), help="NCBI 형식 치환 행렬")
@cost_options
@click.option("--format", "fmt", type=click.Choice(MATRIX_FORMATS), default="csv", show_default=True, help="내보내기 형식")
@click.option("--labels", is_flag=True, help="A/B 심볼을 머리 행/열로 출력")
@handle_errors("행렬 내보내기")
def matrix(
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
    insert_cost: float,
    delete_cost: float,
    substitute_cost: float,
    transpose_cost: float,
    fmt: str,
    labels: bool
):
    """DP 점수 행렬 (global, local, levenshtein, damerau-levenshtein) → CSV/TSV"""
    text_a, text_b = pair_operands(a, b, file_a, file_b)
    S, T, inputs = sequence_inputs(text_a, text_b, mode, delimiter)
    inputs.update(format=fmt, labels=labels)

    with Timer() as timer:
        if method in ("global", "local"):
            scoring = matrix_loader.load(matrix_file) if matrix_file else UniformScoring(match=match, mismatch=mismatch)
            runner = alignment.global_align if method == "global" else alignment.local_align
            cells = runner(S, T, scoring, GapPenalty(per_gap=gap), keep_matrix=True).matrix
        else:
            costs = CostModel(
                insert_cost=insert_cost,
                delete_cost=delete_cost,
                substitute_cost=substitute_cost,
                transpose_cost=transpose_cost
            )
            runner = distance.levenshtein if method == "levenshtein" else distance.damerau_levenshtein
            cells = runner(S, T, costs).matrix

    text = export_matrix(cells, fmt, (S, T) if labels else None)
    emit(output, method, inputs, cells.cells.tolist(), timer.elapsed_ms, text.rstrip("\n"))
