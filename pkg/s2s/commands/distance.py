"""distance 서브커맨드"""

from typing import Optional

import click

from s2s.commands.common import Timer, emit, handle_errors, pair_operands, pair_options, sequence_inputs
from s2s.models.schemas import CostModel
from s2s.services import distance as distance_service
from s2s.utils.render import format_number

DISTANCE_METHODS = ("levenshtein", "hamming", "damerau-levenshtein", "jaccard")


def cost_options(f):
    for name, default in reversed((("insert", 1.0), ("delete", 1.0), ("substitute", 1.0), ("transpose", 1.0))):
        f = click.option(f"--{name}-cost", type=float, default=default, show_default=True,
                         help=f"{name} 연산 가중치")(f)
    return f


@click.command("distance")
@click.argument("method", type=click.Choice(DISTANCE_METHODS))
@pair_options
@cost_options
@click.option("--space-mode", type=click.Choice(("full", "two_row", "reduced")), default="full", show_default=True,
              help="levenshtein: full|two_row, damerau-levenshtein: full|reduced")
@handle_errors("거리 계산")
def distance(
    method: str,
    a: Optional[str],
    b: Optional[str],
    file_a: Optional[str],
    file_b: Optional[str],
    mode: str,
    delimiter: Optional[str],
    output: str,
    insert_cost: float,
    delete_cost: float,
    substitute_cost: float,
    transpose_cost: float,
    space_mode: str
):
    """거리 측도 (levenshtein, hamming, damerau-levenshtein, jaccard)"""
    text_a, text_b = pair_operands(a, b, file_a, file_b)
    S, T, inputs = sequence_inputs(text_a, text_b, mode, delimiter)

    costs = CostModel(
        insert_cost=insert_cost,
        delete_cost=delete_cost,
        substitute_cost=substitute_cost,
        transpose_cost=transpose_cost
    )

    with Timer() as timer:
        if method == "levenshtein":
            inputs.update(costs.model_dump(), space_mode=space_mode)
            value = distance_service.levenshtein(S, T, costs, space_mode).value
        elif method == "damerau-levenshtein":
            inputs.update(costs.model_dump(), space_mode=space_mode)
            value = distance_service.damerau_levenshtein(S, T, costs, space_mode).value
        elif method == "hamming":
            value = distance_service.hamming(S, T).value
        else:
            value = distance_service.jaccard_distance(S, T).value

    emit(output, method, inputs, value, timer.elapsed_ms, format_number(value))
