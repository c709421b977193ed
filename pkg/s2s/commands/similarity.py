"""similarity 서브커맨드"""

from typing import Optional

import click

from s2s.commands.common import Timer, emit, handle_errors, pair_operands, pair_options, sequence_inputs
from s2s.config import settings
from s2s.errors import InvalidArgumentError
from s2s.services import similarity as similarity_service
from s2s.utils.embedding_loader import POOL_MODES, embedding_loader
from s2s.utils.render import format_number

SIMILARITY_METHODS = ("jaccard", "jaro", "jaro-winkler", "lcs", "cosine", "greedy")


@click.command("similarity")
@click.argument("method", type=click.Choice(SIMILARITY_METHODS))
@pair_options
@click.option("--p", "prefix_weight", type=float, default=settings.winkler_prefix_weight, show_default=True,
              help="jaro-winkler 접두사 가중치 (0~0.25)")
@click.option("--max-prefix", type=int, default=settings.winkler_max_prefix, show_default=True,
              help="jaro-winkler 접두사 길이 상한 (p·max_prefix ≤ 1)")
@click.option("--vectors", type=click.Path(dir_okay=False), help="cosine/greedy: GloVe/fastText 텍스트 벡터 파일")
@click.option("--pool", "pool_mode", type=click.Choice(POOL_MODES), default="mean", show_default=True,
              help="cosine: 토큰 벡터 풀링")
@handle_errors("유사도 계산")
def similarity(
    method: str,
    a: Optional[str],
    b: Optional[str],
    file_a: Optional[str],
    file_b: Optional[str],
    mode: str,
    delimiter: Optional[str],
    output: str,
    prefix_weight: float,
    max_prefix: int,
    vectors: Optional[str],
    pool_mode: str
):
    """유사도 측도 (jaccard, jaro, jaro-winkler, lcs, cosine, greedy)"""
    text_a, text_b = pair_operands(a, b, file_a, file_b)
    S, T, inputs = sequence_inputs(text_a, text_b, mode, delimiter)

    store = None
    if method in ("cosine", "greedy"):
        if not vectors:
            raise InvalidArgumentError(f"{method}에는 --vectors 파일이 필요합니다.")
        store = embedding_loader.load(vectors)
        inputs["vectors"] = vectors

    with Timer() as timer:
        if method == "jaccard":
            result = similarity_service.jaccard_similarity(S, T).value
        elif method == "jaro":
            result = similarity_service.jaro(S, T).value
        elif method == "jaro-winkler":
            inputs.update(p=prefix_weight, max_prefix=max_prefix)
            result = similarity_service.jaro_winkler(S, T, prefix_weight, max_prefix).value
        elif method == "lcs":
            result = similarity_service.lcs_similarity(S, T).value
        elif method == "cosine":
            inputs["pool"] = pool_mode
            result = similarity_service.text_similarity(store, S, T, pool_mode)
        else:
            result = similarity_service.greedy_match_texts(store, S, T).model_dump()

    if isinstance(result, dict):
        plain = " ".join(f"{key}={format_number(result[key])}" for key in ("precision", "recall", "f1"))
    else:
        plain = format_number(result)
    emit(output, method, inputs, result, timer.elapsed_ms, plain)
