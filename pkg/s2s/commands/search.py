"""search 서브커맨드"""

from typing import Optional

import click

from s2s.commands.common import Timer, emit, handle_errors, output_option, resolve_operand, tokenize_options
from s2s.services import lexical_search
from s2s.utils.tokenizer import Tokenizer

SEARCH_METHODS = ("naive", "rabin-karp", "boyer-moore", "kmp")


@click.command("search")
@click.argument("method", type=click.Choice(SEARCH_METHODS))
@click.option("--pattern", required=True, help="찾을 패턴")
@click.option("--text", default=None, help="검색 대상 텍스트")
@click.option("--file-text", type=click.Path(dir_okay=False), help="검색 대상을 UTF-8 파일에서 읽기")
@tokenize_options
@output_option
@handle_errors("검색")
def search(
    method: str,
    pattern: str,
    text: Optional[str],
    file_text: Optional[str],
    mode: str,
    delimiter: Optional[str],
    output: str
):
    """정확 패턴 검색 (naive, rabin-karp, boyer-moore, kmp), 겹치는 출현 포함"""
    body = resolve_operand(text, file_text, "text")
    inputs = {"pattern": pattern, "text": body if file_text is None else file_text, "mode": mode}

    if mode == "char":
        p, t = pattern, body
    else:
        tokenizer = Tokenizer(mode, delimiter)
        p, t = tokenizer.tokenize(pattern), tokenizer.tokenize(body)

    with Timer() as timer:
        offsets = lexical_search.search(p, t, method.replace("-", "_")).offsets

    emit(output, method, inputs, offsets, timer.elapsed_ms, " ".join(str(o) for o in offsets))
