"""CLI 공통 옵션 / 입력 해석 / 출력"""

import functools
import json
import logging
import time
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple

import click
from pydantic import ValidationError

from s2s.config import settings
from s2s.errors import S2SError
from s2s.models.schemas import CliOutput
from s2s.models.sequence import Sequence
from s2s.utils.tokenizer import TOKENIZE_MODES, Tokenizer

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("plain", "json")


def read_text_file(file_path: str) -> str:
    """UTF-8 파일 하나 = 논리 문자열 하나 (끝 줄바꿈 제거)"""
    path = Path(file_path)
    if not path.exists():
        raise FileNotFoundError(f"파일을 찾을 수 없습니다: {file_path}")
    return path.read_text(encoding="utf-8").rstrip("\r\n")


def resolve_operand(inline: Optional[str], file_path: Optional[str], name: str) -> str:
    """인라인 값과 --file-* 중 정확히 하나"""
    if inline is not None and file_path is not None:
        raise click.UsageError(f"{name}: 인라인 값과 파일을 함께 지정할 수 없습니다.")
    if inline is None and file_path is None:
        raise click.UsageError(f"{name}: 인라인 값 또는 파일이 필요합니다.")
    if file_path is not None:
        return read_text_file(file_path)
    return inline


def pair_operands(a, b, file_a, file_b) -> Tuple[str, str]:
    return resolve_operand(a, file_a, "A"), resolve_operand(b, file_b, "B")


def make_tokenizer(mode: str, delimiter: Optional[str]) -> Tokenizer:
    return Tokenizer(mode, delimiter)


def joiner(mode: str, delimiter: Optional[str]) -> str:
    """토큰 목록을 다시 텍스트로 붙일 때 쓰는 구분자"""
    if mode == "char":
        return ""
    if mode == "delimiter":
        return delimiter
    return " "


def join_symbols(symbols, mode: str, delimiter: Optional[str]) -> str:
    return joiner(mode, delimiter).join(symbols)


def pair_options(f: Callable) -> Callable:
    """A B 인라인 인자 + --file-a/--file-b + 토큰화 + 출력 형식"""
    decorators = [
        click.argument("a", required=False),
        click.argument("b", required=False),
        click.option("--file-a", type=click.Path(dir_okay=False), help="A를 UTF-8 파일에서 읽기"),
        click.option("--file-b", type=click.Path(dir_okay=False), help="B를 UTF-8 파일에서 읽기"),
        tokenize_options,
        output_option,
    ]
    for decorator in reversed(decorators):
        f = decorator(f)
    return f


def tokenize_options(f: Callable) -> Callable:
    f = click.option("--delimiter", default=None, help="delimiter 모드의 구분자")(f)
    f = click.option(
        "--mode", type=click.Choice(TOKENIZE_MODES), default="char", show_default=True,
        help="토큰화 모드"
    )(f)
    return f


def output_option(f: Callable) -> Callable:
    return click.option(
        "--output", type=click.Choice(OUTPUT_FORMATS), default="plain", show_default=True,
        help="출력 형식"
    )(f)


def handle_errors(label: str) -> Callable:
    """라이브러리/입출력 오류 → ClickException (exit 1), 사용법 오류는 그대로 (exit 2)"""
    def decorator(f: Callable) -> Callable:
        @functools.wraps(f)
        def wrapper(*args, **kwargs):
            try:
                return f(*args, **kwargs)
            except click.ClickException:
                raise
            except (S2SError, ValidationError, OSError) as e:
                logger.debug("%s 실패", label, exc_info=True)
                raise click.ClickException(f"{label} 실패: {e}")
            except Exception as e:
                logger.debug("%s 중 예기치 않은 오류", label, exc_info=True)
                raise click.ClickException(f"{label} 실패: {type(e).__name__}: {e}")
        return wrapper
    return decorator


class Timer:
    """호출 한 번의 경과 시간 (settings.report_elapsed=false면 0)"""

    def __enter__(self) -> "Timer":
        self.start = time.perf_counter()
        self.elapsed_ms = 0.0
        return self

    def __exit__(self, *exc) -> None:
        if settings.report_elapsed:
            self.elapsed_ms = (time.perf_counter() - self.start) * 1000.0


def emit(
    output: str,
    method: str,
    inputs: Dict[str, Any],
    result: Any,
    elapsed_ms: float,
    plain: str
) -> None:
    """결과 출력: json이면 {method, inputs, result, elapsed_ms} 객체 하나"""
    if output == "json":
        payload = CliOutput(method=method, inputs=inputs, result=result, elapsed_ms=elapsed_ms)
        click.echo(json.dumps(payload.model_dump(), ensure_ascii=False))
    else:
        click.echo(plain)


def sequence_inputs(a: str, b: str, mode: str, delimiter: Optional[str]) -> Tuple[Sequence, Sequence, Dict[str, Any]]:
    tokenizer = make_tokenizer(mode, delimiter)
    inputs = {"a": a, "b": b, "mode": mode}
    if mode == "delimiter":
        inputs["delimiter"] = delimiter
    return tokenizer.tokenize(a), tokenizer.tokenize(b), inputs
