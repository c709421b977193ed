"""s2s CLI 메인 - 정렬/거리/유사도/검색 툴킷"""

import logging
import sys

import click

from s2s import __version__
from s2s.commands.align import align
from s2s.commands.distance import distance
from s2s.commands.matrix import matrix
from s2s.commands.search import search
from s2s.commands.semsearch import semsearch
from s2s.commands.similarity import similarity
from s2s.config import settings


@click.group()
@click.version_option(__version__, prog_name="s2s")
@click.option("-v", "--verbose", is_flag=True, help="DEBUG 로그 출력 (stderr)")
def cli(verbose: bool):
    """문자열 쌍 정렬, 거리, 유사도, 패턴 검색, 의미 검색"""
    logging.basicConfig(
        level=logging.DEBUG if verbose else settings.log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


# 서브커맨드 등록
cli.add_command(align)
cli.add_command(distance)
cli.add_command(similarity)
cli.add_command(search)
cli.add_command(semsearch)
cli.add_command(matrix)


if __name__ == "__main__":
    cli()
