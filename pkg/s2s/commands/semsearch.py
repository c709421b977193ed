"""semsearch 서브커맨드 (build / query)"""

from pathlib import Path
from typing import Optional

import click

from s2s.commands.common import Timer, emit, handle_errors, output_option
from s2s.config import settings
from s2s.services.semantic_search import SemanticSearchService
from s2s.services.vector_service import METRICS
from s2s.utils.embedding_loader import POOL_MODES, embedding_loader
from s2s.utils.render import format_number


@click.group("semsearch")
def semsearch():
    """코퍼스 의미 검색 (한 줄 = 텍스트 하나)"""


@semsearch.command("build")
@click.option("--corpus", required=True, type=click.Path(dir_okay=False), help="코퍼스 파일 (UTF-8, 한 줄에 하나)")
@click.option("--vectors", required=True, type=click.Path(dir_okay=False), help="단어 벡터 파일")
@click.option("--index", "index_path", required=True, type=click.Path(dir_okay=False), help="저장할 인덱스 파일")
@click.option("--pool", "pool_mode", type=click.Choice(POOL_MODES), default="mean", show_default=True, help="풀링 모드")
@click.option("--metric", type=click.Choice(METRICS), default="cosine", show_default=True, help="유사도 메트릭")
@click.option("--nlist", type=int, default=settings.ivf_nlist, show_default=True, help="IVF 목록 수 (0 = flat)")
@click.option("--seed", type=int, default=settings.seed, show_default=True, help="k-means 시드 (S2S_SEED)")
@output_option
@handle_errors("인덱스 생성")
def build(corpus: str, vectors: str, index_path: str, pool_mode: str, metric: str, nlist: int, seed: int, output: str):
    """코퍼스를 색인해 인덱스 파일로 저장"""
    path = Path(corpus)
    if not path.exists():
        raise FileNotFoundError(f"파일을 찾을 수 없습니다: {corpus}")
    texts = path.read_text(encoding="utf-8").splitlines()

    store = embedding_loader.load(vectors)
    service = SemanticSearchService(store, pool_mode)

    with Timer() as timer:
        service.build(texts, metric=metric, nlist=nlist, seed=seed)
        service.save(index_path)

    stats = service.get_stats()
    inputs = {
        "corpus": corpus, "vectors": vectors, "index": index_path,
        "pool": pool_mode, "metric": metric, "nlist": nlist, "seed": seed,
    }
    plain = f"n={stats['n']} E={stats['E']} nlist={stats['nlist']}"
    emit(output, "build", inputs, stats, timer.elapsed_ms, plain)


@semsearch.command("query")
@click.argument("text")
@click.option("--index", "index_path", required=True, type=click.Path(dir_okay=False), help="인덱스 파일")
@click.option("--vectors", required=True, type=click.Path(dir_okay=False), help="단어 벡터 파일")
@click.option("--pool", "pool_mode", type=click.Choice(POOL_MODES), default="mean", show_default=True, help="풀링 모드")
@click.option("--k", "k", type=int, default=settings.top_k, show_default=True, help="반환 개수")
@click.option("--nprobe", type=int, default=settings.ivf_nprobe, show_default=True, help="탐색할 IVF 목록 수")
@output_option
@handle_errors("의미 검색")
def query(text: str, index_path: str, vectors: str, pool_mode: str, k: int, nprobe: int, output: str):
    """질의 텍스트와 가까운 코퍼스 줄 (줄 번호, 점수)"""
    store = embedding_loader.load(vectors)
    service = SemanticSearchService(store, pool_mode)
    service.load(index_path)

    with Timer() as timer:
        hits = service.query(text, k=k, nprobe=nprobe)

    inputs = {"text": text, "index": index_path, "vectors": vectors, "pool": pool_mode, "k": k, "nprobe": nprobe}
    plain = "\n".join(f"{line_no}\t{format_number(score)}" for line_no, score in hits)
    emit(output, "query", inputs, [[line_no, score] for line_no, score in hits], timer.elapsed_ms, plain)
