"""텍스트 코퍼스 의미 검색 서비스"""

import logging
from typing import List, Optional, Sequence, Tuple, Union

from s2s.config import settings
from s2s.errors import InvalidArgumentError
from s2s.services.vector_service import FlatIndex, IvfIndex, flat_build, ivf_build, load_index, save_index
from s2s.utils.embedding_loader import EmbeddingStore
from s2s.utils.tokenizer import Tokenizer

logger = logging.getLogger(__name__)


class SemanticSearchService:
    """
    코퍼스(한 줄에 텍스트 하나)를 풀링 벡터로 색인하고 질의 텍스트로 검색

    - 레코드 id는 1부터 시작하는 줄 번호 (코퍼스 크기 자릿수로 0을 채운 문자열)
    - 어휘 밖 토큰은 풀링에서 제외, 어휘 안 토큰이 없는 줄은 거부
    """

    def __init__(
        self,
        store: EmbeddingStore,
        pool_mode: str = "mean",
        tokenizer: Optional[Tokenizer] = None
    ):
        self.store = store
        self.pool_mode = pool_mode
        self.tokenizer = tokenizer or Tokenizer("whitespace")
        self.index: Optional[Union[FlatIndex, IvfIndex]] = None

    def vectorize(self, text: str, line_no: Optional[int] = None):
        """텍스트 → 풀링 벡터"""
        tokens = self.tokenizer.split(text)
        try:
            return self.store.embed(tokens, self.pool_mode)
        except InvalidArgumentError:
            where = f"{line_no}번 줄" if line_no is not None else "질의"
            raise InvalidArgumentError(f"{where}에 어휘 안 토큰이 없습니다: {text!r}")

    def build(
        self,
        texts: Sequence[str],
        metric: str = "cosine",
        nlist: Optional[int] = None,
        seed: Optional[int] = None
    ) -> Union[FlatIndex, IvfIndex]:
        """
        코퍼스 색인

        Args:
            texts: 코퍼스 텍스트 (순서 = 줄 번호)
            metric: cosine / l2
            nlist: IVF 목록 수 (0이면 flat 인덱스, 기본 settings.ivf_nlist)
            seed: k-means 시드 (기본 settings.seed)
        """
        nlist = settings.ivf_nlist if nlist is None else nlist
        # 동점은 id 문자열 순이므로 줄 번호를 같은 자릿수로 맞춘다
        width = len(str(len(texts)))
        records = [
            (f"{line_no:0{width}d}", self.vectorize(text, line_no))
            for line_no, text in enumerate(texts, start=1)
        ]

        if nlist == 0:
            self.index = flat_build(records, metric)
        else:
            self.index = ivf_build(records, metric, nlist=nlist, seed=seed)

        logger.info("코퍼스 색인 완료: %s", self.get_stats())
        return self.index

    def query(self, text: str, k: Optional[int] = None, nprobe: Optional[int] = None) -> List[Tuple[int, float]]:
        """
        질의 텍스트와 가까운 코퍼스 줄

        Returns:
            [(줄 번호, 점수), ...] 점수 내림차순
        """
        if self.index is None:
            raise InvalidArgumentError("색인된 코퍼스가 없습니다.")

        vector = self.vectorize(text)
        if isinstance(self.index, IvfIndex):
            neighbors = self.index.query(vector, k, nprobe)
        else:
            neighbors = self.index.query(vector, k)
        return [(int(n.id), n.score) for n in neighbors]

    def save(self, path: str) -> None:
        if self.index is None:
            raise InvalidArgumentError("저장할 인덱스가 없습니다.")
        save_index(self.index, path)

    def load(self, path: str) -> Union[FlatIndex, IvfIndex]:
        index = load_index(path)
        if index.dimension != self.store.dimension:
            raise InvalidArgumentError(
                f"인덱스 차원 {index.dimension}이 단어 벡터 차원 {self.store.dimension}과 다릅니다."
            )
        self.index = index
        return index

    def get_stats(self) -> dict:
        if self.index is None:
            return {"n": 0, "E": self.store.dimension, "nlist": 0}
        stats = self.index.get_stats()
        return {"n": stats["n"], "E": stats["E"], "nlist": stats["nlist"]}
