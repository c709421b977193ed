"""벡터 인덱스 서비스 (정확 flat kNN / IVF 근사 kNN)

- 저장 벡터는 float32, 점수 계산은 float64
- cosine: 삽입/질의 시 정규화한 벡터의 내적
- l2: 음의 제곱 거리 (클수록 가까움)
- 결과는 점수 내림차순, 동점이면 id 오름차순
"""

import logging
import struct
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from s2s.config import settings
from s2s.errors import IndexFormatError, InvalidArgumentError
from s2s.models.schemas import Neighbor

logger = logging.getLogger(__name__)

METRICS = ("cosine", "l2")

Record = Tuple[str, Sequence[float]]


# ============================================
# 공통 점수 계산
# ============================================

def _prepare_vector(vector: Sequence[float], metric: str, dimension: Optional[int] = None) -> np.ndarray:
    """저장/질의 공통 전처리: (cosine이면 정규화) → float32 반올림 → float64"""
    v = np.asarray(vector, dtype=np.float64)
    if v.ndim != 1 or v.size == 0:
        raise InvalidArgumentError("벡터는 비어 있지 않은 1차원이어야 합니다.")
    if dimension is not None and v.shape[0] != dimension:
        raise InvalidArgumentError(f"벡터 차원 {v.shape[0]}이 인덱스 차원 {dimension}과 다릅니다.")
    if not np.all(np.isfinite(v)):
        raise InvalidArgumentError("벡터에 유한하지 않은 값이 있습니다.")
    if metric == "cosine":
        norm = np.sqrt((v * v).sum())
        if norm == 0.0:
            raise InvalidArgumentError("cosine 메트릭에서는 영벡터를 쓸 수 없습니다.")
        v = v / norm
    return v.astype(np.float32).astype(np.float64)


def _score_rows(matrix: np.ndarray, q: np.ndarray, metric: str) -> np.ndarray:
    """행마다 독립적으로 계산 (열 순서 누적이라 부분 행렬에서도 비트 단위로 같은 값)"""
    out = np.zeros(matrix.shape[0], dtype=np.float64)
    if metric == "cosine":
        for j in range(matrix.shape[1]):
            out += matrix[:, j] * q[j]
        return out
    for j in range(matrix.shape[1]):
        diff = matrix[:, j] - q[j]
        out += diff * diff
    return -out


def _nearest_cell(centroids: np.ndarray, v: np.ndarray, metric: str) -> int:
    return int(np.argmax(_score_rows(centroids, v, metric)))


def _top_k(scores: np.ndarray, ids: Sequence[str], k: int) -> List[Neighbor]:
    n = scores.shape[0]
    k = min(k, n)
    if k == 0:
        return []
    if k < n:
        threshold = np.partition(scores, n - k)[n - k]
        candidates = np.nonzero(scores >= threshold)[0]
    else:
        candidates = np.arange(n)
    ranked = sorted(candidates.tolist(), key=lambda i: (-scores[i], ids[i]))[:k]
    return [Neighbor(id=ids[i], score=float(scores[i])) for i in ranked]


def _check_metric(metric: str) -> None:
    if metric not in METRICS:
        raise InvalidArgumentError(f"지원하지 않는 메트릭입니다: {metric} (허용: {', '.join(METRICS)})")


def _check_k(k: int) -> None:
    if k < 1:
        raise InvalidArgumentError(f"k는 1 이상이어야 합니다: {k}")


def _prepare_records(records: Iterable[Record], metric: str) -> Tuple[List[str], np.ndarray]:
    _check_metric(metric)
    ids: List[str] = []
    rows: List[np.ndarray] = []
    seen = set()
    dimension = None

    for record_id, vector in records:
        record_id = str(record_id)
        if record_id in seen:
            raise InvalidArgumentError(f"중복 id입니다: {record_id}")
        seen.add(record_id)
        row = _prepare_vector(vector, metric, dimension)
        dimension = row.shape[0]
        ids.append(record_id)
        rows.append(row)

    if not rows:
        raise InvalidArgumentError("인덱스에 넣을 레코드가 없습니다.")
    return ids, np.vstack(rows).astype(np.float32)


# ============================================
# Flat (정확 검색)
# ============================================

class FlatIndex:
    """전수 비교 kNN 인덱스"""

    def __init__(self, ids: List[str], vectors: np.ndarray, metric: str):
        self.ids = ids
        self.vectors = vectors                         # (n, E) float32
        self.metric = metric
        self._matrix = vectors.astype(np.float64)

    @property
    def dimension(self) -> int:
        return int(self.vectors.shape[1])

    def __len__(self) -> int:
        return len(self.ids)

    def query(self, q: Sequence[float], k: Optional[int] = None) -> List[Neighbor]:
        """
        정확 top-k

        Args:
            q: 질의 벡터 (E차원)
            k: 반환 개수 (기본 settings.top_k, n보다 크면 n개)
        """
        k = settings.top_k if k is None else k
        _check_k(k)
        qv = _prepare_vector(q, self.metric, self.dimension)
        return _top_k(_score_rows(self._matrix, qv, self.metric), self.ids, k)

    def get_stats(self) -> dict:
        return {"type": "flat", "metric": self.metric, "n": len(self), "E": self.dimension, "nlist": 0}


def flat_build(records: Iterable[Record], metric: str = "cosine") -> FlatIndex:
    """레코드 (id, 벡터) 목록으로 flat 인덱스 생성"""
    ids, vectors = _prepare_records(records, metric)
    return FlatIndex(ids, vectors, metric)


def flat_query(index: FlatIndex, q: Sequence[float], k: Optional[int] = None) -> List[Neighbor]:
    return index.query(q, k)


# ============================================
# K-means (IVF coarse quantizer)
# ============================================

class KMeans:
    """
    Lloyd k-means + k-means++ 시딩

    - 같은 seed면 비트 단위로 같은 중심
    - sse_history: 각 할당 단계 직후의 군집 내 제곱합 (비증가)
    - 빈 군집은 현재 가장 먼 점으로 다시 시딩
    """

    def __init__(self, n_clusters: int, n_iter: Optional[int] = None, seed: Optional[int] = None):
        if n_clusters < 1:
            raise InvalidArgumentError(f"군집 수는 1 이상이어야 합니다: {n_clusters}")
        self.n_clusters = n_clusters
        self.n_iter = settings.kmeans_iters if n_iter is None else n_iter
        self.seed = settings.seed if seed is None else seed

        self.centroids: Optional[np.ndarray] = None
        self.labels: Optional[np.ndarray] = None
        self.sse_history: List[float] = []

    @staticmethod
    def _assign(vectors: np.ndarray, centroids: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """가장 가까운 중심 (동점이면 낮은 번호)과 그 제곱 거리"""
        distances = np.stack(
            [((vectors - c) ** 2).sum(axis=1) for c in centroids], axis=1
        )
        labels = np.argmin(distances, axis=1)
        return labels, distances[np.arange(vectors.shape[0]), labels]

    def _init_centroids_pp(self, vectors: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        n = vectors.shape[0]
        chosen = [int(rng.integers(n))]
        d2 = ((vectors - vectors[chosen[0]]) ** 2).sum(axis=1)

        while len(chosen) < self.n_clusters:
            total = d2.sum()
            if total <= 0.0:
                taken = np.zeros(n, dtype=bool)
                taken[chosen] = True
                idx = int(np.argmin(taken))
            else:
                cumulative = np.cumsum(d2)
                idx = int(np.searchsorted(cumulative, rng.random() * total, side="right"))
                idx = min(idx, n - 1)
            chosen.append(idx)
            d2 = np.minimum(d2, ((vectors - vectors[idx]) ** 2).sum(axis=1))

        return vectors[chosen].copy()

    def _reseed_empty(self, vectors: np.ndarray, centroids: np.ndarray, labels: np.ndarray, d2: np.ndarray) -> bool:
        counts = np.bincount(labels, minlength=self.n_clusters)
        empty = np.nonzero(counts == 0)[0]
        remaining = d2.copy()
        for c in empty:
            # 같은 점을 두 군집에 쓰지 않음
            far = int(np.argmax(remaining))
            remaining[far] = -np.inf
            centroids[c] = vectors[far]
            labels[far] = c
            d2[far] = 0.0
        return empty.size > 0

    def fit(self, vectors) -> np.ndarray:
        """
        중심 학습

        Args:
            vectors: (count, E) 학습 벡터

        Returns:
            (n_clusters, E) 중심
        """
        X = np.asarray(vectors, dtype=np.float64)
        if X.ndim != 2 or X.shape[0] == 0:
            raise InvalidArgumentError("k-means 입력은 비어 있지 않은 2차원 배열이어야 합니다.")
        if self.n_clusters > X.shape[0]:
            raise InvalidArgumentError(
                f"군집 수 {self.n_clusters}가 벡터 수 {X.shape[0]}보다 큽니다."
            )

        rng = np.random.default_rng(self.seed)
        centroids = self._init_centroids_pp(X, rng)
        labels, d2 = self._assign(X, centroids)
        self._reseed_empty(X, centroids, labels, d2)
        self.sse_history = [float(d2.sum())]

        for iteration in range(self.n_iter):
            updated = centroids.copy()
            for c in range(self.n_clusters):
                members = labels == c
                if members.any():
                    updated[c] = X[members].mean(axis=0)

            new_labels, d2 = self._assign(X, updated)
            reseeded = self._reseed_empty(X, updated, new_labels, d2)
            converged = not reseeded and np.array_equal(new_labels, labels)

            centroids, labels = updated, new_labels
            self.sse_history.append(float(d2.sum()))
            if converged:
                logger.debug("k-means 수렴: %d회 반복, SSE=%.6g", iteration + 1, self.sse_history[-1])
                break

        self.centroids = centroids
        self.labels = labels
        return centroids

    def predict(self, vectors) -> np.ndarray:
        if self.centroids is None:
            raise InvalidArgumentError("k-means가 학습되지 않았습니다.")
        labels, _ = self._assign(np.asarray(vectors, dtype=np.float64), self.centroids)
        return labels


def kmeans(vectors, k: int, iters: Optional[int] = None, seed: Optional[int] = None) -> np.ndarray:
    """k-means++ 시딩 후 최대 iters번 Lloyd 반복한 k개 중심"""
    return KMeans(n_clusters=k, n_iter=iters, seed=seed).fit(vectors)


# ============================================
# IVF (근사 검색)
# ============================================

class IvfIndex:
    """
    역파일 인덱스: 각 벡터는 (인덱스 메트릭 기준) 가장 가까운 중심의 posting list 하나에만 저장

    - centroids: (nlist, E) float32
    - postings: 목록별 (ids, (size, E) float32 벡터)
    """

    def __init__(
        self,
        centroids: np.ndarray,
        postings: List[Tuple[List[str], np.ndarray]],
        metric: str
    ):
        self.centroids = centroids
        self.postings = postings
        self.metric = metric
        self.trained = True
        self._centroid_matrix = centroids.astype(np.float64)
        self._posting_matrices = [vectors.astype(np.float64) for _, vectors in postings]

    @property
    def nlist(self) -> int:
        return int(self.centroids.shape[0])

    @property
    def dimension(self) -> int:
        return int(self.centroids.shape[1])

    def __len__(self) -> int:
        return sum(len(ids) for ids, _ in self.postings)

    def posting_sizes(self) -> List[int]:
        return [len(ids) for ids, _ in self.postings]

    def probe_order(self, v: np.ndarray) -> List[int]:
        scores = _score_rows(self._centroid_matrix, v, self.metric)
        return sorted(range(self.nlist), key=lambda c: (-scores[c], c))

    def query(self, q: Sequence[float], k: Optional[int] = None, nprobe: Optional[int] = None) -> List[Neighbor]:
        """
        가까운 중심 nprobe개의 posting list만 스캔한 top-k

        nprobe == nlist이면 flat 검색과 결과가 같다.
        """
        k = settings.top_k if k is None else k
        nprobe = settings.ivf_nprobe if nprobe is None else nprobe
        _check_k(k)
        if not 1 <= nprobe <= self.nlist:
            raise InvalidArgumentError(f"nprobe는 1 이상 nlist({self.nlist}) 이하여야 합니다: {nprobe}")

        qv = _prepare_vector(q, self.metric, self.dimension)
        cells = self.probe_order(qv)[:nprobe]

        scores = [_score_rows(self._posting_matrices[c], qv, self.metric) for c in cells]
        ids = [record_id for c in cells for record_id in self.postings[c][0]]
        return _top_k(np.concatenate(scores), ids, k)

    def get_stats(self) -> dict:
        return {
            "type": "ivf",
            "metric": self.metric,
            "n": len(self),
            "E": self.dimension,
            "nlist": self.nlist,
            "posting_sizes": self.posting_sizes(),
        }


def ivf_build(
    records: Iterable[Record],
    metric: str = "cosine",
    nlist: Optional[int] = None,
    seed: Optional[int] = None,
    iters: Optional[int] = None
) -> IvfIndex:
    """
    IVF 인덱스 생성: k-means 중심 학습 → 각 벡터를 가장 가까운 중심에 할당

    Raises:
        InvalidArgumentError: 레코드 수 < nlist 등
    """
    nlist = settings.ivf_nlist if nlist is None else nlist
    ids, vectors = _prepare_records(records, metric)
    if nlist < 1 or nlist > len(ids):
        raise InvalidArgumentError(f"nlist는 1 이상 레코드 수({len(ids)}) 이하여야 합니다: {nlist}")

    matrix = vectors.astype(np.float64)
    centroids = kmeans(matrix, nlist, iters=iters, seed=seed)
    if metric == "cosine":
        norms = np.sqrt((centroids * centroids).sum(axis=1))
        centroids = centroids / np.where(norms == 0.0, 1.0, norms)[:, None]
    centroids = centroids.astype(np.float32)

    centroid_matrix = centroids.astype(np.float64)
    members: List[List[int]] = [[] for _ in range(nlist)]
    for i in range(matrix.shape[0]):
        members[_nearest_cell(centroid_matrix, matrix[i], metric)].append(i)

    postings = [([ids[i] for i in rows], vectors[rows]) for rows in members]
    index = IvfIndex(centroids, postings, metric)
    logger.info(
        "IVF 인덱스 생성: n=%d, E=%d, nlist=%d, posting=%s",
        len(index), index.dimension, nlist, index.posting_sizes()
    )
    return index


def ivf_query(index: IvfIndex, q: Sequence[float], k: Optional[int] = None, nprobe: Optional[int] = None) -> List[Neighbor]:
    return index.query(q, k, nprobe)


def recall_at_k(approx: Sequence[Neighbor], exact: Sequence[Neighbor]) -> float:
    """정확 top-k 중 근사 결과가 찾은 비율"""
    if not exact:
        return 1.0
    found = {n.id for n in approx}
    return sum(1 for n in exact if n.id in found) / len(exact)


# ============================================
# 인덱스 파일 (S2SIDX v1, little-endian)
# ============================================

MAGIC = b"S2SIDX"
VERSION = 1
_HEADER = struct.Struct("<6sHBIII")
_METRIC_CODES = {"cosine": 0, "l2": 1}
_METRIC_NAMES = {code: name for name, code in _METRIC_CODES.items()}


def save_index(index, path: str) -> None:
    """FlatIndex / IvfIndex → 버전 있는 바이너리 파일"""
    if isinstance(index, IvfIndex):
        nlist = index.nlist
        ids = [record_id for posting_ids, _ in index.postings for record_id in posting_ids]
        vectors = np.concatenate([v for _, v in index.postings], axis=0)
    else:
        nlist = 0
        ids = index.ids
        vectors = index.vectors

    parts = [_HEADER.pack(MAGIC, VERSION, _METRIC_CODES[index.metric], index.dimension, len(ids), nlist)]
    if nlist:
        parts.append(index.centroids.astype("<f4").tobytes())
        parts.append(np.asarray(index.posting_sizes(), dtype="<u4").tobytes())
    parts.append(vectors.astype("<f4").tobytes())
    for record_id in ids:
        encoded = record_id.encode("utf-8")
        parts.append(struct.pack("<I", len(encoded)))
        parts.append(encoded)

    Path(path).write_bytes(b"".join(parts))
    logger.info("인덱스 저장: %s (n=%d, nlist=%d)", path, len(ids), nlist)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.offset = 0

    def take(self, size: int) -> bytes:
        if self.offset + size > len(self.data):
            raise IndexFormatError("인덱스 파일이 잘렸습니다.")
        chunk = self.data[self.offset:self.offset + size]
        self.offset += size
        return chunk

    def array(self, dtype: str, count: int) -> np.ndarray:
        itemsize = np.dtype(dtype).itemsize
        return np.frombuffer(self.take(itemsize * count), dtype=dtype, count=count)


def load_index(path: str):
    """save_index로 저장한 파일 → FlatIndex / IvfIndex"""
    file_path = Path(path)
    if not file_path.exists():
        raise FileNotFoundError(f"파일을 찾을 수 없습니다: {path}")
    reader = _Reader(file_path.read_bytes())

    magic, version, metric_code, dimension, n, nlist = _HEADER.unpack(reader.take(_HEADER.size))
    if magic != MAGIC:
        raise IndexFormatError(f"인덱스 파일이 아닙니다 (magic={magic!r})")
    if version != VERSION:
        raise IndexFormatError(f"지원하지 않는 인덱스 버전입니다: {version}")
    if metric_code not in _METRIC_NAMES:
        raise IndexFormatError(f"알 수 없는 메트릭 코드입니다: {metric_code}")
    metric = _METRIC_NAMES[metric_code]

    centroids = sizes = None
    if nlist:
        centroids = reader.array("<f4", nlist * dimension).reshape(nlist, dimension).astype(np.float32)
        sizes = reader.array("<u4", nlist).astype(np.int64)
        if int(sizes.sum()) != n:
            raise IndexFormatError("posting 크기 합이 벡터 수와 다릅니다.")
    vectors = reader.array("<f4", n * dimension).reshape(n, dimension).astype(np.float32)

    ids = []
    for _ in range(n):
        (length,) = struct.unpack("<I", reader.take(4))
        try:
            ids.append(reader.take(length).decode("utf-8"))
        except UnicodeDecodeError:
            raise IndexFormatError("id가 UTF-8이 아닙니다.")
    if reader.offset != len(reader.data):
        raise IndexFormatError("인덱스 파일 끝에 남은 바이트가 있습니다.")

    if not nlist:
        return FlatIndex(ids, vectors, metric)

    postings = []
    start = 0
    for size in sizes.tolist():
        postings.append((ids[start:start + size], vectors[start:start + size]))
        start += size
    return IvfIndex(centroids, postings, metric)
