"""벡터 인덱스 (flat / IVF / k-means / 인덱스 파일) 테스트"""

import struct

import numpy as np
import pytest

from s2s.errors import IndexFormatError, InvalidArgumentError
from s2s.services.semantic_search import SemanticSearchService
from s2s.services.vector_service import (
    FlatIndex,
    IvfIndex,
    KMeans,
    MAGIC,
    flat_build,
    flat_query,
    ivf_build,
    ivf_query,
    kmeans,
    load_index,
    recall_at_k,
    save_index,
)
from s2s.utils.embedding_loader import embedding_loader
from tests import oracles
from tests.conftest import FIXTURES


def _queries(count: int, seed: int = 99):
    return np.random.default_rng(seed).standard_normal((count, 8))


def _as_stored(vectors: np.ndarray, metric: str) -> np.ndarray:
    """저장 규칙 그대로: cosine이면 정규화, float32 반올림"""
    if metric == "cosine":
        vectors = vectors / np.sqrt((vectors * vectors).sum(axis=1, keepdims=True))
    return vectors.astype(np.float32).astype(np.float64)


class TestFlatIndex:
    @pytest.mark.parametrize("metric", ["cosine", "l2"])
    def test_matches_linear_scan(self, gaussian_corpus, metric):
        index = flat_build(gaussian_corpus, metric)
        ids = [record_id for record_id, _ in gaussian_corpus]
        vectors = [vector for _, vector in gaussian_corpus]
        for q in _queries(20):
            got = flat_query(index, q, k=10)
            expected = oracles.knn_scan(vectors, ids, q, 10, metric)
            assert [n.id for n in got] == [record_id for record_id, _ in expected]
            assert [n.score for n in got] == pytest.approx([score for _, score in expected], abs=1e-9)

    @pytest.mark.parametrize("metric", ["cosine", "l2"])
    def test_random_corpora_match_numpy_scan(self, metric):
        rng = np.random.default_rng(2024 if metric == "cosine" else 2025)
        for _ in range(50):
            n, dim = int(rng.integers(1, 2001)), int(rng.integers(1, 65))
            vectors = rng.standard_normal((n, dim))
            ids = [f"r{i:05d}" for i in range(n)]
            index = flat_build(zip(ids, vectors), metric)

            stored = _as_stored(vectors, metric)
            for _ in range(3):
                q = rng.standard_normal(dim)
                k = int(rng.integers(1, 21))
                qv = _as_stored(q[None, :], metric)[0]
                scores = stored @ qv if metric == "cosine" else -((stored - qv) ** 2).sum(axis=1)
                order = sorted(range(n), key=lambda i: (-scores[i], ids[i]))[:k]

                got = flat_query(index, q, k=k)
                assert [hit.id for hit in got] == [ids[i] for i in order]
                assert [hit.score for hit in got] == pytest.approx([scores[i] for i in order], abs=1e-9)

    def test_ties_break_by_id(self):
        index = flat_build([("b", [1.0, 0.0]), ("a", [2.0, 0.0]), ("c", [0.0, 1.0])], "cosine")
        assert [n.id for n in index.query([1.0, 0.0], k=2)] == ["a", "b"]

    def test_k_larger_than_index(self):
        index = flat_build([("x", [1.0, 0.0]), ("y", [0.0, 1.0])], "l2")
        result = index.query([1.0, 0.0], k=10)
        assert [n.id for n in result] == ["x", "y"]
        assert result[0].score == 0.0
        assert result[1].score == -2.0

    def test_vectors_stored_as_float32(self):
        index = flat_build([("x", [0.1, 0.2])], "l2")
        assert index.vectors.dtype == np.float32

    @pytest.mark.parametrize(
        "records, metric",
        [
            ([], "cosine"),
            ([("x", [1.0]), ("x", [2.0])], "cosine"),
            ([("x", [1.0]), ("y", [1.0, 2.0])], "l2"),
            ([("x", [0.0, 0.0])], "cosine"),
            ([("x", [1.0])], "dot"),
        ]
    )
    def test_invalid_records(self, records, metric):
        with pytest.raises(InvalidArgumentError):
            flat_build(records, metric)

    def test_query_errors(self):
        index = flat_build([("x", [1.0, 0.0])], "l2")
        with pytest.raises(InvalidArgumentError):
            index.query([1.0, 0.0, 0.0])
        with pytest.raises(InvalidArgumentError):
            index.query([1.0, 0.0], k=0)


class TestKMeans:
    def test_two_clouds(self):
        rng = np.random.default_rng(0)
        left = rng.normal(-10.0, 0.5, (50, 2))
        right = rng.normal(10.0, 0.5, (50, 2))
        model = KMeans(2, seed=1)
        centroids = model.fit(np.vstack([left, right]))
        xs = sorted(centroids[:, 0].tolist())
        assert xs[0] == pytest.approx(-10.0, abs=0.5)
        assert xs[1] == pytest.approx(10.0, abs=0.5)
        assert len(set(model.labels[:50].tolist())) == 1
        assert model.labels[0] != model.labels[-1]

    def test_k_equals_count(self):
        points = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
        model = KMeans(3, seed=0)
        model.fit(points)
        assert model.sse_history[-1] == 0.0
        assert sorted(model.labels.tolist()) == [0, 1, 2]

    def test_duplicate_points_fill_every_cluster(self):
        points = np.ones((5, 2))
        model = KMeans(3, seed=0)
        centroids = model.fit(points)
        assert centroids.shape == (3, 2)
        assert np.bincount(model.labels, minlength=3).min() >= 1

    def test_same_seed_same_centroids(self, gaussian_corpus):
        vectors = np.array([v for _, v in gaussian_corpus[:300]])
        assert np.array_equal(kmeans(vectors, 4, seed=7), kmeans(vectors, 4, seed=7))

    def test_sse_non_increasing(self, gaussian_corpus):
        vectors = np.array([v for _, v in gaussian_corpus])
        model = KMeans(8, n_iter=30, seed=3)
        model.fit(vectors)
        history = model.sse_history
        assert all(b <= a * (1 + 1e-9) for a, b in zip(history, history[1:]))

    def test_predict(self):
        model = KMeans(2, seed=0)
        model.fit(np.array([[0.0], [0.1], [10.0], [10.1]]))
        labels = model.predict(np.array([[0.05], [9.0]]))
        assert labels[0] != labels[1]

    @pytest.mark.parametrize("k", [0, 5])
    def test_invalid_cluster_count(self, k):
        with pytest.raises(InvalidArgumentError):
            KMeans(k).fit(np.zeros((4, 2)))

    def test_predict_before_fit(self):
        with pytest.raises(InvalidArgumentError):
            KMeans(2).predict(np.zeros((1, 2)))


class TestIvfIndex:
    @pytest.fixture(scope="class")
    def ivf(self, gaussian_corpus):
        return ivf_build(gaussian_corpus, "cosine", nlist=16, seed=0)

    def test_every_record_in_one_posting(self, ivf, gaussian_corpus):
        ids = [record_id for posting_ids, _ in ivf.postings for record_id in posting_ids]
        assert sorted(ids) == sorted(record_id for record_id, _ in gaussian_corpus)
        assert sum(ivf.posting_sizes()) == len(gaussian_corpus)
        assert ivf.centroids.dtype == np.float32

    def test_full_probe_equals_flat(self, ivf, gaussian_corpus):
        flat = flat_build(gaussian_corpus, "cosine")
        for q in _queries(20):
            assert ivf_query(ivf, q, k=10, nprobe=ivf.nlist) == flat.query(q, k=10)

    def test_recall_grows_with_nprobe(self, ivf, gaussian_corpus):
        flat = flat_build(gaussian_corpus, "cosine")
        queries = _queries(50, seed=5)
        exact = [flat.query(q, k=10) for q in queries]

        means = []
        for nprobe in (1, 2, 4, 8, 16):
            recalls = [recall_at_k(ivf.query(q, 10, nprobe), e) for q, e in zip(queries, exact)]
            means.append(sum(recalls) / len(recalls))
        assert all(b >= a for a, b in zip(means, means[1:]))
        assert means[-1] == 1.0

    def test_l2_metric(self, gaussian_corpus):
        ivf = ivf_build(gaussian_corpus[:200], "l2", nlist=4, seed=2)
        flat = flat_build(gaussian_corpus[:200], "l2")
        q = _queries(1)[0]
        assert ivf.query(q, 5, nprobe=4) == flat.query(q, 5)

    def test_nprobe_range(self, ivf):
        with pytest.raises(InvalidArgumentError):
            ivf.query(_queries(1)[0], 5, nprobe=0)
        with pytest.raises(InvalidArgumentError):
            ivf.query(_queries(1)[0], 5, nprobe=ivf.nlist + 1)

    def test_nlist_larger_than_records(self):
        with pytest.raises(InvalidArgumentError):
            ivf_build([("a", [1.0, 0.0])], "cosine", nlist=2)

    def test_recall_of_empty_exact(self):
        assert recall_at_k([], []) == 1.0


class TestIndexFile:
    @pytest.mark.parametrize("nlist", [0, 4])
    def test_save_load_preserves_queries(self, tmp_path, gaussian_corpus, nlist):
        records = gaussian_corpus[:200]
        index = flat_build(records, "l2") if nlist == 0 else ivf_build(records, "l2", nlist=nlist, seed=1)
        path = tmp_path / "index.bin"
        save_index(index, str(path))
        loaded = load_index(str(path))

        assert type(loaded) is type(index)
        assert loaded.get_stats() == index.get_stats()
        for q in _queries(100):
            if nlist:
                assert loaded.query(q, 5, nprobe=2) == index.query(q, 5, nprobe=2)
            else:
                assert loaded.query(q, 5) == index.query(q, 5)

    def test_unicode_ids(self, tmp_path):
        index = flat_build([("가", [1.0, 0.0]), ("나다", [0.0, 1.0])], "cosine")
        path = tmp_path / "index.bin"
        save_index(index, str(path))
        assert load_index(str(path)).ids == ["가", "나다"]

    @pytest.fixture
    def saved(self, tmp_path):
        path = tmp_path / "index.bin"
        save_index(flat_build([("a", [1.0, 0.0]), ("b", [0.0, 1.0])], "cosine"), str(path))
        return path

    def test_bad_magic(self, saved):
        data = saved.read_bytes()
        saved.write_bytes(b"NOTIDX" + data[len(MAGIC):])
        with pytest.raises(IndexFormatError):
            load_index(str(saved))

    def test_bad_version(self, saved):
        data = bytearray(saved.read_bytes())
        data[6:8] = struct.pack("<H", 99)
        saved.write_bytes(bytes(data))
        with pytest.raises(IndexFormatError):
            load_index(str(saved))

    def test_truncated(self, saved):
        saved.write_bytes(saved.read_bytes()[:-1])
        with pytest.raises(IndexFormatError):
            load_index(str(saved))

    def test_trailing_bytes(self, saved):
        saved.write_bytes(saved.read_bytes() + b"\x00")
        with pytest.raises(IndexFormatError):
            load_index(str(saved))

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_index(str(tmp_path / "none.bin"))


class TestSemanticSearch:
    @pytest.fixture
    def service(self):
        store = embedding_loader.load(str(FIXTURES / "words.txt"))
        return SemanticSearchService(store)

    @pytest.fixture
    def corpus(self):
        return (FIXTURES / "corpus.txt").read_text(encoding="utf-8").splitlines()

    def test_flat_query_ranks_lines(self, service, corpus):
        service.build(corpus, nlist=0)
        results = service.query("cat", k=2)
        assert [line for line, _ in results] == [1, 3]
        assert service.get_stats() == {"n": 4, "E": 3, "nlist": 0}

    def test_tied_lines_keep_numeric_order(self, service):
        service.build(["cat"] * 12, nlist=0)
        assert [line for line, _ in service.query("cat", k=12)] == list(range(1, 13))
        assert [line for line, _ in service.query("cat", k=3)] == [1, 2, 3]

    def test_ivf_full_probe_matches_flat(self, service, corpus):
        service.build(corpus, nlist=0)
        expected = service.query("truck", k=4)
        service.build(corpus, nlist=2, seed=0)
        assert service.query("truck", k=4, nprobe=2) == expected

    def test_save_and_load(self, service, corpus, tmp_path):
        service.build(corpus, nlist=0)
        path = tmp_path / "corpus.idx"
        service.save(str(path))
        expected = service.query("fast dog", k=3)

        other = SemanticSearchService(service.store)
        assert isinstance(other.load(str(path)), FlatIndex)
        assert other.query("fast dog", k=3) == expected

    def test_line_without_known_tokens(self, service):
        with pytest.raises(InvalidArgumentError) as excinfo:
            service.build(["cat", "zebra"], nlist=0)
        assert "2" in str(excinfo.value)

    def test_query_before_build(self, service):
        with pytest.raises(InvalidArgumentError):
            service.query("cat")

    def test_dimension_mismatch_on_load(self, service, tmp_path):
        path = tmp_path / "other.idx"
        save_index(flat_build([("1", [1.0, 0.0])], "cosine"), str(path))
        with pytest.raises(InvalidArgumentError):
            service.load(str(path))

    def test_ivf_type_after_build(self, service, corpus):
        assert isinstance(service.build(corpus, nlist=2, seed=0), IvfIndex)


class TestSelfQuery:
    def test_flat_self_query_scores_one(self, gaussian_corpus):
        index = flat_build(gaussian_corpus[:100], "cosine")
        record_id, vector = gaussian_corpus[42]
        top = index.query(vector, k=1)[0]
        assert top.id == record_id
        assert top.score == pytest.approx(1.0, abs=1e-6)

    def test_ivf_self_query_lands_in_own_cell(self, gaussian_corpus):
        ivf = ivf_build(gaussian_corpus, "cosine", nlist=8, seed=4)
        for record_id, vector in gaussian_corpus[:50]:
            assert ivf.query(vector, k=1, nprobe=1)[0].id == record_id

    def test_single_list_degenerates_to_flat(self, gaussian_corpus):
        ivf = ivf_build(gaussian_corpus[:300], "l2", nlist=1, seed=0)
        flat = flat_build(gaussian_corpus[:300], "l2")
        assert ivf.posting_sizes() == [300]
        q = _queries(1, seed=8)[0]
        assert ivf.query(q, 10, nprobe=1) == flat.query(q, 10)

    def test_kmeans_saturated_centroids_are_points(self):
        points = np.array([[0.0, 0.0], [5.0, 1.0], [-2.0, 3.0], [1.0, -4.0]])
        centroids = kmeans(points, 4, seed=2)
        assert sorted(map(tuple, centroids.tolist())) == sorted(map(tuple, points.tolist()))
