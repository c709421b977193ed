"""시퀀스 / 토큰화 / 점수 체계 / 치환 행렬 파일 테스트"""

import io

import numpy as np
import pytest
from hypothesis import given, strategies as st

from s2s.errors import InvalidArgumentError, ParseError
from s2s.models.scoring import SubstitutionMatrix, UniformScoring, uniform_scoring
from s2s.models.sequence import Sequence, as_sequence, encode_symbols
from s2s.utils.matrix_loader import parse_substitution_matrix, serialize_substitution_matrix
from s2s.utils.tokenizer import Tokenizer, tokenize


class TestTokenize:
    @pytest.mark.parametrize(
        "text, mode, expected",
        [
            ("abc", "char", ["a", "b", "c"]),
            ("ATT G GC", "whitespace", ["ATT", "G", "GC"]),
            ("", "char", []),
            ("  a \t b\n", "whitespace", ["a", "b"]),
            ("한글", "char", ["한", "글"]),
        ]
    )
    def test_modes(self, text, mode, expected):
        assert list(tokenize(text, mode)) == expected

    def test_delimiter_collapses_empty_tokens(self):
        assert tokenize("a,,b,c,", "delimiter", ",").symbols == ("a", "b", "c")

    @pytest.mark.parametrize("delimiter", ["", None])
    def test_empty_delimiter_rejected(self, delimiter):
        with pytest.raises(InvalidArgumentError):
            tokenize("a,b", "delimiter", delimiter)

    def test_unknown_mode_rejected(self):
        with pytest.raises(InvalidArgumentError):
            Tokenizer("grapheme")

    @given(st.text())
    def test_char_mode_concatenation_reproduces_text(self, text):
        assert tokenize(text, "char").join() == text

    @given(st.lists(st.text(alphabet="xyz", min_size=1, max_size=4), max_size=8))
    def test_delimiter_join_round_trip(self, tokens):
        text = "|".join(tokens)
        assert tokenize(text, "delimiter", "|").join("|") == text


class TestSequence:
    def test_equality_is_elementwise(self):
        assert tokenize("ab cd", "whitespace") == Sequence.of(["ab", "cd"])
        assert as_sequence("ab") == Sequence(("a", "b"))

    def test_slice_returns_sequence(self):
        seq = Sequence.of(["a", "b", "c"])
        assert seq[1:] == Sequence.of(["b", "c"])
        assert seq[0] == "a"
        assert seq.alphabet == frozenset("abc")

    def test_encode_symbols_shares_vocabulary(self):
        (a, b), vocab = encode_symbols("abc", ["c", "z"])
        assert vocab == ["a", "b", "c", "z"]
        assert a.tolist() == [0, 1, 2]
        assert b.tolist() == [2, 3]


class TestScoring:
    @pytest.mark.parametrize(
        "match, mismatch, gap",
        [(1, -1, -1), (3, -3, -2), (0, 0, 0)]
    )
    def test_uniform_scoring(self, match, mismatch, gap):
        scoring, penalty = uniform_scoring(match, mismatch, gap)
        assert scoring.score("x", "x") == match
        assert scoring.score("x", "y") == mismatch
        assert penalty.per_gap == gap

    def test_uniform_scoring_rejects_infinite(self):
        with pytest.raises(ValueError):
            UniformScoring(match=float("inf"))

    def test_identity_matrix(self):
        matrix = SubstitutionMatrix.identity("AB", 2, -1)
        assert matrix["A", "A"] == 2
        assert matrix["A", "B"] == -1
        assert matrix.score("A", "Q") == -1

    def test_default_score_is_table_minimum(self):
        matrix = SubstitutionMatrix("AB", [[1, -3], [-3, 1]])
        assert matrix.default_score == -3

    def test_lookup_matches_score(self, blosum62):
        vocab = ["W", "A", "J"]
        lookup = blosum62.lookup(vocab)
        row = lookup.row(0, np.array([0, 1, 2]))
        assert row.tolist() == [11, -3, blosum62.default_score]
        assert lookup.pair(1, 1) == 4

    def test_rejects_non_square(self):
        with pytest.raises(InvalidArgumentError):
            SubstitutionMatrix("AB", [[1, 2, 3], [4, 5, 6]])


class TestMatrixFile:
    def test_two_by_two(self):
        matrix = parse_substitution_matrix("  A B\nA 1 -1\nB -1 1")
        assert matrix.score("A", "A") == 1
        assert matrix.score("A", "B") == -1

    def test_blosum62(self, blosum62):
        assert blosum62.score("W", "W") == 11
        assert blosum62.score("A", "A") == 4
        assert len(blosum62.alphabet) == 24
        assert np.array_equal(blosum62.scores, blosum62.scores.T)

    def test_serialize_parse_fixed_point(self, blosum62):
        text = serialize_substitution_matrix(blosum62)
        again = parse_substitution_matrix(io.StringIO(text))
        assert again == blosum62
        assert serialize_substitution_matrix(again) == text

    def test_fractional_scores_round_trip(self):
        matrix = SubstitutionMatrix("xy", [[0.5, -1.25], [-1.25, 2]])
        assert parse_substitution_matrix(serialize_substitution_matrix(matrix)) == matrix

    @pytest.mark.parametrize(
        "text, line_no",
        [
            ("  A B\nA 1 -1\nC -1 1", 3),           # 헤더에 없는 행 심볼
            ("  A B\nA 1\nB -1 1", 2),              # 길이 불일치
            ("  A B\nA 1 x\nB -1 1", 2),            # 숫자 아님
            ("  A A\nA 1 1\n", 1),                  # 헤더 중복
            ("# c\n  A B\nA 1 -1\nA -1 1", 4),      # 행 중복
        ]
    )
    def test_malformed_reports_line(self, text, line_no):
        with pytest.raises(ParseError) as excinfo:
            parse_substitution_matrix(text)
        assert excinfo.value.line_no == line_no
        assert f"line {line_no}" in str(excinfo.value)

    def test_missing_row(self):
        with pytest.raises(ParseError):
            parse_substitution_matrix("  A B\nA 1 -1\n")
