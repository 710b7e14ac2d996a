"""Matrix/vector text format: parsing, errors with positions, round trips."""

import numpy as np
import pytest

from spnkit import (
    ParseError,
    SymMatrix,
    format_matrix,
    format_vector,
    parse_matrix,
    parse_vector,
    read_matrix,
    write_matrix,
)


class TestParse:
    def test_basic(self):
        a = parse_matrix("2\n1 2\n2 3\n")
        assert a.n == 2 and a.entry(1, 2) == 2.0

    def test_comments_and_whitespace(self):
        a = parse_matrix("# header\n 3 # dim\n1 0 0\n0 1 0  # row\n0 0 1\n")
        assert np.array_equal(a.array, np.eye(3))

    def test_scientific_notation(self):
        a = parse_matrix("1\n-1.25e-3")
        assert a.entry(1, 1) == -1.25e-3

    def test_truncated(self):
        with pytest.raises(ParseError) as info:
            parse_matrix("3\n1 0 0 0 1 0 0 0")  # 8 of 9 values
        assert "truncated" in str(info.value)

    def test_extra_tokens(self):
        with pytest.raises(ParseError):
            parse_matrix("2\n1 2 2 3 4")

    def test_bad_dimension(self):
        with pytest.raises(ParseError):
            parse_matrix("zero\n")
        with pytest.raises(ParseError):
            parse_matrix("-2\n1 2 2 1")

    def test_bad_number_position(self):
        with pytest.raises(ParseError) as info:
            parse_matrix("2\n1 2\n2 x")
        assert info.value.line == 3 and info.value.column == 3

    def test_empty(self):
        with pytest.raises(ParseError):
            parse_matrix("   \n# only comments\n")

    def test_asymmetric_rejected(self):
        with pytest.raises(ParseError):
            parse_matrix("2\n1 5\n2 1")

    def test_vector(self):
        v = parse_vector("3\n1 2.5 -3\n")
        assert np.array_equal(v, [1.0, 2.5, -3.0])

    def test_vector_truncated(self):
        with pytest.raises(ParseError):
            parse_vector("4\n1 2 3")


class TestRoundTrip:
    def test_format_parse_exact(self, rng):
        for _ in range(50):
            n = int(rng.integers(1, 9))
            a = rng.uniform(-5, 5, size=(n, n))
            a = SymMatrix((a + a.T) / 2)
            b = parse_matrix(format_matrix(a))
            assert np.array_equal(a.array, b.array)

    def test_file_round_trip_bit_identical(self, tmp_path, rng):
        a = rng.uniform(-3, 3, size=(4, 4))
        a = SymMatrix((a + a.T) / 2)
        p1 = tmp_path / "m1.txt"
        p2 = tmp_path / "m2.txt"
        write_matrix(p1, a)
        write_matrix(p2, read_matrix(p1))
        assert p1.read_bytes() == p2.read_bytes()

    def test_vector_round_trip(self):
        v = np.array([1.0, -2.0 / 3.0, 1e-17])
        assert np.array_equal(parse_vector(format_vector(v)), v)

    def test_17_digits(self):
        a = SymMatrix([[1.0 / 3.0]])
        assert "0.33333333333333331" in format_matrix(a)
