"""Plain-text encoding for matrices and vectors.

Format: the first token is the dimension n, followed by n*n (matrices) or n
(vectors) whitespace-separated decimal reals in row-major order.  Anything
from '#' to the end of a line is a comment.  Writers emit 17 significant
digits, which round-trips IEEE doubles exactly.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import ParseError
from .matcore import SymMatrix

__all__ = [
    "parse_matrix",
    "parse_vector",
    "format_matrix",
    "format_vector",
    "read_matrix",
    "write_matrix",
    "read_vector",
    "write_vector",
]


def _tokenize(text: str):
    """Yield (token, line, column), both 1-based, with comments stripped."""
    for ln, line in enumerate(text.splitlines(), start=1):
        hash_pos = line.find("#")
        if hash_pos >= 0:
            line = line[:hash_pos]
        col = 0
        length = len(line)
        while col < length:
            if line[col].isspace():
                col += 1
                continue
            start = col
            while col < length and not line[col].isspace():
                col += 1
            yield line[start:col], ln, start + 1


def _parse_tokens(text: str, per_dim: int, what: str) -> np.ndarray:
    tokens = _tokenize(text)
    try:
        tok, ln, col = next(tokens)
    except StopIteration:
        raise ParseError(f"empty {what} input", 1, 1) from None
    try:
        n = int(tok)
    except ValueError:
        raise ParseError(f"expected integer dimension, got {tok!r}", ln, col) from None
    if n <= 0:
        raise ParseError(f"dimension must be positive, got {n}", ln, col)
    count = n**per_dim
    values = np.empty(count, dtype=float)
    got = 0
    last = (ln, col)
    for tok, ln, col in tokens:
        if got >= count:
            raise ParseError(
                f"unexpected extra token {tok!r}: {what} of dimension {n} "
                f"takes exactly {count} values",
                ln,
                col,
            )
        try:
            values[got] = float(tok)
        except ValueError:
            raise ParseError(f"expected a real number, got {tok!r}", ln, col) from None
        got += 1
        last = (ln, col)
    if got < count:
        raise ParseError(
            f"truncated {what}: expected {count} values, found {got}", last[0], last[1]
        )
    if not np.all(np.isfinite(values)):
        raise ParseError(f"{what} contains non-finite values", last[0], last[1])
    return values.reshape((n,) * per_dim)


def parse_matrix(text: str) -> SymMatrix:
    arr = _parse_tokens(text, 2, "matrix")
    try:
        return SymMatrix(arr)
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1) from exc


def parse_vector(text: str) -> np.ndarray:
    return _parse_tokens(text, 1, "vector")


def format_matrix(a: SymMatrix) -> str:
    lines = [str(a.n)]
    for row in a.array:
        lines.append(" ".join(f"{x:.17g}" for x in row))
    return "\n".join(lines) + "\n"


def format_vector(v) -> str:
    v = np.asarray(v, dtype=float)
    return f"{v.size}\n" + " ".join(f"{x:.17g}" for x in v) + "\n"


def read_matrix(path: str | os.PathLike) -> SymMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def write_matrix(path: str | os.PathLike, a: SymMatrix) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_matrix(a))


def read_vector(path: str | os.PathLike) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_vector(fh.read())


def write_vector(path: str | os.PathLike, v) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_vector(v))
