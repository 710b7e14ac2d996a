"""Structural predicates for the entry-pattern matrix classes.

Every inequality in a class definition is tested with slack ``eps_ord``;
"strictly negative" means below ``-eps_ord``.  Diagonal entries never take
part in the ordering conditions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matcore import DEFAULT_TOL, SymMatrix, Tolerances, _eigh

__all__ = [
    "ClassLabel",
    "RowSignSummary",
    "is_Mn",
    "idx",
    "is_Rn",
    "is_block_sign",
    "is_almost_block",
    "is_Qmin",
    "is_Qplus",
    "is_Qminus",
    "is_zmatrix",
    "is_nonnegative",
    "row_sign_summary",
    "block_diag",
    "block_diag_class",
    "classify",
]

CLASS_TAGS = (
    "Mn",
    "Rn",
    "BlockSign",
    "AlmostBlock",
    "QMin",
    "QPlus",
    "QMinus",
    "ZMatrix",
    "Nonnegative",
)


@dataclass(frozen=True)
class ClassLabel:
    """A class tag with an optional detail (block split size or positive index)."""

    tag: str
    detail: int | None = None

    def __post_init__(self):
        if self.tag not in CLASS_TAGS:
            raise ValueError(f"unknown class tag {self.tag!r}")
        needs_detail = self.tag in ("BlockSign", "AlmostBlock", "Rn")
        if needs_detail != (self.detail is not None):
            raise ValueError(f"detail must be present iff tag is BlockSign/AlmostBlock/Rn")


@dataclass(frozen=True)
class RowSignSummary:
    """Row classification by off-diagonal signs (1-based row indices).

    nonneg_rows       -- rows whose off-diagonal entries are all >= -eps_ord
    nonpos_rows       -- rows whose off-diagonal entries are all <= eps_ord
    strictly_neg_rows -- subset of nonpos_rows containing an entry < -eps_ord
    """

    nonneg_rows: frozenset
    nonpos_rows: frozenset
    strictly_neg_rows: frozenset


def _offdiag_mask(n: int) -> np.ndarray:
    return ~np.eye(n, dtype=bool)


def is_Mn(a: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Off-diagonal entries nondecreasing along every row (and by symmetry
    every column): a_ij <= a_ik + eps_ord whenever j < k and i is not j or k.

    Checking rows alone suffices because the matrix is symmetric.
    """
    arr = a.array
    n = a.n
    eps = tol.eps_ord
    for i in range(n):
        row = np.delete(arr[i], i)
        if np.any(np.diff(row) < -eps):
            return False
    return True


def idx(a: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> int:
    """Positive index: the first (1-based) row containing an off-diagonal
    entry > eps_ord, or n+1 when every off-diagonal entry is nonpositive."""
    arr = a.array
    n = a.n
    for i in range(n):
        row = np.delete(arr[i], i)
        if row.size and row.max() > tol.eps_ord:
            return i + 1
    return n + 1


def is_Rn(a: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Relaxed ordering: positive off-diagonal entries are nondecreasing to
    the right and downward (where the neighbor is off-diagonal), and every
    row is nondecreasing from column max(idx(A), i+1) through n."""
    arr = a.array
    n = a.n
    eps = tol.eps_ord
    # Condition I: each positive off-diagonal entry <= right/down neighbor.
    for i in range(n):
        for j in range(n):
            if i == j or arr[i, j] <= eps:
                continue
            if j + 1 < n and i != j + 1 and arr[i, j] > arr[i, j + 1] + eps:
                return False
            if i + 1 < n and i + 1 != j and arr[i, j] > arr[i + 1, j] + eps:
                return False
    # Condition II: row tails beyond the positive index are nondecreasing.
    k = idx(a, tol)  # 1-based
    for i in range(1, n):  # 1-based row i in [1, n-1]
        j0 = max(k, i + 1)  # 1-based first column of the tail
        for j in range(j0, n):  # compare (i, j) against (i, j+1), 1-based
            if arr[i - 1, j - 1] > arr[i - 1, j] + eps:
                return False
    return True


def is_block_sign(a: SymMatrix, k: int, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Two-block sign pattern with leading block size k (1 <= k < n):

    * leading k x k block has nonpositive off-diagonal entries,
    * the k x (n-k) off-diagonal block is entirely nonpositive,
    * each of its rows is nondecreasing,
    * the trailing block passes is_Mn.
    """
    n = a.n
    if not 1 <= k < n:
        raise ValueError(f"split size k={k} must satisfy 1 <= k < n={n}")
    arr = a.array
    eps = tol.eps_ord
    lead = arr[:k, :k]
    if np.any(lead[_offdiag_mask(k)] > eps):
        return False
    b = arr[:k, k:]
    if np.any(b > eps):
        return False
    if np.any(np.diff(b, axis=1) < -eps):
        return False
    return is_Mn(SymMatrix(arr[k:, k:]), tol)


def is_almost_block(a: SymMatrix, k: int, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Bordered-block structure with overlap at the k-th row/column
    (1 < k < n): entries outside the two overlapping principal blocks
    {1..k} and {k..n} must vanish, and both blocks must pass is_Mn."""
    n = a.n
    if not 1 < k < n:
        raise ValueError(f"overlap index k={k} must satisfy 1 < k < n={n}")
    arr = a.array
    if np.any(np.abs(arr[: k - 1, k:]) > tol.eps_ord):
        return False
    first = SymMatrix(arr[:k, :k])
    second = SymMatrix(arr[k - 1 :, k - 1 :])
    return is_Mn(first, tol) and is_Mn(second, tol)


def is_Qmin(a: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True when the global minimum entry is attained on the diagonal."""
    arr = a.array
    return float(np.diag(arr).min()) <= float(arr.min()) + tol.eps_ord


def _simplex_tangent_basis(n: int) -> np.ndarray:
    """Deterministic orthonormal basis of the hyperplane {d : sum(d) = 0},
    built from the Householder reflector mapping e/sqrt(n) to the first
    coordinate axis.  Shape (n, n-1)."""
    e1 = np.zeros(n)
    e1[0] = 1.0
    w = np.ones(n) / np.sqrt(n) - e1
    nw = np.linalg.norm(w)
    if nw < 1e-15:  # n == 1
        return np.zeros((1, 0))
    w /= nw
    h = np.eye(n) - 2.0 * np.outer(w, w)
    return h[:, 1:]


def is_Qplus(a: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Convex over the simplex: d^T A d >= 0 for all d orthogonal to the
    all-ones vector (checked as min eigenvalue of V^T A V >= -eps_psd)."""
    n = a.n
    if n == 1:
        return True
    v = _simplex_tangent_basis(n)
    w, _ = _eigh(v.T @ a.array @ v)
    return bool(w[0] >= -tol.eps_psd)


def is_Qminus(a: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Concave over the simplex; the same test applied to -A."""
    return is_Qplus(SymMatrix(-a.array), tol)


def is_zmatrix(a: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> bool:
    arr = a.array
    return not np.any(arr[_offdiag_mask(a.n)] > tol.eps_ord)


def is_nonnegative(a: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> bool:
    return bool(a.array.min() >= -tol.eps_ord)


def row_sign_summary(a: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> RowSignSummary:
    arr = a.array
    n = a.n
    eps = tol.eps_ord
    nonneg, nonpos, strict = [], [], []
    for i in range(n):
        row = np.delete(arr[i], i)
        if row.size == 0 or row.min() >= -eps:
            nonneg.append(i + 1)
        if row.size == 0 or row.max() <= eps:
            nonpos.append(i + 1)
            if row.size and row.min() < -eps:
                strict.append(i + 1)
    return RowSignSummary(frozenset(nonneg), frozenset(nonpos), frozenset(strict))


def block_diag(blocks) -> SymMatrix:
    """Assemble a block-diagonal symmetric matrix from SymMatrix blocks."""
    blocks = list(blocks)
    if not blocks:
        raise ValueError("need at least one block")
    n = sum(b.n for b in blocks)
    out = np.zeros((n, n))
    at = 0
    for b in blocks:
        out[at : at + b.n, at : at + b.n] = b.array
        at += b.n
    return SymMatrix(out)


def block_diag_class(blocks, predicates) -> bool:
    """True when each block passes its predicate.

    ``predicates`` is either one callable applied to every block or a
    sequence of callables matched positionally.
    """
    blocks = list(blocks)
    if callable(predicates):
        preds = [predicates] * len(blocks)
    else:
        preds = list(predicates)
        if len(preds) != len(blocks):
            raise ValueError("need exactly one predicate per block")
    return all(pred(b) for b, pred in zip(blocks, preds))


def classify(a: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> list:
    """Every ClassLabel the matrix satisfies (used by the CLI's classify)."""
    labels = []
    if is_Mn(a, tol):
        labels.append(ClassLabel("Mn"))
    if is_Rn(a, tol):
        labels.append(ClassLabel("Rn", idx(a, tol)))
    for k in range(1, a.n):
        if is_block_sign(a, k, tol):
            labels.append(ClassLabel("BlockSign", k))
    for k in range(2, a.n):
        if is_almost_block(a, k, tol):
            labels.append(ClassLabel("AlmostBlock", k))
    if is_Qmin(a, tol):
        labels.append(ClassLabel("QMin"))
    if is_Qplus(a, tol):
        labels.append(ClassLabel("QPlus"))
    if is_Qminus(a, tol):
        labels.append(ClassLabel("QMinus"))
    if is_zmatrix(a, tol):
        labels.append(ClassLabel("ZMatrix"))
    if is_nonnegative(a, tol):
        labels.append(ClassLabel("Nonnegative"))
    return labels
