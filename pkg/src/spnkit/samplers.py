"""Seeded random instance generators used by the selftest suites and tests."""

from __future__ import annotations

import numpy as np

from .classes import idx, is_Rn
from .matcore import GroupElement, SymMatrix

__all__ = [
    "random_symmetric",
    "random_mn_member",
    "random_rn_member",
    "random_group_element",
    "random_spn",
    "random_zmatrix_diag_dominant",
    "random_qmin_instance",
]


def random_symmetric(rng: np.random.Generator, n: int, scale: float = 2.0) -> SymMatrix:
    a = rng.uniform(-scale, scale, size=(n, n))
    return SymMatrix((a + a.T) / 2.0)


def random_mn_member(rng: np.random.Generator, n: int,
                     neg_first_row: bool = False) -> SymMatrix:
    """Random member of the ordered class.

    Entries s_i + s_j + w*min(i,j) + u*max(i,j) with s sorted and w, u >= 0
    are nondecreasing along rows and columns; the diagonal is free.  With
    neg_first_row the first row is strictly negative off the diagonal and
    the (1,1) entry positive, the setup of the Schur closure arguments.
    """
    s = np.sort(rng.uniform(-2.0, 2.0, size=n))
    w = rng.uniform(0.0, 1.0)
    u = rng.uniform(0.0, 1.0)
    if neg_first_row:
        s[0] = -(abs(s).max() + w + u * n + rng.uniform(0.5, 2.0))
    grid = np.arange(n)
    a = (
        s[:, None]
        + s[None, :]
        + w * np.minimum.outer(grid, grid)
        + u * np.maximum.outer(grid, grid)
    )
    diag = rng.uniform(-1.0, 4.0, size=n)
    if neg_first_row:
        diag[0] = rng.uniform(0.5, 4.0)
    np.fill_diagonal(a, diag)
    return SymMatrix(a)


def random_rn_member(rng: np.random.Generator, n: int,
                     neg_first_row: bool = False) -> SymMatrix:
    """Random member of the relaxed-ordered class, generically not ordered.

    Builds an ordered member whose first few rows are forced negative, then
    rewrites the all-nonpositive leading region (rows and columns before the
    positive index) with unordered negative noise; such entries are
    unconstrained by both relaxed conditions.
    """
    s = np.sort(rng.uniform(-2.0, 2.0, size=n))
    w = rng.uniform(0.0, 1.0)
    u = rng.uniform(0.0, 1.0)
    lead = max(2, n // 2) if n >= 3 else 1
    drop = abs(s).max() + w * n + u * n + rng.uniform(0.5, 2.0)
    s[:lead] -= drop
    s = np.sort(s)
    grid = np.arange(n)
    base = (
        s[:, None]
        + s[None, :]
        + w * np.minimum.outer(grid, grid)
        + u * np.maximum.outer(grid, grid)
    )
    diag = rng.uniform(-1.0, 4.0, size=n)
    if neg_first_row:
        diag[0] = rng.uniform(0.5, 4.0)
    np.fill_diagonal(base, diag)
    k = idx(SymMatrix(base))  # 1-based; rows before k are all nonpositive
    for i in range(0, k - 1):  # 0-based rows/cols strictly before k-1
        for j in range(i + 1, k - 1):
            val = -rng.uniform(0.0, 3.0)
            base[i, j] = val
            base[j, i] = val
    out = SymMatrix(base)
    assert is_Rn(out), "sampler produced a matrix outside the relaxed class"
    return out


def random_group_element(rng: np.random.Generator, n: int) -> GroupElement:
    perm = tuple(int(p) + 1 for p in rng.permutation(n))
    diag = tuple(float(d) for d in rng.uniform(0.2, 5.0, size=n))
    return GroupElement(perm, diag)


def random_spn(rng: np.random.Generator, n: int, rank: int | None = None) -> SymMatrix:
    """Random PSD-plus-nonnegative sample."""
    r = rank if rank is not None else max(1, n - 1)
    g = rng.normal(size=(n, r))
    p = g @ g.T
    h = np.abs(rng.normal(size=(n, n)))
    return SymMatrix(p + (h + h.T) / 2.0)


def random_zmatrix_diag_dominant(rng: np.random.Generator, n: int) -> SymMatrix:
    """Diagonally dominant matrix with nonpositive off-diagonal entries."""
    off = -np.abs(rng.uniform(0.0, 2.0, size=(n, n)))
    off = (off + off.T) / 2.0
    np.fill_diagonal(off, 0.0)
    row_mass = -off.sum(axis=1)
    diag = row_mass + rng.uniform(0.1, 2.0, size=n)
    a = off + np.diag(diag)
    return SymMatrix(a)


def random_qmin_instance(rng: np.random.Generator, n: int) -> SymMatrix:
    """Nonnegative matrix whose global minimum entry sits on the diagonal."""
    a = np.abs(rng.uniform(0.0, 3.0, size=(n, n)))
    a = (a + a.T) / 2.0
    i = int(rng.integers(0, n))
    a[i, i] = float(a.min())
    return SymMatrix(a)
