"""Symmetric-matrix value types, the permutation/scaling group action, Schur
complements, and eigenvalue-based PSD utilities.

Conventions used across the package:

* All public row/column positions are 1-based, matching the usual
  mathematical indexing of matrices.  Internally everything is 0-based numpy.
* All types are immutable after construction and every operation is a pure
  function, so concurrent use from multiple threads is safe.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoConvergenceError, ZeroPivotError

__all__ = [
    "SymMatrix",
    "GroupElement",
    "Tolerances",
    "DEFAULT_TOL",
    "schur_complement",
    "delete_row_col",
    "apply_group",
    "compose",
    "identity_group",
    "inverse_group",
    "sym_eigen",
    "project_psd",
    "frob",
]

# Constructors symmetrize (A + A^T)/2 but reject anything that is not
# symmetric up to this relative slack; it tolerates text round-trip noise
# while rejecting genuinely asymmetric data.
_ASYM_REL_TOL = 1e-6


@dataclass(frozen=True)
class Tolerances:
    """Numeric tolerances threaded through every operation.

    eps_ord  -- slack for sign/ordering comparisons
    eps_psd  -- eigenvalue slack for "is PSD" checks
    eps_feas -- feasibility residual slack (certificates, witnesses)
    eps_opt  -- bisection interval width target
    max_iter -- iteration cap for the projection solvers
    """

    eps_ord: float = 1e-9
    eps_psd: float = 1e-8
    eps_feas: float = 1e-8
    eps_opt: float = 1e-6
    max_iter: int = 100_000

    def __post_init__(self):
        for name in ("eps_ord", "eps_psd", "eps_feas", "eps_opt"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")


DEFAULT_TOL = Tolerances()


class SymMatrix:
    """Dense real symmetric n-by-n matrix; the universal input type.

    The constructor accepts anything `numpy.asarray` understands, checks
    squareness and finiteness, rejects asymmetry beyond 1e-6 relative, and
    stores the symmetrized average (A + A^T)/2 as a read-only array.
    """

    __slots__ = ("_a",)

    def __init__(self, entries):
        a = np.asarray(entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        if a.shape[0] == 0:
            raise ValueError("matrix dimension must be positive")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix entries must all be finite")
        scale = max(1.0, float(np.abs(a).max()))
        asym = float(np.abs(a - a.T).max())
        if asym > _ASYM_REL_TOL * scale:
            raise ValueError(
                f"input is not symmetric: max |a_ij - a_ji| = {asym:.3e} "
                f"exceeds {_ASYM_REL_TOL:g} relative"
            )
        a = (a + a.T) / 2.0
        a.setflags(write=False)
        object.__setattr__(self, "_a", a)

    @property
    def n(self) -> int:
        return self._a.shape[0]

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the underlying entries."""
        return self._a

    def to_array(self) -> np.ndarray:
        """Writable copy of the entries."""
        return self._a.copy()

    def entry(self, i: int, j: int) -> float:
        """Entry at 1-based position (i, j)."""
        return float(self._a[i - 1, j - 1])

    def __repr__(self):
        return f"SymMatrix(n={self.n})"

    def allclose(self, other: "SymMatrix", atol: float = 1e-12) -> bool:
        return self.n == other.n and bool(
            np.allclose(self._a, other._a, atol=atol, rtol=0.0)
        )


@dataclass(frozen=True)
class GroupElement:
    """A permutation of {1..n} paired with a strictly positive diagonal.

    ``perm`` maps target position r to source position perm[r] (1-based),
    so applying the element produces b_rs = diag[r]*diag[s]*a[perm[r],perm[s]].
    """

    perm: tuple
    diag: tuple

    def __post_init__(self):
        n = len(self.perm)
        if len(self.diag) != n:
            raise ValueError("perm and diag must have the same length")
        if sorted(self.perm) != list(range(1, n + 1)):
            raise ValueError("perm must be a bijection of {1..n}")
        if not all(d > 0 for d in self.diag):
            raise ValueError("every diag entry must be strictly positive")
        object.__setattr__(self, "perm", tuple(int(p) for p in self.perm))
        object.__setattr__(self, "diag", tuple(float(d) for d in self.diag))

    @property
    def n(self) -> int:
        return len(self.perm)


def identity_group(n: int) -> GroupElement:
    return GroupElement(tuple(range(1, n + 1)), (1.0,) * n)


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """Element g*h satisfying apply_group(g*h, A) == apply_group(h, apply_group(g, A))."""
    if g.n != h.n:
        raise ValueError("group elements must have matching dimension")
    perm = tuple(g.perm[h.perm[r] - 1] for r in range(g.n))
    diag = tuple(h.diag[r] * g.diag[h.perm[r] - 1] for r in range(g.n))
    return GroupElement(perm, diag)


def inverse_group(g: GroupElement) -> GroupElement:
    """Inverse element: apply_group(inverse_group(g), apply_group(g, A)) == A."""
    n = g.n
    inv_perm = [0] * n
    for r, p in enumerate(g.perm):
        inv_perm[p - 1] = r + 1
    diag = tuple(1.0 / g.diag[inv_perm[r] - 1] for r in range(n))
    return GroupElement(tuple(inv_perm), diag)


def apply_group(g: GroupElement, a: SymMatrix) -> SymMatrix:
    """Congruence action: returns (PD)^T A (PD) for the element g = PD."""
    if g.n != a.n:
        raise ValueError("dimension mismatch between group element and matrix")
    p = np.asarray(g.perm, dtype=int) - 1
    d = np.asarray(g.diag, dtype=float)
    b = np.outer(d, d) * a.array[np.ix_(p, p)]
    return SymMatrix(b)


def delete_row_col(a: SymMatrix, i: int) -> SymMatrix:
    """Principal submatrix with 1-based row and column i removed."""
    if a.n < 2:
        raise ValueError("cannot delete from a 1x1 matrix")
    if not 1 <= i <= a.n:
        raise IndexError(f"row index {i} out of range 1..{a.n}")
    k = i - 1
    sub = np.delete(np.delete(a.array, k, axis=0), k, axis=1)
    return SymMatrix(sub)


def schur_complement(a: SymMatrix, i: int, tol: Tolerances = DEFAULT_TOL) -> SymMatrix:
    """Schur complement with respect to the 1-based diagonal pivot a_ii.

    Returns the (n-1)x(n-1) matrix A(i) - v v^T / a_ii where v is row i of A
    with entry i removed; surviving indices keep their relative order.
    """
    if a.n < 2:
        raise ValueError("Schur complement needs n >= 2")
    if not 1 <= i <= a.n:
        raise IndexError(f"pivot index {i} out of range 1..{a.n}")
    k = i - 1
    pivot = a.array[k, k]
    if abs(pivot) <= tol.eps_ord:
        raise ZeroPivotError(f"pivot a[{i},{i}] = {pivot:.3e} is within eps_ord of zero")
    v = np.delete(a.array[k], k)
    sub = np.delete(np.delete(a.array, k, axis=0), k, axis=1)
    s = sub - np.outer(v, v) / pivot
    return SymMatrix((s + s.T) / 2.0)


def frob(a) -> float:
    """Frobenius norm of a SymMatrix or ndarray."""
    arr = a.array if isinstance(a, SymMatrix) else np.asarray(a)
    return float(np.linalg.norm(arr))


def sym_eigen(a: SymMatrix, tol: Tolerances = DEFAULT_TOL):
    """Full symmetric eigendecomposition A = V diag(w) V^T.

    Returns (eigenvalues ascending, orthonormal eigenvector matrix).  Backed
    by LAPACK's symmetric solver; a convergence failure surfaces as
    NoConvergenceError.
    """
    return _eigh(a.array)


def _eigh(arr: np.ndarray):
    try:
        w, v = np.linalg.eigh(arr)
    except np.linalg.LinAlgError as exc:
        raise NoConvergenceError(f"symmetric eigensolver failed: {exc}") from exc
    return w, v


def project_psd(a: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> SymMatrix:
    """Frobenius-nearest positive semidefinite matrix (negative eigenvalues
    clamped to zero)."""
    return SymMatrix(_project_psd_arr(a.array))


def _project_psd_arr(arr: np.ndarray) -> np.ndarray:
    w, v = _eigh(arr)
    if w[0] >= 0.0:
        return arr.copy()
    w = np.maximum(w, 0.0)
    b = (v * w) @ v.T
    return (b + b.T) / 2.0
