"""Membership in the orbit of the ordered class under permutations and
positive diagonal rescalings, plus the extreme-ray generator constructors.

A diagonal rescaling D A D lands in the ordered class exactly when the
linear system  d_k a_ik - d_j a_ij >= 0 (all rows i, column pairs j < k,
i distinct from both) with d >= 1 is feasible; a permutation works exactly
when the comparison digraph on the columns is acyclic.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DimensionTooLargeError, InvalidParamsError
from .matcore import DEFAULT_TOL, GroupElement, SymMatrix, Tolerances
from .simplex import LpProblem, solve_feasibility

__all__ = [
    "OrbitResult",
    "rescale_into_Mn",
    "permute_into_Mn",
    "joint_orbit_search",
    "kn_generator",
]

_JOINT_DIM_CAP = 8


@dataclass(frozen=True)
class OrbitResult:
    """Outcome of an orbit search; when found, applying the witness to the
    input passes is_Mn."""

    found: bool
    witness: GroupElement | None
    method: str  # "RescaleOnly" | "PermuteOnly" | "Joint"


def _rescale_lp(arr: np.ndarray) -> LpProblem:
    n = arr.shape[0]
    rows = []
    rhs = []
    for i in range(n):
        for j in range(n):
            if j == i:
                continue
            for k in range(j + 1, n):
                if k == i:
                    continue
                if arr[i, j] == 0.0 and arr[i, k] == 0.0:
                    continue
                coeffs = np.zeros(n)
                coeffs[k] += arr[i, k]
                coeffs[j] -= arr[i, j]
                rows.append(coeffs)
                rhs.append(0.0)
    eye = np.eye(n)
    for i in range(n):
        rows.append(eye[i])
        rhs.append(1.0)
    return LpProblem(n, np.asarray(rows), np.asarray(rhs))


def _rescale_arr(arr: np.ndarray):
    """Feasible diagonal d (>= 1) with diag(d) A diag(d) ordered, or None."""
    sol = solve_feasibility(_rescale_lp(arr))
    if sol is None:
        return None
    return np.maximum(sol, 1e-12)


def rescale_into_Mn(a: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> OrbitResult:
    """Search for a positive diagonal D with D A D in the ordered class.

    The scaling inequalities form an LP feasibility system solved by the
    dense two-phase simplex; the tolerance knobs play no role because the
    system is stated with weak inequalities.
    """
    d = _rescale_arr(a.array)
    if d is None:
        return OrbitResult(False, None, "RescaleOnly")
    witness = GroupElement(tuple(range(1, a.n + 1)), tuple(d))
    return OrbitResult(True, witness, "RescaleOnly")


def _comparison_digraph(arr: np.ndarray, eps: float) -> list:
    """Arcs j -> k whenever some row i (distinct from both) has
    a_ij < a_ik - eps, forcing column j before column k."""
    n = arr.shape[0]
    adj = [set() for _ in range(n)]
    for j in range(n):
        for k in range(n):
            if j == k:
                continue
            less = arr[:, j] < arr[:, k] - eps
            less[j] = False
            less[k] = False
            if bool(less.any()):
                adj[j].add(k)
    return adj


def _toposort(adj: list):
    """Deterministic topological order (smallest vertex first), or None."""
    n = len(adj)
    indeg = [0] * n
    for j in range(n):
        for k in adj[j]:
            indeg[k] += 1
    heap = [v for v in range(n) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for k in adj[v]:
            indeg[k] -= 1
            if indeg[k] == 0:
                heapq.heappush(heap, k)
    return order if len(order) == n else None


def permute_into_Mn(a: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> OrbitResult:
    """Search for a permutation P with P^T A P in the ordered class.

    Builds the O(n^3) comparison digraph and returns any topological order;
    a cycle proves no permutation works.
    """
    adj = _comparison_digraph(a.array, tol.eps_ord)
    order = _toposort(adj)
    if order is None:
        return OrbitResult(False, None, "PermuteOnly")
    perm = tuple(v + 1 for v in order)
    witness = GroupElement(perm, (1.0,) * a.n)
    return OrbitResult(True, witness, "PermuteOnly")


def joint_orbit_search(a: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> OrbitResult:
    """Exhaustive search over permutations, each followed by the rescale LP.

    Complete for n <= 8 (DimensionTooLargeError above).  Permutations whose
    first-placed row is not all-nonpositive and whose last-placed row is not
    all-nonnegative are pruned: every ordered matrix has one of those rows,
    and diagonal scaling preserves signs.  Any witness is acceptable;
    determinism of the winning permutation is not promised.
    """
    n = a.n
    if n > _JOINT_DIM_CAP:
        raise DimensionTooLargeError(
            f"joint search enumerates permutations and is capped at n = "
            f"{_JOINT_DIM_CAP}, got n = {n}"
        )
    arr = a.array
    eps = tol.eps_ord
    row_nonneg = []
    row_nonpos = []
    for i in range(n):
        row = np.delete(arr[i], i)
        row_nonneg.append(row.size == 0 or row.min() >= -eps)
        row_nonpos.append(row.size == 0 or row.max() <= eps)
    for sigma in itertools.permutations(range(n)):
        if not (row_nonpos[sigma[0]] or row_nonneg[sigma[-1]]):
            continue
        sel = np.asarray(sigma)
        d = _rescale_arr(arr[np.ix_(sel, sel)])
        if d is None:
            continue
        witness = GroupElement(tuple(v + 1 for v in sigma), tuple(d))
        return OrbitResult(True, witness, "Joint")
    return OrbitResult(False, None, "Joint")


def kn_generator(kind: str, *, n: int | None = None, i: int | None = None,
                 j: int | None = None, v=None) -> SymMatrix:
    """Extreme-ray generators whose orbit reaches the ordered class.

    kind = "unit_pair":           E_ij (ones at positions (i, j), (j, i))
    kind = "rank_one_signed":     v v^T for v with no zero entries where v or
                                  -v has at most one negative entry
    kind = "rank_one_plus_minus": v v^T for v = e_i - e_j

    Positions are 1-based.  InvalidParamsError on anything else.
    """
    if kind == "unit_pair":
        if n is None or i is None or j is None:
            raise InvalidParamsError("unit_pair needs n, i, j")
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise InvalidParamsError(f"unit_pair positions must be distinct in 1..{n}")
        out = np.zeros((n, n))
        out[i - 1, j - 1] = 1.0
        out[j - 1, i - 1] = 1.0
        return SymMatrix(out)
    if kind == "rank_one_signed":
        if v is None:
            raise InvalidParamsError("rank_one_signed needs v")
        vec = np.asarray(v, dtype=float)
        if vec.ndim != 1 or vec.size == 0:
            raise InvalidParamsError("v must be a nonempty vector")
        if np.any(vec == 0.0):
            raise InvalidParamsError("v must have no zero entries")
        negatives = int(np.count_nonzero(vec < 0))
        positives = int(np.count_nonzero(vec > 0))
        if min(negatives, positives) > 1:
            raise InvalidParamsError(
                "neither v nor -v has at most one negative entry"
            )
        return SymMatrix(np.outer(vec, vec))
    if kind == "rank_one_plus_minus":
        if n is None or i is None or j is None:
            raise InvalidParamsError("rank_one_plus_minus needs n, i, j")
        if not (1 <= i <= n and 1 <= j <= n) or i == j:
            raise InvalidParamsError(
                f"rank_one_plus_minus positions must be distinct in 1..{n}"
            )
        vec = np.zeros(n)
        vec[i - 1] = 1.0
        vec[j - 1] = -1.0
        return SymMatrix(np.outer(vec, vec))
    raise InvalidParamsError(f"unknown generator kind {kind!r}")
