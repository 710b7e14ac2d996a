"""Dense two-phase simplex solver for LP feasibility systems.

Solves: find x >= 0 with G x >= h.  Only feasibility is ever needed here, so
there is no phase-2 objective.  Entering columns follow Bland's rule
(smallest index with negative reduced cost), which cannot cycle; reduced
costs are recomputed from the tableau every pivot rather than updated
incrementally, and rows are equilibrated up front, both of which keep the
small dense tableaus here numerically honest.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LpNumericalFailureError

__all__ = ["LpProblem", "solve_feasibility"]

_PIVOT_EPS = 1e-9
_FEAS_SLACK = 1e-9


@dataclass(frozen=True)
class LpProblem:
    """Feasibility system {x >= 0, rows @ x >= rhs}."""

    num_vars: int
    rows: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        rows = np.atleast_2d(np.asarray(self.rows, dtype=float))
        if rows.size == 0:
            rows = rows.reshape(0, self.num_vars)
        rhs = np.asarray(self.rhs, dtype=float).ravel()
        if rows.shape[1] != self.num_vars:
            raise ValueError("row width must equal num_vars")
        if rows.shape[0] != rhs.size:
            raise ValueError("need one rhs entry per row")
        if rows.size and not (np.all(np.isfinite(rows)) and np.all(np.isfinite(rhs))):
            raise ValueError("LP coefficients must be finite")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "rhs", rhs)

    @property
    def num_rows(self) -> int:
        return self.rows.shape[0]


def _phase_one(g, h, cap, stable_ties):
    """Run phase-1 on G x - s = h (inequality G x >= h already normalized so
    every rhs is nonnegative and slack columns form a partial basis).

    Returns (x, artificial_mass) or raises LpNumericalFailureError.
    """
    m, n = g.shape
    flip = h <= 0.0
    g = np.where(flip[:, None], -g, g)
    h = np.where(flip, -h, h)
    surplus_sign = np.where(flip, 1.0, -1.0)

    need_art = ~flip
    n_art = int(np.count_nonzero(need_art))
    total = n + m + n_art

    t = np.zeros((m, total + 1))
    t[:, :n] = g
    t[:, n : n + m] = np.diag(surplus_sign)
    basis = np.empty(m, dtype=int)
    art_col = n + m
    for i in range(m):
        if need_art[i]:
            t[i, art_col] = 1.0
            basis[i] = art_col
            art_col += 1
        else:
            basis[i] = n + i
    t[:, -1] = h

    cost = np.zeros(total)
    cost[n + m :] = 1.0

    for _ in range(cap):
        # exact reduced costs: c - c_B . (basis rows); only artificial basic
        # rows carry cost
        rc = cost.copy()
        art_rows = [i for i in range(m) if basis[i] >= n + m]
        if art_rows:
            rc -= t[art_rows, :-1].sum(axis=0)
        entering = -1
        for j in range(total):
            if rc[j] < -_PIVOT_EPS:
                entering = j
                break
        if entering < 0:
            break
        col = t[:, entering]
        ratios = np.full(m, np.inf)
        pos = col > _PIVOT_EPS
        ratios[pos] = t[pos, -1] / col[pos]
        best = float(ratios.min())
        if not np.isfinite(best):
            raise LpNumericalFailureError(
                "phase-1 pricing found no leaving row (numerical breakdown)"
            )
        window = best + 1e-9 * (1.0 + abs(best))
        leaving = -1
        for i in range(m):
            if ratios[i] > window:
                continue
            if leaving < 0:
                leaving = i
            elif stable_ties:
                if abs(col[i]) > abs(col[leaving]):
                    leaving = i
            elif basis[i] < basis[leaving]:
                leaving = i
        t[leaving] /= t[leaving, entering]
        for i in range(m):
            if i != leaving and t[i, entering] != 0.0:
                t[i] -= t[i, entering] * t[leaving]
                if t[i, -1] < 0.0:
                    t[i, -1] = max(t[i, -1], -1e-11)
        basis[leaving] = entering
    else:
        raise LpNumericalFailureError("simplex exceeded its pivot cap")

    mass = sum(max(t[i, -1], 0.0) for i in range(m) if basis[i] >= n + m)
    x = np.zeros(n)
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = max(t[i, -1], 0.0)
    return x, float(mass)


def solve_feasibility(lp: LpProblem, pivot_cap: int | None = None):
    """Return a feasible x (>= 0, G x >= h - 1e-9) or None when infeasible.

    Raises LpNumericalFailureError when pivoting stalls beyond the cap on
    both the stability-first and the pure-Bland tie-breaking passes.
    """
    m, n = lp.num_rows, lp.num_vars
    if m == 0:
        return np.zeros(n)
    # row equilibration (scale-invariant for feasibility)
    scale = np.maximum(np.abs(lp.rows).max(axis=1), np.abs(lp.rhs))
    scale = np.where(scale > 0, scale, 1.0)
    g = lp.rows / scale[:, None]
    h = lp.rhs / scale

    cap = pivot_cap if pivot_cap is not None else 2000 + 40 * (m + n)
    last_exc = None
    for stable_ties in (True, False):
        try:
            x, mass = _phase_one(g, h, cap, stable_ties)
        except LpNumericalFailureError as exc:
            last_exc = exc
            continue
        if mass > _FEAS_SLACK * max(1.0, float(np.abs(h).max(initial=0.0))):
            return None
        if float(np.min(lp.rows @ x - lp.rhs, initial=0.0)) >= -_FEAS_SLACK * max(
            1.0, float(np.abs(scale).max())
        ):
            return x
        last_exc = LpNumericalFailureError(
            "phase-1 reported feasibility but the recovered point violates "
            "the original rows"
        )
    raise last_exc
