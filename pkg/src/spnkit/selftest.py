"""Randomized property suites behind the CLI ``selftest`` command.

Each suite draws seeded instances and counts violations of a property that
is supposed to hold identically; the expected failure count is zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import samplers
from .classes import idx, is_Mn, is_Rn
from .cones import copositive_oracle
from .matcore import DEFAULT_TOL, SymMatrix, Tolerances, apply_group, schur_complement
from .signgraph import orbit_necessary_filter
from .stqp import raw_instance, z_dnn_primal, z_spn_bracket, z_star_oracle

__all__ = ["SuiteResult", "SUITES", "run_suite", "run_all"]


@dataclass(frozen=True)
class SuiteResult:
    name: str
    cases: int
    failures: int
    notes: tuple = ()

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _suite_mn_shift_invariance(rng, cases, tol):
    """Adding a constant to every entry never changes the ordered-class verdict."""
    failures = 0
    notes = []
    for case in range(cases):
        n = int(rng.integers(2, 9))
        if rng.uniform() < 0.5:
            a = samplers.random_mn_member(rng, n)
        else:
            a = samplers.random_symmetric(rng, n)
        lam = float(rng.uniform(-3.0, 3.0))
        shifted = SymMatrix(a.array + lam * np.ones((n, n)))
        if is_Mn(a, tol) != is_Mn(shifted, tol):
            failures += 1
            notes.append(f"case {case}: verdict changed under shift {lam:.3f}")
    return failures, notes


def _suite_schur_closure(rng, cases, tol):
    """Pivoting the first row of an ordered (relaxed-ordered) matrix with a
    strictly negative first row stays in the class; the positive index drops
    by at most one."""
    failures = 0
    notes = []
    for case in range(cases):
        n = int(rng.integers(3, 9))
        if case % 2 == 0:
            a = samplers.random_mn_member(rng, n, neg_first_row=True)
            s = schur_complement(a, 1, tol)
            if not is_Mn(s, tol):
                failures += 1
                notes.append(f"case {case}: ordered class not closed under pivot")
        else:
            a = samplers.random_rn_member(rng, n, neg_first_row=True)
            s = schur_complement(a, 1, tol)
            if not is_Rn(s, tol):
                failures += 1
                notes.append(f"case {case}: relaxed class not closed under pivot")
            elif idx(s, tol) < idx(a, tol) - 1:
                failures += 1
                notes.append(f"case {case}: positive index dropped by more than one")
    return failures, notes


def _suite_copositivity_equivariance(rng, cases, tol):
    """The copositivity verdict is invariant under permutation and positive
    diagonal scaling."""
    failures = 0
    notes = []
    for case in range(cases):
        n = int(rng.integers(2, 6))
        a = samplers.random_symmetric(rng, n)
        g = samplers.random_group_element(rng, n)
        va = copositive_oracle(a, tol).copositive
        vb = copositive_oracle(apply_group(g, a), tol).copositive
        if va != vb:
            failures += 1
            notes.append(f"case {case}: verdict not invariant")
    return failures, notes


def _suite_duality_chain(rng, cases, tol):
    """Value chain on random instances: the shift relaxation is at most the
    doubly-nonnegative value (2 eps_opt slack) which is at most the exact
    value (eps_opt slack)."""
    failures = 0
    notes = []
    for case in range(cases):
        n = int(rng.integers(2, 6))
        inst = raw_instance(samplers.random_symmetric(rng, n))
        bracket = z_spn_bracket(inst, tol)
        z_spn = bracket.value
        z_dnn = z_dnn_primal(inst, tol)
        z_star, _ = z_star_oracle(inst, tol)
        if z_spn > z_dnn + 2.0 * tol.eps_opt:
            failures += 1
            notes.append(
                f"case {case}: z_spn {z_spn:.9f} > z_dnn {z_dnn:.9f} + 2 eps"
            )
        elif z_dnn > z_star + tol.eps_opt:
            failures += 1
            notes.append(f"case {case}: z_dnn {z_dnn:.9f} > z* {z_star:.9f} + eps")
    return failures, notes


def _suite_threshold_soundness(rng, cases, tol):
    """Every matrix built as group-action image of an ordered member passes
    the threshold necessary filter."""
    failures = 0
    notes = []
    for case in range(cases):
        n = int(rng.integers(2, 9))
        m = samplers.random_mn_member(rng, n)
        g = samplers.random_group_element(rng, n)
        a = apply_group(g, m)
        if not orbit_necessary_filter(a, tol):
            failures += 1
            notes.append(f"case {case}: filter rejected an orbit member")
    return failures, notes


def _suite_mmatrix_inverse(rng, cases, tol):
    """Inverses of diagonally dominant matrices with nonpositive
    off-diagonal entries are entrywise nonnegative."""
    failures = 0
    notes = []
    for case in range(cases):
        n = int(rng.integers(2, 9))
        a = samplers.random_zmatrix_diag_dominant(rng, n)
        inv = np.linalg.inv(a.array)
        if inv.min() < -1e-8:
            failures += 1
            notes.append(f"case {case}: inverse entry {inv.min():.3e}")
    return failures, notes


SUITES = {
    "mn_shift_invariance": _suite_mn_shift_invariance,
    "schur_closure": _suite_schur_closure,
    "copositivity_equivariance": _suite_copositivity_equivariance,
    "duality_chain": _suite_duality_chain,
    "threshold_soundness": _suite_threshold_soundness,
    "mmatrix_inverse": _suite_mmatrix_inverse,
}


def run_suite(name: str, seed: int = 0, cases: int = 1000,
              tol: Tolerances = DEFAULT_TOL) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    rng = np.random.default_rng(seed)
    failures, notes = SUITES[name](rng, cases, tol)
    return SuiteResult(name, cases, failures, tuple(notes[:10]))


def run_all(seed: int = 0, cases: int = 1000,
            tol: Tolerances = DEFAULT_TOL) -> list:
    return [run_suite(name, seed, cases, tol) for name in SUITES]
