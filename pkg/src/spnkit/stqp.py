"""Standard quadratic programs over the simplex: the exact value, the
PSD-plus-nonnegative shift relaxation, the doubly-nonnegative primal
relaxation, and tightness certification.

Value chain (always, up to tolerances): the shift relaxation equals the
doubly-nonnegative value and both lower-bound the exact simplex minimum.

The shift relaxation max{lam : Q - lam*E splittable} is solved by bisection.
Each probe runs the membership pipeline with warm starts; every dual witness
X found along the way certifies infeasibility of all lam above
(<Q,X> + slack)/<E,X>, which collapses the upper end of the bracket without
further probes, leaving a single near-boundary feasibility solve per call.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classes import is_block_sign, is_Mn, is_Qmin, is_Qplus
from .cones import (
    SpnCertificate,
    TraceStep,
    _dnn_minimize,
    _ProbeState,
    _simplex_quadratic_min,
    _spn_probe,
)
from .errors import DimensionTooLargeError
from .matcore import (
    DEFAULT_TOL,
    GroupElement,
    SymMatrix,
    Tolerances,
    apply_group,
    inverse_group,
    sym_eigen,
)
from .orbit import permute_into_Mn

__all__ = [
    "Raw",
    "Separable",
    "Affine",
    "StqpInstance",
    "StqpReport",
    "SpnBracket",
    "raw_instance",
    "build_separable",
    "build_affine",
    "z_star_oracle",
    "z_spn_bracket",
    "z_spn_bisection",
    "z_dnn_primal",
    "certify_tightness",
    "sphere_relaxation",
]

_EXACT_DIM_CAP = 20
_PROVENANCE_TOL = 1e-9


@dataclass(frozen=True)
class Raw:
    pass


@dataclass(frozen=True)
class Separable:
    alpha: tuple
    beta: tuple


@dataclass(frozen=True)
class Affine:
    qtilde: SymMatrix
    alpha: tuple


@dataclass(frozen=True)
class StqpInstance:
    """Objective matrix with its construction provenance.

    Separable provenance requires q_ij = alpha_i + alpha_j off the diagonal
    and q_ii = beta_i + 2 alpha_i; affine provenance requires
    Q = Qtilde + alpha e^T + e alpha^T.  Both are checked at construction.
    """

    q: SymMatrix
    provenance: object = Raw()

    def __post_init__(self):
        n = self.q.n
        arr = self.q.array
        if isinstance(self.provenance, Separable):
            alpha = np.asarray(self.provenance.alpha, dtype=float)
            beta = np.asarray(self.provenance.beta, dtype=float)
            if alpha.size != n or beta.size != n:
                raise ValueError("alpha and beta must have length n")
            expect = alpha[:, None] + alpha[None, :]
            np.fill_diagonal(expect, beta + 2.0 * alpha)
            if np.abs(arr - expect).max() > _PROVENANCE_TOL:
                raise ValueError("matrix does not match its separable provenance")
        elif isinstance(self.provenance, Affine):
            alpha = np.asarray(self.provenance.alpha, dtype=float)
            if alpha.size != n or self.provenance.qtilde.n != n:
                raise ValueError("affine provenance dimensions do not match")
            expect = self.provenance.qtilde.array + alpha[:, None] + alpha[None, :]
            if np.abs(arr - expect).max() > _PROVENANCE_TOL:
                raise ValueError("matrix does not match its affine provenance")

    @property
    def n(self) -> int:
        return self.q.n


def raw_instance(q: SymMatrix) -> StqpInstance:
    return StqpInstance(q, Raw())


def build_separable(alpha, beta) -> StqpInstance:
    """Matrix form of the separable objective sum(2 a_i x_i + b_i x_i^2):
    off-diagonal entries alpha_i + alpha_j, diagonal beta_i + 2 alpha_i."""
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    if alpha.shape != beta.shape or alpha.ndim != 1 or alpha.size == 0:
        raise ValueError("alpha and beta must be equal-length nonempty vectors")
    q = alpha[:, None] + alpha[None, :]
    np.fill_diagonal(q, beta + 2.0 * alpha)
    return StqpInstance(SymMatrix(q), Separable(tuple(alpha), tuple(beta)))


def build_affine(qtilde: SymMatrix, alpha) -> StqpInstance:
    """Matrix form of x^T Qtilde x + 2 alpha^T x over the simplex:
    Q = Qtilde + alpha e^T + e alpha^T."""
    alpha = np.asarray(alpha, dtype=float)
    if alpha.size != qtilde.n:
        raise ValueError("alpha must have length n")
    q = qtilde.array + alpha[:, None] + alpha[None, :]
    return StqpInstance(SymMatrix(q), Affine(qtilde, tuple(alpha)))


def z_star_oracle(inst: StqpInstance, tol: Tolerances = DEFAULT_TOL):
    """Exact simplex minimum (value, minimizer) by support enumeration."""
    if inst.n > _EXACT_DIM_CAP:
        raise DimensionTooLargeError(
            f"exact simplex minimization is capped at n = {_EXACT_DIM_CAP}"
        )
    val, x, _ = _simplex_quadratic_min(inst.q.array, tol.eps_feas)
    x = x.copy()
    x.setflags(write=False)
    return val, x


@dataclass(frozen=True)
class SpnBracket:
    """Bisection outcome: the value lives in [lo, hi]; lo is backed by a
    splitting certificate.  ``undecided`` marks a bracket wider than eps_opt
    whose probes could not be decided either way."""

    lo: float
    hi: float
    undecided: bool
    certificate: SpnCertificate | None

    @property
    def value(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def interval(self):
        return (self.lo, self.hi)


def _max_shift(qarr: np.ndarray, dir_arr: np.ndarray, lo: float, hi: float,
               tol: Tolerances, max_probes: int = 200):
    """max{lam : Q - lam*Dir splittable} bracketed in [lo, hi]; lo must be
    feasible a priori and hi a proven upper bound."""
    eps_opt = tol.eps_opt
    state = _ProbeState()
    cert_lo = None
    hi_backed = False

    def probe(lam):
        nonlocal cert_lo, hi_backed, lo, hi
        kind, payload = _spn_probe(
            qarr - lam * dir_arr, tol, state, try_class_path=True
        )
        if kind == "certificate":
            lo = lam
            cert_lo = payload
        elif kind == "witness":
            hi = lam
        return kind

    probes = 0
    while hi - lo > eps_opt and probes < max_probes:
        if state.xhat is not None:
            # every lam above (<Q,X> + slack)/<Dir,X> is instantly witnessed
            dir_weight = float(np.tensordot(dir_arr, state.xhat))
            if dir_weight > 0:
                cap = (float(np.tensordot(qarr, state.xhat)) + 2.0 * tol.eps_feas) / dir_weight
                if lo < cap < hi:
                    hi = cap
                    hi_backed = True
                elif cap <= lo:
                    hi = min(hi, lo + 0.5 * eps_opt)
                    hi_backed = True
        if hi - lo <= eps_opt:
            break
        if hi_backed:
            # the upper end sits at the boundary; one probe just below it
            decided = False
            for mult in (0.9, 1.8, 3.6):
                lam = hi - mult * eps_opt
                if lam <= lo:
                    decided = True
                    break
                probes += 1
                if probe(lam) != "undecided":
                    decided = True
                    break
            if not decided:
                return SpnBracket(lo, hi, True, cert_lo)
            continue
        mid = 0.5 * (lo + hi)
        probes += 1
        if probe(mid) == "undecided":
            for frac in (0.25, 0.75, 0.125, 0.875):
                lam = lo + frac * (hi - lo)
                probes += 1
                if probe(lam) != "undecided":
                    break
            else:
                return SpnBracket(lo, hi, True, cert_lo)
    if cert_lo is None:
        probes += 1
        probe(lo)
    return SpnBracket(lo, hi, hi - lo > eps_opt, cert_lo)


def _conjugate_certificate(cert: SpnCertificate, g: GroupElement) -> SpnCertificate:
    """Transport a certificate of apply_group(g, A) back to A."""
    ginv = inverse_group(g)
    return SpnCertificate(
        psd_part=apply_group(ginv, cert.psd_part),
        nonneg_part=apply_group(ginv, cert.nonneg_part),
        residual=cert.residual,
        trace=tuple(
            TraceStep(s.kind, g.perm[s.value - 1]) if s.kind != "BaseCase" else s
            for s in cert.trace
        ),
    )


def z_spn_bracket(inst: StqpInstance, tol: Tolerances = DEFAULT_TOL) -> SpnBracket:
    """Bracketed value of max{lam : Q - lam*E splittable}.

    Bracket ends: at the global minimum entry the shifted matrix is
    entrywise nonnegative (feasible); above the minimum diagonal entry the
    shifted matrix has a negative diagonal (infeasible).  When a permutation
    maps Q into the ordered class the bisection runs on the permuted matrix
    (the value is permutation-invariant) so probes take the constructive
    fast path; certificates are conjugated back.
    """
    qarr = inst.q.array
    n = inst.n
    lo = float(qarr.min())
    hi = float(np.diag(qarr).min())
    if hi - lo <= tol.eps_opt:
        kind, payload = _spn_probe(qarr - lo * np.ones((n, n)), tol)
        cert = payload if kind == "certificate" else None
        return SpnBracket(lo, hi, False, cert)
    perm_result = permute_into_Mn(inst.q, tol)
    g = perm_result.witness if perm_result.found else None
    work = apply_group(g, inst.q).array if g is not None else qarr
    bracket = _max_shift(work, np.ones((n, n)), lo, hi, tol)
    if g is not None and bracket.certificate is not None:
        bracket = SpnBracket(
            bracket.lo,
            bracket.hi,
            bracket.undecided,
            _conjugate_certificate(bracket.certificate, g),
        )
    return bracket


def z_spn_bisection(inst: StqpInstance, tol: Tolerances = DEFAULT_TOL) -> float:
    """Midpoint of the z_spn bracket (interval width <= eps_opt unless the
    bracket reports undecided)."""
    return z_spn_bracket(inst, tol).value


def z_dnn_primal(inst: StqpInstance, tol: Tolerances = DEFAULT_TOL) -> float:
    """Doubly-nonnegative relaxation value min{<Q,X> : X psd, X >= 0,
    sum(X) = 1}, solved on the primal side by averaged projections.

    The returned value is evaluated at a polished feasible point, hence a
    true upper bound on the relaxation value.
    """
    val, _, _, _ = _dnn_minimize(inst.q.array, cap=tol.max_iter)
    return val


def sphere_relaxation(q: SymMatrix, tol: Tolerances = DEFAULT_TOL) -> float:
    """max{lam : Q - lam*I splittable}: the identity-shift analogue used for
    minimization over the nonnegative unit sphere.

    Bracket: at lam_min(Q) the shift is positive semidefinite (feasible);
    any feasible shift needs a nonnegative diagonal, so the minimum diagonal
    entry bounds the value above.
    """
    w, _ = sym_eigen(q, tol)
    lo = float(w[0])
    hi = float(np.diag(q.array).min())
    if hi - lo <= tol.eps_opt:
        return 0.5 * (lo + hi)
    bracket = _max_shift(q.array, np.eye(q.n), lo, hi, tol)
    return bracket.value


@dataclass(frozen=True)
class StqpReport:
    """Full relaxation diagnostics for one instance.

    For n above the exact-oracle cap, z_star/minimizer/gap/tight are None.
    ``certificates`` lists the structural reasons the relaxation is known to
    be exact: "Mn" (ordered, possibly after a permutation), "Separable"
    (provenance), "QMin", "QPlus", "BlockSignShifted".
    """

    z_star: float | None
    minimizer: np.ndarray | None
    z_spn: float
    z_spn_interval: tuple
    z_spn_undecided: bool
    z_dnn: float
    gap: float | None
    tight: bool | None
    certificates: tuple
    spn_certificate: SpnCertificate | None


def certify_tightness(inst: StqpInstance, tol: Tolerances = DEFAULT_TOL) -> StqpReport:
    """Compute all values and attach every exactness certificate that
    applies.  Certificates are recorded independently of the numeric gap, so
    a certificate paired with a large gap flags an internal inconsistency."""
    bracket = z_spn_bracket(inst, tol)
    z_spn = bracket.value
    z_dnn = z_dnn_primal(inst, tol)
    if inst.n <= _EXACT_DIM_CAP:
        z_star, minimizer = z_star_oracle(inst, tol)
        gap = z_star - z_spn
        tight = bool(gap <= tol.eps_opt)
    else:
        z_star, minimizer, gap, tight = None, None, None, None

    certificates = []
    q = inst.q
    if is_Mn(q, tol) or permute_into_Mn(q, tol).found:
        certificates.append("Mn")
    if isinstance(inst.provenance, Separable):
        certificates.append("Separable")
    if is_Qmin(q, tol):
        certificates.append("QMin")
    if is_Qplus(q, tol):
        certificates.append("QPlus")
    shifted = SymMatrix(q.array - z_spn * np.ones((inst.n, inst.n)))
    if any(is_block_sign(shifted, k, tol) for k in range(1, inst.n)):
        certificates.append("BlockSignShifted")

    return StqpReport(
        z_star=z_star,
        minimizer=minimizer,
        z_spn=z_spn,
        z_spn_interval=bracket.interval,
        z_spn_undecided=bracket.undecided,
        z_dnn=z_dnn,
        gap=gap,
        tight=tight,
        certificates=tuple(certificates),
        spn_certificate=bracket.certificate,
    )
