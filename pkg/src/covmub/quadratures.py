"""Quadrature systems: rank-one projections attached to the affine lines of
the phase space, covariant under translations.

A system built from an irreducible Weyl system W centered at an origin o is

    Q(o + v + D) = (1/q) * sum_{d in D} b_S(v, d) W(d),

and conversely the Weyl operators are recovered from the projections by
summing over the lines of a fixed direction with bicharacter weights.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    MultipleFoundError,
    NotCovariantError,
    NotIrreducibleError,
)
from .multipliers import intertwiner, phase_order
from .phase_space import (
    AffineLine,
    LinearMap2,
    PhaseVector,
    SymplecticForm,
    affine_action,
    all_vectors,
    directions,
    lines,
)
from .weyl import WeylSystem, is_irreducible, multiplier_of, svn_intertwiner


def origin(spec):
    return PhaseVector(spec.zero, spec.zero)


def _bphase(S, u, v):
    return np.exp(2j * np.pi * S.bichar_exponent(u, v) / S.field.p)


@dataclass(frozen=True)
class QuadratureSystem:
    spec: object
    proj: dict  # AffineLine -> (q, q) ndarray
    origin: PhaseVector
    provenance: dict = field(default_factory=dict, compare=False)

    @property
    def lines(self):
        return lines(self.spec)

    def projection(self, line):
        return self.proj[line]


def quadratures_from_weyl(W, o=None):
    """The covariant quadrature system of an irreducible Weyl system,
    centered at origin o (default (0, 0))."""
    spec = W.spec
    if not is_irreducible(W.ops):
        raise NotIrreducibleError("Weyl system must be irreducible")
    if o is None:
        o = origin(spec)
    q = spec.q
    S = W.form
    proj = {}
    for l in lines(spec):
        v = l.base - o
        P = np.zeros((q, q), dtype=complex)
        for d in l.direction.points():
            P += _bphase(S, v, d) * W.op(d)
        proj[l] = P / q
    return QuadratureSystem(spec, proj, o, {"origin": o})


@dataclass(frozen=True)
class AxiomReport:
    rank_one_ok: bool
    resolutions_ok: bool
    unbiased_ok: bool
    span_ok: bool
    max_projection_residual: float
    max_resolution_residual: float
    max_unbiased_residual: float

    @property
    def all_ok(self):
        return self.rank_one_ok and self.resolutions_ok and self.unbiased_ok and self.span_ok


def verify_quadrature_axioms(Q, tol=1e-9):
    """Check the defining axioms of a maximal covariant quadrature system:
    every projection is a rank-one orthogonal projection, each direction's
    lines resolve the identity, projections from different directions are
    mutually unbiased, and the q(q+1) projections span the matrix space."""
    spec = Q.spec
    q = spec.q
    eye = np.eye(q)
    proj_res = 0.0
    for P in Q.proj.values():
        proj_res = max(
            proj_res,
            np.linalg.norm(P @ P - P),
            np.linalg.norm(P - P.conj().T),
            abs(np.trace(P) - 1.0),
        )
    res_res = 0.0
    by_dir = {}
    for l in Q.lines:
        by_dir.setdefault(l.direction, []).append(l)
    for ls in by_dir.values():
        total = sum(Q.proj[l] for l in ls)
        res_res = max(res_res, np.linalg.norm(total - eye))
    unb_res = 0.0
    dirs = list(by_dir)
    for i, d1 in enumerate(dirs):
        for d2 in dirs[i + 1:]:
            for l1 in by_dir[d1]:
                for l2 in by_dir[d2]:
                    t = np.trace(Q.proj[l1] @ Q.proj[l2])
                    unb_res = max(unb_res, abs(t - 1.0 / q))
    flat = np.array([Q.proj[l].ravel() for l in Q.lines])
    span_ok = np.linalg.matrix_rank(flat, tol=1e-8) == q * q
    return AxiomReport(
        proj_res <= tol,
        res_res <= tol,
        unb_res <= tol,
        span_ok,
        proj_res,
        res_res,
        unb_res,
    )


def translation_covariance_check(Q, W, tol=1e-9):
    """True when Q(l + v) = W(v) Q(l) W(v)* for all lines and vectors."""
    for l in Q.lines:
        P = Q.proj[l]
        for v in all_vectors(Q.spec):
            lv = l.translate(v)
            Wv = W.op(v)
            if np.linalg.norm(Q.proj[lv] - Wv @ P @ Wv.conj().T) > tol:
                return False
    return True


def _extract_weyl_ops(Q, o, S):
    """Inverse formula: W(u) = sum over the lines of direction Fu of
    b_S(u, v) Q(o + v + Fu), v the base point relative to o."""
    spec = Q.spec
    q = spec.q
    ops = np.zeros((q * q, q, q), dtype=complex)
    ops[0] = np.eye(q)
    for d in directions(spec):
        line_list = [l for l in Q.lines if l.direction == d]
        for u in d.points():
            if u.is_zero:
                continue
            M = np.zeros((q, q), dtype=complex)
            for l in line_list:
                v = l.base - o
                M += _bphase(S, u, v) * Q.proj[l]
            ops[u.index] = M
    return ops


def centered_weyl_from_quadratures(Q, o, S, tol=1e-9):
    """The Weyl system centered at o acting behind a covariant quadrature
    system, with its measured multiplier.  Raises NotCovariantError when the
    extracted family fails unitarity or covariance."""
    spec = Q.spec
    q = spec.q
    ops = _extract_weyl_ops(Q, o, S)
    eye = np.eye(q)
    for n in range(q * q):
        if np.linalg.norm(ops[n] @ ops[n].conj().T - eye) > tol:
            raise NotCovariantError("extracted operators are not unitary")
    W = WeylSystem(spec, S, None, ops)
    if not translation_covariance_check(Q, W, tol=tol):
        raise NotCovariantError("extracted operators do not translate Q")
    m = multiplier_of(ops, spec)
    return WeylSystem(spec, S, m, ops)


def induced_symplectic_form(Q, tol=1e-9):
    """The unique form S for which Q is translation covariant.

    Tries every nonzero scale; NotCovariantError when none works and
    MultipleFoundError (an internal inconsistency) when several do."""
    spec = Q.spec
    o = Q.origin
    found = []
    for lam in spec.nonzero_elements():
        S = SymplecticForm(lam)
        try:
            centered_weyl_from_quadratures(Q, o, S, tol=tol)
        except NotCovariantError:
            continue
        found.append(S)
    if not found:
        raise NotCovariantError("no symplectic form makes Q covariant")
    if len(found) > 1:
        raise MultipleFoundError("several forms match; inconsistent system")
    return found[0]


def associated_multiplier(Q, S=None, tol=1e-9):
    """The multiplier of the Weyl system behind Q; independent of the
    centering point, which is checked on a second origin."""
    spec = Q.spec
    if S is None:
        S = induced_symplectic_form(Q, tol=tol)
    o1 = Q.origin
    m1 = centered_weyl_from_quadratures(Q, o1, S, tol=tol).multiplier
    o2 = PhaseVector(spec.one, spec.zero) + o1
    m2 = centered_weyl_from_quadratures(Q, o2, S, tol=tol).multiplier
    if m1 != m2:
        raise MultipleFoundError("multiplier depends on the origin")
    return m1


def g_action(Q, g):
    """Pullback of Q along an affine map g = (A, t): the new system's
    projection at l is Q's projection at g . l."""
    proj = {l: Q.proj[affine_action(g, l)] for l in Q.lines}
    return QuadratureSystem(Q.spec, proj, Q.origin, {"pulled_back": True})


def are_equivalent(Q1, Q2, tol=1e-9):
    """(True, U) when some unitary U carries Q1 to Q2 line by line,
    (False, None) otherwise.  Both systems must be covariant."""
    spec = Q1.spec
    S1 = induced_symplectic_form(Q1, tol=tol)
    S2 = induced_symplectic_form(Q2, tol=tol)
    if S1 != S2:
        return False, None
    o = origin(spec)
    W1 = centered_weyl_from_quadratures(Q1, o, S1, tol=tol)
    W2 = centered_weyl_from_quadratures(Q2, o, S2, tol=tol)
    if W1.multiplier != W2.multiplier:
        return False, None
    U = svn_intertwiner(W1, W2)
    for l in Q1.lines:
        if np.linalg.norm(Q2.proj[l] - U @ Q1.proj[l] @ U.conj().T) > tol:
            return False, None
    return True, U


def range_conjugacy_witness(Q1, Q2, tol=1e-9):
    """Witness (A, shifts, U) that Q2 and a relabeled Q1 share the same
    projections: Q2(l) = U Q1(A . l + shifts[D(l)]) U* for every line l,
    with A diagonal carrying the form of Q1 to the form of Q2.

    Always succeeds for covariant systems over the same field: any two
    maximal covariant quadrature systems have unitarily conjugate ranges."""
    spec = Q1.spec
    q = spec.q
    L = phase_order(spec)
    step = L // spec.p
    S1 = induced_symplectic_form(Q1, tol=tol)
    S2 = induced_symplectic_form(Q2, tol=tol)
    mu = S2.lam / S1.lam
    A = LinearMap2(mu, spec.zero, spec.zero, spec.one)
    Q1A = g_action(Q1, (A, origin(spec)))
    o = origin(spec)
    Wa = centered_weyl_from_quadratures(Q1A, o, S2, tol=tol)
    Wb = centered_weyl_from_quadratures(Q2, o, S2, tol=tol)
    a = intertwiner(Wa.multiplier, Wb.multiplier)
    # per direction, express a's restriction as pairing with a shift vector
    shifts = {}
    for d in directions(spec):
        pts = d.points()
        w = None
        for cand in all_vectors(spec):
            if all(
                a.exponent(pt) == step * S2.bichar_exponent(cand, pt) % L
                for pt in pts
            ):
                w = cand
                break
        if w is None:
            raise NotCovariantError("no shift matches the direction character")
        shifts[d] = w
    # relabeled system: Q1'(l) = Q1A(l + w_D); its multiplier is Wb's
    proj = {l: Q1A.proj[l.translate(shifts[l.direction])] for l in Q1A.lines}
    Q1p = QuadratureSystem(spec, proj, o, {"relabeled": True})
    W1p = centered_weyl_from_quadratures(Q1p, o, S2, tol=tol)
    U = svn_intertwiner(W1p, Wb)
    out_shifts = {d: A.apply(shifts[d]) for d in shifts}
    for l in Q1.lines:
        src = affine_action((A, origin(spec)), l).translate(out_shifts[l.direction])
        # A . (l + w_D) = (A . l) + A w_D, matching the relabeled system
        src2 = affine_action((A, origin(spec)), l.translate(shifts[l.direction]))
        assert src == src2
        if np.linalg.norm(Q2.proj[l] - U @ Q1.proj[src] @ U.conj().T) > tol:
            raise NotCovariantError("range conjugacy verification failed")
    return A, out_shifts, U
