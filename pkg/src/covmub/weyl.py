"""Projective unitary representations of V on l^2(F).

The convention throughout: W(u + v) = m(u, v) W(u) W(v), i.e.
W(u) W(v) = conj(m(u, v)) W(u + v).  Operators are stored as a dense
(q^2, q, q) complex array indexed by vector index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateSeedError,
    InconsistentDimensionError,
    MultiplierMismatchError,
    NotAWeylMultiplierError,
    NotProjectiveError,
)
from .multipliers import (
    MultiplierTable,
    canonical_m0,
    intertwiner,
    is_weyl_multiplier,
    phase_order,
)
from .phase_space import SymplecticForm, all_vectors, vector_tables


@dataclass(frozen=True)
class WeylSystem:
    spec: object
    form: SymplecticForm
    multiplier: MultiplierTable
    ops: np.ndarray  # (q^2, q, q)

    def op(self, v):
        return self.ops[v.index]

    @property
    def dim(self):
        return self.ops.shape[1]


def clock_shift_system(spec, S):
    """The coordinate system W0(u) = X(u1) Z(lam * u2) on l^2(F): X is the
    shift [X(a) f](x) = f(x + a) and Z(b) the modulation by exp(2 pi i
    Tr(b x) / p).  Its multiplier is exactly canonical_m0(spec, S)."""
    q = spec.q
    p = spec.p
    shift = np.zeros((q, q, q), dtype=complex)
    for a in range(q):
        for x in range(q):
            shift[a, x, int(spec.add_table[x, a])] = 1.0
    mod = np.zeros((q, q, q), dtype=complex)
    for b in range(q):
        for x in range(q):
            t = spec.trace_table[int(spec.mul_table[b, x])]
            mod[b, x, x] = np.exp(2j * np.pi * t / p)
    lam = S.lam
    ops = np.zeros((q * q, q, q), dtype=complex)
    for u in all_vectors(spec):
        b = int(spec.mul_table[lam.index, u.x2.index])
        ops[u.index] = shift[u.x1.index] @ mod[b]
    return WeylSystem(spec, S, canonical_m0(spec, S), ops)


def recover_form(m):
    """The symplectic form whose bicharacter is the antisymmetrization of m,
    or NotAWeylMultiplierError if no scale matches."""
    spec = m.spec
    step = m.L // spec.p
    got = (m.table.T - m.table) % m.L
    matches = []
    for lam in spec.nonzero_elements():
        S = SymplecticForm(lam)
        if np.array_equal(got, step * S.bichar_table() % m.L):
            matches.append(S)
    if len(matches) != 1:
        raise NotAWeylMultiplierError(
            "antisymmetrization does not match a unique symplectic form"
        )
    return matches[0]


def weyl_system_from_multiplier(m):
    """A concrete Weyl system whose multiplier is exactly m.

    The form is recovered from the antisymmetrization of m; the system is
    a(v) W0(v) with W0 the clock-and-shift family and a the intertwiner from
    the coordinate multiplier to m."""
    S = recover_form(m)
    if not is_weyl_multiplier(m, S):
        raise NotAWeylMultiplierError("table is not a Weyl multiplier")
    base = clock_shift_system(m.spec, S)
    a = intertwiner(base.multiplier, m)
    ops = a.phase_vector()[:, None, None] * base.ops
    return WeylSystem(m.spec, S, m, ops)


def multiplier_of(ops, spec, tol=1e-6):
    """Measure the multiplier of a projective family of unitaries.

    ops is a (q^2, q, q) array indexed by vector index.  Each measured phase
    must be within tol of an exact mu_L root of unity; the returned table
    holds the rounded integer exponents."""
    q = spec.q
    if ops.shape != (q * q, q, q):
        raise InconsistentDimensionError(
            f"expected shape {(q * q, q, q)}, got {ops.shape}"
        )
    L = phase_order(spec)
    add, _ = vector_tables(spec)
    table = np.zeros((q * q, q * q), dtype=np.int64)
    for i in range(q * q):
        for j in range(q * q):
            prod = ops[i] @ ops[j]
            target = ops[int(add[i, j])]
            # W(u) W(v) = conj(m) W(u+v); the overlap recovers conj(m)
            s = np.vdot(target, prod) / q
            if abs(abs(s) - 1.0) > tol or np.linalg.norm(prod - s * target) > tol * q:
                raise NotProjectiveError(
                    f"products are not proportional at pair ({i}, {j})"
                )
            exponent = (-np.angle(s) * L) / (2 * np.pi)
            k = int(np.round(exponent)) % L
            if abs(np.exp(-2j * np.pi * k / L) - s) > tol:
                raise NotProjectiveError(
                    f"phase at pair ({i}, {j}) is not in mu_{L}"
                )
            table[i, j] = k
    return MultiplierTable(spec, L, table)


def commutation_bicharacter(W):
    """Exponents mod p of W(u) W(v) = b(u, v) W(v) W(u), from the multiplier."""
    m = W.multiplier
    p = W.spec.p
    step = m.L // p
    return ((m.table.T - m.table) % m.L) // step % p


def is_irreducible(ops, tol=1e-9):
    """True when the family spans the full matrix algebra."""
    n = ops.shape[0]
    dim = ops.shape[1]
    flat = ops.reshape(n, dim * dim)
    rank = np.linalg.matrix_rank(flat, tol=1e-8)
    return rank == dim * dim


def svn_intertwiner(W1, W2, seed=0):
    """The unitary U with W2(v) = U W1(v) U* for systems sharing a multiplier.

    Built by group averaging over rank-one seeds; the result is normalized to
    Frobenius norm sqrt(q) and its first nonzero entry is made real positive,
    so the answer is deterministic."""
    if W1.multiplier != W2.multiplier:
        raise MultiplierMismatchError("systems have different multipliers")
    q = W1.spec.q
    if W1.dim != q or W2.dim != q:
        raise InconsistentDimensionError("operator dimension must equal q")

    def average(E):
        U0 = np.zeros((q, q), dtype=complex)
        for v in range(q * q):
            U0 += W2.ops[v] @ E @ W1.ops[v].conj().T
        return U0 / (q * q)

    U0 = None
    for i in range(q):
        for j in range(q):
            E = np.zeros((q, q), dtype=complex)
            E[i, j] = 1.0
            cand = average(E)
            if np.linalg.norm(cand) > 1e-8:
                U0 = cand
                break
        if U0 is not None:
            break
    if U0 is None:
        rng = np.random.default_rng(seed)
        for _ in range(16):
            E = rng.standard_normal((q, q)) + 1j * rng.standard_normal((q, q))
            cand = average(E)
            if np.linalg.norm(cand) > 1e-8:
                U0 = cand
                break
        if U0 is None:
            raise DegenerateSeedError("all averaging seeds vanished")
    U = U0 * (np.sqrt(q) / np.linalg.norm(U0))
    flatU = U.ravel()
    first = flatU[np.argmax(np.abs(flatU) > 1e-9)]
    U = U * (first.conjugate() / abs(first))
    err = np.linalg.norm(U @ U.conj().T - np.eye(q))
    if err > 1e-9:
        raise NotProjectiveError(f"averaged operator is not unitary (err={err:.2e})")
    for v in range(q * q):
        if np.linalg.norm(W2.ops[v] - U @ W1.ops[v] @ U.conj().T) > 1e-9:
            raise NotProjectiveError("averaged operator fails to intertwine")
    return U
