"""Multipliers (2-cocycles) of the phase space V with values in the cyclic
phase group mu_L, L = p for odd p and L = 4 for p = 2.

A multiplier is stored as a dense (q^2, q^2) integer table of exponents mod
L; entry [i, j] is the exponent of m(v_i, v_j).  All checks and algebra are
exact integer arithmetic; complex phases only appear when an operator
representation is built from a table.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    EvenCharacteristicError,
    FieldMismatchError,
    FieldTooLargeError,
    NonSymplecticElementError,
    NotACocycleError,
    NotATorusError,
    NotEquivalentError,
    OddCharacteristicError,
    SingularMapError,
)
from .fields import self_dual_basis
from .phase_space import (
    PhaseVector,
    all_vectors,
    directions,
    vector_from_index,
    vector_tables,
)


def phase_order(spec):
    """L, the order of the phase group mu_L used for this field."""
    return 4 if spec.p == 2 else spec.p


@dataclass(frozen=True)
class MultiplierTable:
    spec: object
    L: int
    table: np.ndarray  # (q^2, q^2) int exponents mod L

    def exponent(self, u, v):
        return int(self.table[u.index, v.index])

    def phase(self, u, v):
        return np.exp(2j * np.pi * self.exponent(u, v) / self.L)

    def phase_table(self):
        return np.exp(2j * np.pi * self.table / self.L)

    def conjugate(self):
        return MultiplierTable(self.spec, self.L, (-self.table) % self.L)

    def __eq__(self, other):
        return (
            isinstance(other, MultiplierTable)
            and self.spec == other.spec
            and self.L == other.L
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.spec, self.L, self.table.tobytes()))


@dataclass(frozen=True)
class PhaseFunction:
    """Function V -> mu_L stored as a length-q^2 exponent vector mod L."""

    spec: object
    L: int
    values: np.ndarray

    def exponent(self, v):
        return int(self.values[v.index])

    def phase(self, v):
        return np.exp(2j * np.pi * self.exponent(v) / self.L)

    def phase_vector(self):
        return np.exp(2j * np.pi * self.values / self.L)


def coboundary(a):
    """The exact multiplier da(u, v) = a(u + v) / (a(u) a(v)), as exponents."""
    add, _ = vector_tables(a.spec)
    vals = a.values
    return (vals[add] - vals[:, None] - vals[None, :]) % a.L


def is_multiplier(m):
    """Cocycle test.  Returns (True, None) or (False, witness_triple)."""
    add, _ = vector_tables(m.spec)
    t = m.table
    # m(g1+g2, g3) m(g1, g2) == m(g1, g2+g3) m(g2, g3), exponents mod L
    lhs = (t[add][:, :, :] + t[:, :, None]) % m.L
    rhs = (t[:, add] + t[None, :, :]) % m.L
    if np.array_equal(lhs, rhs):
        return True, None
    i, j, k = np.argwhere(lhs != rhs)[0]
    spec = m.spec
    return False, (
        vector_from_index(spec, int(i)),
        vector_from_index(spec, int(j)),
        vector_from_index(spec, int(k)),
    )


def _check_normalized(m):
    if m.table[0, 0] % m.L != 0:
        raise NotACocycleError("multiplier must satisfy m(0, 0) = 1")


def is_weyl_multiplier(m, S):
    """True when m is a multiplier, trivial on every direction, with
    antisymmetrization equal to the bicharacter of S."""
    ok, _ = is_multiplier(m)
    if not ok:
        return False
    spec = m.spec
    for d in directions(spec):
        idx = [v.index for v in d.points()]
        if np.any(m.table[np.ix_(idx, idx)] % m.L):
            return False
    want = (m.L // spec.p) * S.bichar_table() % m.L
    got = (m.table.T - m.table) % m.L
    return np.array_equal(got, want)


def canonical_m0(spec, S):
    """The coordinate multiplier m0(u, v) = exp(2 pi i Tr(lam * u2 * v1) / p).

    This is the multiplier measured on the clock-and-shift operator family;
    it is a multiplier for every field but a Weyl multiplier only in odd
    characteristic (for p = 2 it is not trivial on the diagonal directions).
    """
    q = spec.q
    L = phase_order(spec)
    lam = S.lam
    # Tr(lam * u2 * v1) depends only on (u2, v1)
    sub = np.zeros((q, q), dtype=np.int64)
    for i in range(q):
        for j in range(q):
            prod = int(spec.mul_table[lam.index, int(spec.mul_table[i, j])])
            sub[i, j] = spec.trace_table[prod]
    i1 = np.arange(q * q) // q
    i2 = np.arange(q * q) % q
    table = (L // spec.p) * sub[np.ix_(i2, i1)] % L
    return MultiplierTable(spec, L, table.astype(np.int64))


def invariant_odd_multiplier(spec, S):
    """The unique SL(V)-invariant Weyl multiplier in odd characteristic:
    m(u, v) = exp(2 pi i Tr(S(v/2, u)) / p)."""
    if spec.p == 2:
        raise EvenCharacteristicError("no invariant multiplier exists for p = 2")
    q = spec.q
    half = spec.element(2).inverse()
    vs = all_vectors(spec)
    table = np.zeros((q * q, q * q), dtype=np.int64)
    for j, v in enumerate(vs):
        hv = v.scale(half)
        for i, u in enumerate(vs):
            table[i, j] = S.bichar_exponent(hv, u)
    return MultiplierTable(spec, spec.p, table)


def characteristic_two_multiplier(spec, S):
    """A Weyl multiplier for p = 2, built from self-dual bases.

    In coordinates primed so the form has unit scale, the correction phase on
    the off-axis direction through (1, alpha) assigns to gamma * (1, alpha)
    the fourth root i^w, w the Hamming weight of gamma in the alpha-scaled
    self-dual basis; the result is (d a) * m0.
    """
    if spec.p != 2:
        raise OddCharacteristicError("this construction needs p = 2")
    q = spec.q
    L = 4
    lam = S.lam
    lam_inv = lam.inverse()
    a_exp = np.zeros(q * q, dtype=np.int64)
    for alpha in spec.nonzero_elements():
        eps = self_dual_basis(spec, alpha)
        for gamma in spec.nonzero_elements():
            weight = sum((alpha * gamma * e).trace() for e in eps)
            # u' = gamma * (1, alpha) in primed coordinates; unprime x2
            u = PhaseVector(gamma, lam_inv * (gamma * alpha))
            a_exp[u.index] = weight % 4
    m0 = canonical_m0(spec, S)
    add, _ = vector_tables(spec)
    table = (a_exp[add] - a_exp[:, None] - a_exp[None, :] + m0.table) % L
    return MultiplierTable(spec, L, table)


def base_weyl_multiplier(spec, S):
    """One Weyl multiplier for the form S, any characteristic."""
    if spec.p == 2:
        return characteristic_two_multiplier(spec, S)
    return invariant_odd_multiplier(spec, S)


def enumerate_weyl_multipliers(spec, S):
    """All q^(q-1) Weyl multipliers for the form S, in a deterministic order.

    Starting from a base multiplier, every other one is (d a) * base with a
    a character on each direction; normalizing the characters on the first
    two directions to be trivial picks exactly one representative from each
    coset of the characters of V, so the list below is complete and free of
    repeats.
    """
    if spec.q > 8:
        raise FieldTooLargeError("enumeration is limited to q <= 8")
    base = base_weyl_multiplier(spec, S)
    L = base.L
    step = L // spec.p
    dirs = directions(spec)
    free_dirs = dirs[2:]
    add, _ = vector_tables(spec)
    out = []
    nonzero = spec.nonzero_elements()
    for betas in itertools.product(spec.elements(), repeat=len(free_dirs)):
        a_exp = np.zeros(spec.q ** 2, dtype=np.int64)
        for beta, d in zip(betas, free_dirs):
            for gamma in nonzero:
                a_exp[d.rep.scale(gamma).index] = step * (beta * gamma).trace() % L
        table = (a_exp[add] - a_exp[:, None] - a_exp[None, :] + base.table) % L
        out.append(MultiplierTable(spec, L, table))
    return out


def _digit_generators(spec):
    """Z_p-module generators of V: (x^i, 0) then (0, x^i)."""
    gens = []
    for i in range(spec.r):
        e = spec.from_index(spec._index_of[tuple(1 if k == i else 0 for k in range(spec.r))])
        gens.append(PhaseVector(e, spec.zero))
    for i in range(spec.r):
        e = spec.from_index(spec._index_of[tuple(1 if k == i else 0 for k in range(spec.r))])
        gens.append(PhaseVector(spec.zero, e))
    return gens


def _digits(spec, n):
    """Base-p digit vector of vector index n along the generators above."""
    q, p, r = spec.q, spec.p, spec.r
    c1 = spec._coeffs[n // q]
    c2 = spec._coeffs[n % q]
    return c1 + c2


def intertwiner(m1, m2):
    """Phase function a with (d a) * m1 = m2, or NotEquivalentError.

    The difference d = m2 - m1 of two Weyl multipliers for the same form is a
    symmetric exact multiplier, so a can be built by telescoping along base-p
    digits; a is verified before returning, and its restriction to each
    direction is a character automatically.
    """
    if m1.spec != m2.spec or m1.L != m2.L:
        raise FieldMismatchError("multipliers live over different fields")
    spec, L = m1.spec, m1.L
    d = (m2.table - m1.table) % L
    if not np.array_equal(d, d.T):
        raise NotEquivalentError("multiplier difference is not symmetric")
    gens = _digit_generators(spec)
    gen_idx = [g.index for g in gens]
    add, neg = vector_tables(spec)
    n_total = spec.q ** 2
    a = np.zeros(n_total, dtype=np.int64)
    order = sorted(range(n_total), key=lambda n: sum(_digits(spec, n)))
    for n in order:
        if n == 0:
            continue
        digs = _digits(spec, n)
        k = next(i for i, dg in enumerate(digs) if dg)
        g = gen_idx[k]
        prev = int(add[n, neg[g]])  # subtract one step of generator k
        a[n] = (a[prev] + d[prev, g]) % L
    if not np.array_equal((a[add] - a[:, None] - a[None, :]) % L, d):
        raise NotEquivalentError("multipliers are not cohomologous")
    return PhaseFunction(spec, L, a)


def pullback(m, A):
    """(m_A)(u, v) = m(A u, A v)."""
    if A.det().is_zero:
        raise SingularMapError("pullback needs an invertible map")
    perm = A.permutation()
    return MultiplierTable(m.spec, m.L, m.table[np.ix_(perm, perm)].copy())


def invariant_multipliers(spec, S, group):
    """Sublist of the enumerated Weyl multipliers fixed by every element of
    the given collection of determinant-one maps."""
    for A in group:
        if A.det() != spec.one:
            raise NonSymplecticElementError(f"{A!r} has determinant != 1")
    perms = [A.permutation() for A in group]
    out = []
    for m in enumerate_weyl_multipliers(spec, S):
        if all(
            np.array_equal(m.table[np.ix_(p_, p_)], m.table) for p_ in perms
        ):
            out.append(m)
    return out


def torus_average(m, torus_elements):
    """Product over the torus of the pullbacks of m; p = 2 only, where the
    torus order q + 1 is odd so the average of a Weyl multiplier is again a
    Weyl multiplier, now torus-invariant."""
    spec = m.spec
    if spec.p != 2:
        raise OddCharacteristicError("torus averaging is used for p = 2 only")
    tel = list(torus_elements)
    if len(tel) != spec.q + 1:
        raise NotATorusError(f"expected {spec.q + 1} elements, got {len(tel)}")
    ident = [
        A for A in tel
        if A.b.is_zero and A.c.is_zero and A.a == spec.one and A.d == spec.one
    ]
    if len(ident) != 1:
        raise NotATorusError("torus must contain the identity exactly once")
    for A in tel:
        if A.det() != spec.one:
            raise NotATorusError("torus elements must have determinant one")
    total = np.zeros_like(m.table)
    for A in tel:
        perm = A.permutation()
        total = (total + m.table[np.ix_(perm, perm)]) % m.L
    return MultiplierTable(spec, m.L, total)
