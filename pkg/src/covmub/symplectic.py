"""SL(V), nonsplit toruses and metaplectic operators.

For A in SL(V) with A - I invertible and an A-invariant Weyl multiplier m,
the averaging formula

    U(A) = (c / q) * sum_u m(u, (A - I)^{-1} u) W(u)

gives a unitary with U(A) W(v) U(A)* = W(A v).  Powers of a torus generator
can be rescaled by a principal root of unity so that the map A^k -> U(A)^k
is an honest homomorphism on the torus.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    FieldTooLargeError,
    NotATorusError,
    NotInvariantMultiplierError,
    NotScalarPowerError,
    NotUnimodularError,
    SingularAminusIError,
)
from .fields import norm_one_generator, quadratic_extension
from .multipliers import intertwiner, pullback
from .phase_space import (
    Direction,
    LinearMap2,
    PhaseVector,
    affine_action,
    all_vectors,
    directions,
)
from .weyl import WeylSystem, svn_intertwiner


def sl_enumerate(spec):
    """All of SL(V) in a deterministic order; q(q^2 - 1) elements."""
    if spec.q > 9:
        raise FieldTooLargeError("SL enumeration is limited to q <= 9")
    out = []
    one = spec.one
    els = spec.elements()
    for a in els:
        for b in els:
            for c in els:
                for d in els:
                    if a * d - b * c == one:
                        out.append(LinearMap2(a, b, c, d))
    return out


def is_nonsplit(A):
    """True when A in SL(V) has no eigenvector in V, i.e. the characteristic
    polynomial x^2 - tr(A) x + 1 has no root in F."""
    spec = A.field
    if A.det() != spec.one:
        raise NotUnimodularError("determinant must be one")
    t = A.trace_elem()
    return all(not (x * x - t * x + spec.one).is_zero for x in spec.elements())


@dataclass(frozen=True)
class Torus:
    generator: LinearMap2
    elements: tuple  # powers generator^0 .. generator^q
    order: int


def maximal_nonsplit_torus(spec):
    """A maximal nonsplit torus of SL(V), cyclic of order q + 1.

    The generator is [[t, 1], [-1, 0]] with t = z0 + conj(z0) for z0 the
    canonical norm-one generator of the quadratic extension, so its
    characteristic polynomial is that of z0 and has no root in F."""
    ext = quadratic_extension(spec)
    z0 = norm_one_generator(ext)
    tbar = z0 + z0.conj()
    if not tbar.b.is_zero:
        raise AssertionError("trace of norm-one generator left the base field")
    t = tbar.a
    one = spec.one
    A = LinearMap2(t, one, -one, spec.zero)
    elems = [LinearMap2.identity(spec)]
    cur = A
    while True:
        elems.append(cur)
        cur = cur.compose(A)
        if cur == elems[0]:
            break
    if len(elems) != spec.q + 1:
        raise NotATorusError(f"generator order {len(elems)} != q + 1")
    return Torus(A, tuple(elems), len(elems))


def torus_orbits_on_directions(torus, spec):
    """Orbits of the torus on the q + 1 directions, in deterministic order."""
    dirs = directions(spec)
    remaining = list(dirs)
    orbits = []
    while remaining:
        d0 = remaining[0]
        orbit = []
        d = d0
        while True:
            orbit.append(d)
            d = Direction.through(torus.generator.apply(d.rep))
            if d == d0:
                break
        orbits.append(orbit)
        remaining = [d for d in remaining if d not in orbit]
    return orbits


@dataclass(frozen=True)
class MetaplecticOp:
    A: LinearMap2
    matrix: np.ndarray
    c: complex


def metaplectic_operator(A, W, c=1.0):
    """Averaged unitary implementing A on the Weyl system W.

    Requires det A = 1, A - I invertible, and the multiplier of W invariant
    under A.  With c = 1 the result is determined up to the later phase fix;
    its covariance W(A v) = U W(v) U* holds exactly."""
    spec = W.spec
    if A.det() != spec.one:
        raise NotUnimodularError("determinant must be one")
    B = A.minus_identity()
    if B.det().is_zero:
        raise SingularAminusIError("A - I must be invertible")
    m = W.multiplier
    if pullback(m, A) != m:
        raise NotInvariantMultiplierError("multiplier is not A-invariant")
    Binv = B.inverse()
    q = spec.q
    U = np.zeros((q, q), dtype=complex)
    for u in all_vectors(spec):
        U += m.phase(u, Binv.apply(u)) * W.op(u)
    U = c * U / q
    return MetaplecticOp(A, U, complex(c))


def covariance_residual(op, W):
    """max_v || W(A v) - U W(v) U* ||."""
    U = op.matrix
    worst = 0.0
    for v in all_vectors(W.spec):
        Av = op.A.apply(v)
        worst = max(worst, np.linalg.norm(W.op(Av) - U @ W.op(v) @ U.conj().T))
    return worst


def ordinary_phase_fix(torus, raw_generator_op, tol=1e-9):
    """Turn the raw metaplectic operator of a torus generator into an honest
    torus representation.

    U(A)^n is scalar (n the torus order); multiplying U(A) by the principal
    n-th root c of the conjugate scalar gives (c U(A))^n = I, and powers of
    the fixed operator represent the whole torus.  Returns (ops, c) with ops
    a dict keyed by torus element."""
    n = torus.order
    if isinstance(raw_generator_op, dict):
        raw_generator_op = raw_generator_op[torus.generator]
    U = raw_generator_op.matrix
    q = U.shape[0]
    P = np.linalg.matrix_power(U, n)
    zeta = np.trace(P) / q
    if np.linalg.norm(P - zeta * np.eye(q)) > tol or abs(abs(zeta) - 1) > tol:
        raise NotScalarPowerError("generator power is not a unimodular scalar")
    theta = np.angle(zeta.conjugate()) % (2 * np.pi)
    c = np.exp(1j * theta / n)
    ops = {}
    cur = np.eye(q, dtype=complex)
    for k in range(n):
        ops[torus.elements[k]] = cur
        cur = (c * U) @ cur
    return ops, c


def covariant_quadrature_check(Q, ops, group, tol=1e-9):
    """True when Q(g . l) = U_g Q(l) U_g* for every g in the group."""
    spec = Q.spec
    o = PhaseVector(spec.zero, spec.zero)
    for g in group:
        U = ops[g]
        for l in Q.lines:
            gl = affine_action((g, o), l)
            if np.linalg.norm(Q.proj[gl] - U @ Q.proj[l] @ U.conj().T) > tol:
                return False
    return True


@dataclass(frozen=True)
class ExtensionProbeReport:
    operators: dict  # LinearMap2 -> ndarray
    defects: dict  # (index pair) -> max absolute defect exponent
    defect_free: bool


def sl_extension_probe(spec, W):
    """For every A in SL(V), build a unitary U_A with
    U_A W(v) U_A* proportional to W(A v), then measure the phase defect of
    the family under composition.

    The phase functions a_A relating the pulled-back multiplier to the
    original are not canonical, so the defect table is informational: a zero
    table means the particular choices already form a projective family."""
    if spec.q > 4:
        raise FieldTooLargeError("extension probe is limited to q <= 4")
    m = W.multiplier
    L = m.L
    group = sl_enumerate(spec)
    phases = {}
    ops = {}
    for A in group:
        mA = pullback(m, A)
        a = intertwiner(mA, m)
        phases[A] = a
        perm = A.permutation()
        twisted = a.phase_vector()[:, None, None] * W.ops[perm]
        WA = WeylSystem(spec, W.form, m, twisted)
        ops[A] = svn_intertwiner(W, WA)
    defects = {}
    all_zero = True
    for i, A in enumerate(group):
        for j, B in enumerate(group):
            AB = A.compose(B)
            permB = B.permutation()
            d = (phases[AB].values - phases[A].values[permB] - phases[B].values) % L
            worst = int(np.max(np.minimum(d, L - d)))
            defects[(i, j)] = worst
            if worst:
                all_zero = False
    return ExtensionProbeReport(ops, defects, all_zero)
