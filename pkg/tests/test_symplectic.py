import numpy as np
import pytest

from covmub.demo import pauli_weyl_system
from covmub.errors import (
    NotInvariantMultiplierError,
    NotUnimodularError,
    SingularAminusIError,
)
from covmub.fields import field_new
from covmub.multipliers import (
    characteristic_two_multiplier,
    enumerate_weyl_multipliers,
    invariant_odd_multiplier,
    pullback,
)
from covmub.phase_space import (
    LinearMap2,
    SymplecticForm,
    all_vectors,
    directions,
    linear_map,
)
from covmub.quadratures import quadratures_from_weyl
from covmub.symplectic import (
    covariance_residual,
    covariant_quadrature_check,
    is_nonsplit,
    maximal_nonsplit_torus,
    metaplectic_operator,
    ordinary_phase_fix,
    sl_enumerate,
    sl_extension_probe,
    torus_orbits_on_directions,
)
from covmub.weyl import weyl_system_from_multiplier


def form(f):
    return SymplecticForm(f.one)


@pytest.mark.parametrize("p,r,size", [(2, 1, 6), (3, 1, 24), (2, 2, 60)])
def test_sl_enumerate(p, r, size):
    f = field_new(p, r)
    group = sl_enumerate(f)
    assert len(group) == size == f.q * (f.q ** 2 - 1)
    assert all(A.det() == f.one for A in group)
    assert len(set(group)) == size


def test_is_nonsplit():
    f2 = field_new(2)
    I = LinearMap2.identity(f2)
    assert not is_nonsplit(I)
    R = linear_map(f2, 1, 1, 1, 0)  # e1 -> e1+e2, e2 -> e1
    assert is_nonsplit(R)
    f3 = field_new(3)
    assert is_nonsplit(linear_map(f3, 0, 1, 2, 0))  # X^2 + 1, rootless mod 3
    with pytest.raises(NotUnimodularError):
        is_nonsplit(linear_map(f3, 2, 0, 0, 1))
    # cross-validation: nonsplit iff no direction is fixed
    for f in (f2, f3):
        for A in sl_enumerate(f):
            fixes = any(
                d.contains(A.apply(d.rep)) for d in directions(f)
            )
            assert is_nonsplit(A) == (not fixes)


@pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (2, 2), (5, 1)])
def test_torus_structure(p, r):
    f = field_new(p, r)
    torus = maximal_nonsplit_torus(f)
    assert torus.order == f.q + 1
    assert len(set(torus.elements)) == torus.order
    # cyclic: all elements are generator powers (by construction); closure:
    for A in torus.elements:
        assert A.det() == f.one
        assert any(A.compose(torus.generator) == B for B in torus.elements)
    # split elements inside the torus: only I (p = 2) or {I, -I} (odd p)
    split = [A for A in torus.elements if not is_nonsplit(A)]
    if f.p == 2:
        assert len(split) == 1
    else:
        assert len(split) == 2
        minus_I = LinearMap2(-f.one, f.zero, f.zero, -f.one)
        assert minus_I in split


@pytest.mark.parametrize(
    "p,r,sizes", [(2, 1, [3]), (3, 1, [2, 2]), (2, 2, [5]), (5, 1, [3, 3])]
)
def test_torus_orbits_on_directions(p, r, sizes):
    f = field_new(p, r)
    torus = maximal_nonsplit_torus(f)
    orbits = torus_orbits_on_directions(torus, f)
    assert sorted(len(o) for o in orbits) == sorted(sizes)
    assert sum(len(o) for o in orbits) == f.q + 1


def build(f):
    """A Weyl system whose multiplier is invariant under the nonsplit torus
    (for p = 2 that needs the torus average of the base multiplier)."""
    S = form(f)
    if f.p == 2:
        from covmub.multipliers import torus_average

        torus = maximal_nonsplit_torus(f)
        m = torus_average(characteristic_two_multiplier(f, S), torus.elements)
    else:
        m = invariant_odd_multiplier(f, S)
    return weyl_system_from_multiplier(m)


@pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (2, 2)])
def test_metaplectic_covariance(p, r):
    f = field_new(p, r)
    W = build(f)
    torus = maximal_nonsplit_torus(f)
    m = W.multiplier
    for A in torus.elements[1:]:
        assert pullback(m, A) == m
        op = metaplectic_operator(A, W)
        assert covariance_residual(op, W) <= 1e-9
        U = op.matrix
        assert np.linalg.norm(U @ U.conj().T - np.eye(f.q)) <= 1e-9


def test_metaplectic_preconditions():
    f3 = field_new(3)
    W = build(f3)
    with pytest.raises(NotUnimodularError):
        metaplectic_operator(linear_map(f3, 2, 0, 0, 1), W)
    with pytest.raises(SingularAminusIError):
        metaplectic_operator(LinearMap2.identity(f3), W)
    # a non-invariant multiplier is rejected
    ms = enumerate_weyl_multipliers(f3, form(f3))
    torus = maximal_nonsplit_torus(f3)
    A = torus.generator
    noninv = next(m for m in ms if pullback(m, A) != m)
    Wn = weyl_system_from_multiplier(noninv)
    with pytest.raises(NotInvariantMultiplierError):
        metaplectic_operator(A, Wn)


@pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (2, 2)])
def test_ordinary_phase_fix(p, r):
    f = field_new(p, r)
    W = build(f)
    torus = maximal_nonsplit_torus(f)
    raw = metaplectic_operator(torus.generator, W)
    ops, c = ordinary_phase_fix(torus, raw)
    assert np.linalg.norm(ops[LinearMap2.identity(f)] - np.eye(f.q)) <= 1e-9
    for A in torus.elements:
        for B in torus.elements:
            assert (
                np.linalg.norm(ops[A.compose(B)] - ops[A] @ ops[B]) <= 1e-9
            )
        # phase fix keeps covariance
        worst = max(
            np.linalg.norm(W.op(A.apply(v)) - ops[A] @ W.op(v) @ ops[A].conj().T)
            for v in all_vectors(f)
        )
        assert worst <= 1e-9


def test_gf2_phase_fix_cube():
    f = field_new(2)
    W = pauli_weyl_system()
    torus = maximal_nonsplit_torus(f)
    raw = metaplectic_operator(torus.generator, W)
    _, c = ordinary_phase_fix(torus, raw)
    assert abs(c ** 3 + 1) <= 1e-9


def test_covariant_quadrature_check():
    f = field_new(2)
    W = pauli_weyl_system()
    Q = quadratures_from_weyl(W)
    torus = maximal_nonsplit_torus(f)
    raw = metaplectic_operator(torus.generator, W)
    ops, _ = ordinary_phase_fix(torus, raw)
    assert covariant_quadrature_check(Q, ops, torus.elements)
    I = LinearMap2.identity(f)
    assert covariant_quadrature_check(Q, {I: np.eye(2)}, [I])
    # a wrong operator is caught
    bad = dict(ops)
    bad[torus.generator] = np.eye(2)
    assert not covariant_quadrature_check(Q, bad, torus.elements)
    # no SL(V)-covariant family exists for p = 2: the natural coset
    # extension by the swap F fails
    F = linear_map(f, 0, 1, 1, 0)
    UF = 1j * (np.array([[0, 1], [1, 0]]) - np.array([[0, -1j], [1j, 0]])) / np.sqrt(2)
    candidate = dict(ops)
    for A in torus.elements:
        candidate[F.compose(A)] = UF @ ops[A]
    assert not covariant_quadrature_check(Q, candidate, sl_enumerate(f))


def test_sl_extension_probe():
    f3 = field_new(3)
    W = build(f3)
    report = sl_extension_probe(f3, W)
    assert report.defect_free  # all defects trivial for the invariant class
    assert len(report.operators) == 24
    for A, U in report.operators.items():
        # weak covariance: U W(v) U* is W(Av) up to the recorded phase
        for v in all_vectors(f3):
            moved = U @ W.op(v) @ U.conj().T
            target = W.op(A.apply(v))
            s = np.vdot(target, moved) / 3
            assert abs(abs(s) - 1) < 1e-9
            assert np.linalg.norm(moved - s * target) < 1e-9
    f2 = field_new(2)
    rep2 = sl_extension_probe(f2, build(f2))
    assert len(rep2.operators) == 6  # emitted, no defect claim asserted
    f4 = field_new(2, 2)
    rep4 = sl_extension_probe(f4, build(f4))
    assert len(rep4.operators) == 60
