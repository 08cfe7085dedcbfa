import numpy as np
import pytest

from covmub.demo import SIGMA, pauli_weyl_system
from covmub.errors import NotCovariantError, NotIrreducibleError
from covmub.fields import field_new
from covmub.multipliers import (
    characteristic_two_multiplier,
    enumerate_weyl_multipliers,
    invariant_odd_multiplier,
)
from covmub.phase_space import (
    LinearMap2,
    SymplecticForm,
    all_vectors,
    linear_map,
    vector,
)
from covmub.quadratures import (
    QuadratureSystem,
    are_equivalent,
    associated_multiplier,
    centered_weyl_from_quadratures,
    g_action,
    induced_symplectic_form,
    origin,
    quadratures_from_weyl,
    range_conjugacy_witness,
    translation_covariance_check,
    verify_quadrature_axioms,
)
from covmub.weyl import WeylSystem, weyl_system_from_multiplier


def form(f):
    return SymplecticForm(f.one)


def base_system(f, lam=None):
    S = SymplecticForm(lam if lam is not None else f.one)
    if f.p == 2:
        m = characteristic_two_multiplier(f, S)
    else:
        m = invariant_odd_multiplier(f, S)
    return quadratures_from_weyl(weyl_system_from_multiplier(m))


def test_pauli_projections_golden():
    W = pauli_weyl_system()
    Q = quadratures_from_weyl(W)
    f = W.spec

    def line_of(pa, pb):
        from covmub.phase_space import AffineLine, Direction

        a, b = vector(f, *pa), vector(f, *pb)
        return AffineLine.through(a, Direction.through(b - a))

    table = [
        (((0, 0), (1, 0)), (np.eye(2) + SIGMA[1]) / 2),
        (((0, 1), (1, 1)), (np.eye(2) - SIGMA[1]) / 2),
        (((0, 0), (0, 1)), (np.eye(2) + SIGMA[2]) / 2),
        (((1, 0), (1, 1)), (np.eye(2) - SIGMA[2]) / 2),
        (((0, 0), (1, 1)), (np.eye(2) + SIGMA[3]) / 2),
        (((0, 1), (1, 0)), (np.eye(2) - SIGMA[3]) / 2),
    ]
    for (pa, pb), want in table:
        assert np.linalg.norm(Q.proj[line_of(pa, pb)] - want) < 1e-12


@pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (2, 2)])
def test_axioms_for_constructed_systems(p, r):
    f = field_new(p, r)
    Q = base_system(f)
    report = verify_quadrature_axioms(Q)
    assert report.all_ok
    assert report.max_projection_residual < 1e-9


def test_axiom_failures_detected():
    f = field_new(3)
    Q = base_system(f)
    ls = Q.lines
    # replace one projection by I/q: fails rank-one
    broken = dict(Q.proj)
    broken[ls[0]] = np.eye(3) / 3
    rep = verify_quadrature_axioms(QuadratureSystem(f, broken, origin(f)))
    assert not rep.rank_one_ok
    # swap two non-parallel lines' projections: fails a resolution
    l1 = ls[0]
    l2 = next(l for l in ls if l.direction != l1.direction)
    swapped = dict(Q.proj)
    swapped[l1], swapped[l2] = swapped[l2], swapped[l1]
    rep = verify_quadrature_axioms(QuadratureSystem(f, swapped, origin(f)))
    assert not rep.resolutions_ok


def test_quadratures_require_irreducible():
    f = field_new(3)
    flat = np.array([np.eye(3)] * 9, dtype=complex)
    W = WeylSystem(f, form(f), None, flat)
    with pytest.raises(NotIrreducibleError):
        quadratures_from_weyl(W)


@pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (2, 2)])
def test_induced_form_round_trip(p, r):
    f = field_new(p, r)
    for lam in f.nonzero_elements():
        Q = base_system(f, lam)
        assert induced_symplectic_form(Q).lam == lam


def test_induced_form_scales_under_pullback():
    # pulling back by det A = mu multiplies the form scale by mu
    f = field_new(3)
    Q = base_system(f)
    A = linear_map(f, 2, 0, 0, 1)  # det 2
    QA = g_action(Q, (A, origin(f)))
    assert induced_symplectic_form(QA).lam == f.element(2)


def test_not_covariant_detected():
    # over GF(2) swapping the two lines of a direction is itself a covariant
    # relabeling, so use GF(3): a transposition of two of the three parallel
    # lines is not a translation and kills covariance
    f = field_new(3)
    Q = base_system(f)
    ls = Q.lines
    broken = dict(Q.proj)
    same = [l for l in ls if l.direction == ls[0].direction]
    broken[same[0]], broken[same[1]] = broken[same[1]], broken[same[0]]
    Qb = QuadratureSystem(f, broken, origin(f))
    with pytest.raises(NotCovariantError):
        induced_symplectic_form(Qb)
    # GF(2): the within-direction swap stays covariant (shift relabeling)
    f2 = field_new(2)
    Q2 = base_system(f2)
    ls2 = Q2.lines
    swapped = dict(Q2.proj)
    same2 = [l for l in ls2 if l.direction == ls2[0].direction]
    swapped[same2[0]], swapped[same2[1]] = swapped[same2[1]], swapped[same2[0]]
    assert induced_symplectic_form(
        QuadratureSystem(f2, swapped, origin(f2))
    ).lam == f2.one


def test_associated_multiplier_and_centering():
    f3 = field_new(3)
    S = form(f3)
    ms = enumerate_weyl_multipliers(f3, S)
    for m in ms[:4]:
        W = weyl_system_from_multiplier(m)
        Q = quadratures_from_weyl(W)
        assert associated_multiplier(Q) == m
        # centered at o: W(d) fixes the projections of the lines through o
        o = origin(f3)
        Wc = centered_weyl_from_quadratures(Q, o, S)
        for l in Q.lines:
            if not l.contains(o):
                continue
            for d in l.direction.points():
                P = Q.proj[l]
                Wd = Wc.op(d)
                assert np.linalg.norm(Wd @ P - P) < 1e-9
    # centering at a different origin keeps the multiplier (recentering law)
    Q = quadratures_from_weyl(weyl_system_from_multiplier(ms[0]))
    o2 = vector(f3, 1, 2)
    W2 = centered_weyl_from_quadratures(Q, o2, S)
    assert W2.multiplier == ms[0]


def test_recentering_is_inner():
    # W_o'(v) = W_o(u) W_o(v) W_o(u)* for u = o' - o
    f3 = field_new(3)
    S = form(f3)
    Q = base_system(f3)
    o1, o2 = origin(f3), vector(f3, 1, 2)
    W1 = centered_weyl_from_quadratures(Q, o1, S)
    W2 = centered_weyl_from_quadratures(Q, o2, S)
    u = o2 - o1
    Wu = W1.op(u)
    for v in all_vectors(f3):
        assert np.linalg.norm(W2.op(v) - Wu @ W1.op(v) @ Wu.conj().T) < 1e-9


def test_fourier_round_trip():
    # extraction inverts construction: centered extraction of the built
    # system returns the Weyl operators exactly
    for p, r in [(2, 1), (3, 1), (2, 2), (5, 1)]:
        f = field_new(p, r)
        S = form(f)
        if f.p == 2:
            m = characteristic_two_multiplier(f, S)
        else:
            m = invariant_odd_multiplier(f, S)
        W = weyl_system_from_multiplier(m)
        Q = quadratures_from_weyl(W)
        Wc = centered_weyl_from_quadratures(Q, origin(f), S)
        assert np.max(np.abs(Wc.ops - W.ops)) < 1e-9


def test_translation_covariance():
    f = field_new(3)
    m = invariant_odd_multiplier(f, form(f))
    W = weyl_system_from_multiplier(m)
    Q = quadratures_from_weyl(W)
    assert translation_covariance_check(Q, W)
    # v = 0 alone is trivially fine, mutate to break the general case
    broken = dict(Q.proj)
    ls = Q.lines
    broken[ls[0]] = Q.proj[ls[1]]
    assert not translation_covariance_check(
        QuadratureSystem(f, broken, origin(f)), W
    )


def test_g_action_identity_and_swap():
    f2 = field_new(2)
    Wp = pauli_weyl_system()
    Q = quadratures_from_weyl(Wp)
    I = LinearMap2.identity(f2)
    QI = g_action(Q, (I, origin(f2)))
    assert all(np.array_equal(QI.proj[l], Q.proj[l]) for l in Q.lines)
    # swapping e1, e2 turns Q into the conjugate-class system
    F = linear_map(f2, 0, 1, 1, 0)
    QF = g_action(Q, (F, origin(f2)))
    ops2 = Wp.ops.copy()
    ops2[vector(f2, 1, 0).index] = SIGMA[2]
    ops2[vector(f2, 0, 1).index] = SIGMA[1]
    from covmub.weyl import multiplier_of

    W2 = WeylSystem(f2, Wp.form, multiplier_of(ops2, f2), ops2)
    Qp = quadratures_from_weyl(W2)
    assert all(np.linalg.norm(QF.proj[l] - Qp.proj[l]) < 1e-12 for l in Q.lines)


def test_are_equivalent():
    f2 = field_new(2)
    Wp = pauli_weyl_system()
    Q = quadratures_from_weyl(Wp)
    eq, U = are_equivalent(Q, Q)
    assert eq and np.linalg.norm(U - np.eye(2)) < 1e-9
    # the two GF(2) classes are inequivalent
    F = linear_map(f2, 0, 1, 1, 0)
    QF = g_action(Q, (F, origin(f2)))
    eq, U = are_equivalent(Q, QF)
    assert not eq and U is None
    # relabeling by direction shifts keeps the class
    f3 = field_new(3)
    S = form(f3)
    ms = enumerate_weyl_multipliers(f3, S)
    Q1 = quadratures_from_weyl(weyl_system_from_multiplier(ms[0]))
    Q2 = quadratures_from_weyl(weyl_system_from_multiplier(ms[0]), vector(f3, 1, 1))
    eq, U = are_equivalent(Q1, Q2)
    assert eq
    # different multipliers: inequivalent
    Q3 = quadratures_from_weyl(weyl_system_from_multiplier(ms[1]))
    assert are_equivalent(Q1, Q3) == (False, None)


def test_range_conjugacy_witness():
    # GF(2): the two classes
    f2 = field_new(2)
    Wp = pauli_weyl_system()
    Q = quadratures_from_weyl(Wp)
    QF = g_action(Q, (linear_map(f2, 0, 1, 1, 0), origin(f2)))
    A, shifts, U = range_conjugacy_witness(Q, QF)
    assert A.det() == f2.one
    # trivial pair gives the identity witness
    A, shifts, U = range_conjugacy_witness(Q, Q)
    assert A == LinearMap2.identity(f2)
    assert all(s.is_zero for s in shifts.values())
    assert np.linalg.norm(U - np.eye(2)) < 1e-9
    # GF(3): different form scales, witness with det A = 2
    f3 = field_new(3)
    Q1 = base_system(f3, f3.one)
    Q2 = base_system(f3, f3.element(2))
    A, shifts, U = range_conjugacy_witness(Q1, Q2)
    assert A.det() == f3.element(2)
