"""Golden single-qubit walkthrough, machine-checked.

Over GF(2) the three Weyl operators can be taken to be the Pauli matrices;
everything downstream (multiplier table, the six projections, the torus
representation with its phase fix, the swap operator U(F) and the lines on
which it fails to intertwine) has a closed form that the checks below
reproduce entrywise.
"""

from __future__ import annotations

import json

import numpy as np

from .fields import field_new
from .phase_space import (
    AffineLine,
    Direction,
    PhaseVector,
    SymplecticForm,
    linear_map,
    vector,
)
from .quadratures import g_action, quadratures_from_weyl, verify_quadrature_axioms
from .symplectic import (
    covariance_residual,
    maximal_nonsplit_torus,
    metaplectic_operator,
    ordinary_phase_fix,
)
from .weyl import WeylSystem, multiplier_of

SIGMA = {
    1: np.array([[0, 1], [1, 0]], dtype=complex),
    2: np.array([[0, -1j], [1j, 0]], dtype=complex),
    3: np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_weyl_system():
    """W(e1) = sigma1, W(e2) = sigma2, W(e1+e2) = sigma3 over GF(2)."""
    spec = field_new(2)
    S = SymplecticForm(spec.one)
    ops = np.zeros((4, 2, 2), dtype=complex)
    ops[vector(spec, 0, 0).index] = np.eye(2)
    ops[vector(spec, 1, 0).index] = SIGMA[1]
    ops[vector(spec, 0, 1).index] = SIGMA[2]
    ops[vector(spec, 1, 1).index] = SIGMA[3]
    m = multiplier_of(ops, spec)
    return WeylSystem(spec, S, m, ops)


def _line(spec, pt_a, pt_b):
    a = vector(spec, *pt_a)
    b = vector(spec, *pt_b)
    return AffineLine.through(a, Direction.through(b - a))


def run_qubit_demo(pretty=False, tol=1e-9):
    """Run every golden check; returns (report_text, all_ok)."""
    spec = field_new(2)
    W = pauli_weyl_system()
    m = W.multiplier
    checks = {}

    e1 = vector(spec, 1, 0)
    e2 = vector(spec, 0, 1)
    e12 = vector(spec, 1, 1)
    # multiplier triple values: -i on the cyclic triple, +i on its reverse
    minus_i = 3  # exponent of -i in mu_4
    plus_i = 1
    checks["multiplier_table"] = (
        m.exponent(e1, e2) == minus_i
        and m.exponent(e12, e1) == minus_i
        and m.exponent(e2, e12) == minus_i
        and m.exponent(e2, e1) == plus_i
        and m.exponent(e1, e12) == plus_i
        and m.exponent(e12, e2) == plus_i
        and m.exponent(e1, e1) == 0
        and m.exponent(e2, e2) == 0
        and m.exponent(e12, e12) == 0
    )

    Q = quadratures_from_weyl(W)
    checks["axioms"] = verify_quadrature_axioms(Q, tol=tol).all_ok

    expected = {
        ((0, 0), (1, 0), 1, +1),
        ((0, 1), (1, 1), 1, -1),
        ((0, 0), (0, 1), 2, +1),
        ((1, 0), (1, 1), 2, -1),
        ((0, 0), (1, 1), 3, +1),
        ((0, 1), (1, 0), 3, -1),
    }
    proj_ok = True
    for pa, pb, i, sign in expected:
        l = _line(spec, pa, pb)
        target = (np.eye(2) + sign * SIGMA[i]) / 2
        if np.linalg.norm(Q.proj[l] - target) > tol:
            proj_ok = False
    checks["projections"] = proj_ok

    # the conjugate class: swap sigma1 and sigma2
    ops2 = np.array(W.ops)
    ops2[e1.index] = SIGMA[2]
    ops2[e2.index] = SIGMA[1]
    W2 = WeylSystem(spec, W.form, multiplier_of(ops2, spec), ops2)
    Qp = quadratures_from_weyl(W2)
    checks["conjugate_multiplier"] = W2.multiplier == m.conjugate()

    F = linear_map(spec, 0, 1, 1, 0)
    o = PhaseVector(spec.zero, spec.zero)
    QF = g_action(Q, (F, o))
    checks["swap_equals_conjugate_system"] = all(
        np.linalg.norm(QF.proj[l] - Qp.proj[l]) <= tol for l in Q.lines
    )

    torus = maximal_nonsplit_torus(spec)
    R = torus.generator
    rawR = metaplectic_operator(R, W)
    target_UR = (np.eye(2) + 1j * (SIGMA[1] + SIGMA[2] + SIGMA[3])) / 2
    checks["torus_generator_operator"] = np.linalg.norm(rawR.matrix - target_UR) <= tol
    checks["torus_covariance"] = covariance_residual(rawR, W) <= tol
    ops_fixed, c = ordinary_phase_fix(torus, rawR)
    checks["phase_fix_cube"] = abs(c ** 3 + 1) <= tol
    checks["torus_representation"] = all(
        np.linalg.norm(
            ops_fixed[A.compose(B)] - ops_fixed[A] @ ops_fixed[B]
        ) <= tol
        for A in torus.elements
        for B in torus.elements
    )

    UF = 1j * (SIGMA[1] - SIGMA[2]) / np.sqrt(2)
    checks["UF_square"] = np.linalg.norm(UF @ UF + np.eye(2)) <= tol
    checks["UF_weak_covariance"] = all(
        np.linalg.norm(UF @ W.op(v) @ UF.conj().T + W.op(F.apply(v))) <= tol
        for v in [e1, e2, e12]
    )

    # the three relabelings U(F) actually performs, and the failures
    triples = [
        (((0, 0), (1, 0)), ((1, 0), (1, 1))),
        (((0, 1), (1, 1)), ((0, 0), (0, 1))),
        (((0, 0), (1, 1)), ((0, 1), (1, 0))),
    ]
    eq_ok, neq_ok = True, True
    for (src, dst) in triples:
        l_src = _line(spec, *src)
        l_dst = _line(spec, *dst)
        moved = UF @ Q.proj[l_src] @ UF.conj().T
        if np.linalg.norm(moved - Q.proj[l_dst]) > tol:
            eq_ok = False
        if np.linalg.norm(moved - QF.proj[l_src]) <= tol:
            neq_ok = False
    checks["UF_relabeling"] = eq_ok
    checks["UF_does_not_intertwine"] = neq_ok

    ok = all(checks.values())
    report = {
        "checks": {k: bool(v) for k, v in checks.items()},
        "phase_fix_c": [c.real, c.imag],
        "all_ok": ok,
    }
    if pretty:
        lines_out = [f"{'PASS' if v else 'FAIL'}  {k}" for k, v in checks.items()]
        lines_out.append(f"phase fix c = {c:.6f}, c^3 = {c ** 3:.6f}")
        lines_out.append("all checks passed" if ok else "SOME CHECKS FAILED")
        return "\n".join(lines_out), ok
    return json.dumps(report, indent=2), ok
