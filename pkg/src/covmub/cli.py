"""Command-line front-end.

Subcommands:

    field info           field parameters and tables summary
    multipliers enumerate / show
    generate             build a MUB bundle (quadrature system) and write JSON
    verify               re-check a bundle file
    classify             per-form counts, invariant sublists, class total
    torus                nonsplit torus report
    metaplectic          torus representation report
    probe-sl             phase-defect probe over all of SL(V)
    demo qubit           golden single-qubit walkthrough, machine-checked

Exit codes: 0 success, 2 invalid configuration, 3 construction failure,
4 verification failure.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .errors import CovMubError, FieldTooLargeError
from .multipliers import (
    characteristic_two_multiplier,
    enumerate_weyl_multipliers,
    invariant_multipliers,
    invariant_odd_multiplier,
    is_weyl_multiplier,
    torus_average,
)
from .phase_space import PhaseVector, SymplecticForm, lines
from .quadratures import (
    associated_multiplier,
    induced_symplectic_form,
    quadratures_from_weyl,
    verify_quadrature_axioms,
)
from .serialize import (
    dump,
    field_from_json,
    field_to_json,
    line_from_json,
    line_to_json,
    load,
    matrix_from_json,
    matrix_to_json,
    multiplier_from_json,
    multiplier_to_json,
    parse_field_descriptor,
    vector_from_json,
    vector_to_json,
)
from .symplectic import (
    covariance_residual,
    maximal_nonsplit_torus,
    metaplectic_operator,
    ordinary_phase_fix,
    sl_enumerate,
    sl_extension_probe,
    torus_orbits_on_directions,
)
from .weyl import weyl_system_from_multiplier

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CONSTRUCTION = 3
EXIT_VERIFY = 4

DEFAULT_SEED = 20240901


class ConfigError(Exception):
    pass


def _field_from_args(args):
    try:
        return parse_field_descriptor(args.field, getattr(args, "poly", None))
    except CovMubError as exc:
        raise ConfigError(str(exc))


def _form_from_args(spec, args):
    text = getattr(args, "lam", None)
    if text is None:
        return SymplecticForm(spec.one)
    try:
        coeffs = [int(c) for c in text.split(",")]
        el = spec.element(coeffs if len(coeffs) > 1 else coeffs[0])
    except (ValueError, CovMubError) as exc:
        raise ConfigError(f"bad --lambda value {text!r}: {exc}")
    if el.is_zero:
        raise ConfigError("--lambda must be nonzero")
    return SymplecticForm(el)


def _origin_from_args(spec, args):
    text = getattr(args, "origin", None)
    if text is None:
        return PhaseVector(spec.zero, spec.zero)
    try:
        a, b = text.split(",")
        return PhaseVector(spec.element(int(a)), spec.element(int(b)))
    except (ValueError, CovMubError) as exc:
        raise ConfigError(f"bad --origin value {text!r}: {exc}")


def _multiplier_from_selector(spec, S, selector):
    """Selector: 'inv' (odd p), 'selfdual' (p = 2), 'base', 'tavg' (torus
    average of the base, p = 2), a decimal enumeration index, or a path to a
    multiplier JSON file."""
    if selector is None:
        selector = "base"
    if selector == "inv":
        if spec.p == 2:
            raise ConfigError("the 'inv' multiplier needs odd characteristic")
        return invariant_odd_multiplier(spec, S)
    if selector == "selfdual":
        if spec.p != 2:
            raise ConfigError("the 'selfdual' multiplier needs p = 2")
        return characteristic_two_multiplier(spec, S)
    if selector == "base":
        if spec.p == 2:
            return characteristic_two_multiplier(spec, S)
        return invariant_odd_multiplier(spec, S)
    if selector == "tavg":
        if spec.p != 2:
            raise ConfigError("torus averaging needs p = 2")
        torus = maximal_nonsplit_torus(spec)
        return torus_average(characteristic_two_multiplier(spec, S), torus.elements)
    if selector.isdigit():
        k = int(selector)
        table = enumerate_weyl_multipliers(spec, S)
        if not 0 <= k < len(table):
            raise ConfigError(f"multiplier index {k} out of range 0..{len(table) - 1}")
        return table[k]
    try:
        m = multiplier_from_json(load(selector))
    except FileNotFoundError:
        raise ConfigError(f"no such multiplier selector or file: {selector!r}")
    if m.spec != spec:
        raise ConfigError("multiplier file is for a different field")
    return m


def _emit(args, obj):
    text = dump(obj, getattr(args, "out", None), pretty=getattr(args, "pretty", False))
    if text is not None:
        print(text)


# ---------------------------------------------------------------------------


def cmd_field_info(args):
    spec = _field_from_args(args)
    report = {
        "field": field_to_json(spec),
        "q": spec.q,
        "generator": list(spec._coeffs[spec.generator_index]),
        "trace": [int(t) for t in spec.trace_table],
        "version": __version__,
    }
    _emit(args, report)
    return EXIT_OK


def cmd_multipliers_enumerate(args):
    spec = _field_from_args(args)
    S = _form_from_args(spec, args)
    try:
        tables = enumerate_weyl_multipliers(spec, S)
    except FieldTooLargeError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CONSTRUCTION
    report = {
        "field": field_to_json(spec),
        "lambda": vector_to_json(PhaseVector(S.lam, spec.zero))[0],
        "count": len(tables),
        "multipliers": [multiplier_to_json(m) for m in tables],
        "version": __version__,
    }
    _emit(args, report)
    return EXIT_OK


def cmd_multipliers_show(args):
    spec = _field_from_args(args)
    S = _form_from_args(spec, args)
    m = _multiplier_from_selector(spec, S, args.multiplier)
    _emit(args, {"multiplier": multiplier_to_json(m), "version": __version__})
    return EXIT_OK


def cmd_generate(args):
    spec = _field_from_args(args)
    S = _form_from_args(spec, args)
    o = _origin_from_args(spec, args)
    m = _multiplier_from_selector(spec, S, args.multiplier)
    if not is_weyl_multiplier(m, S):
        print("selected table is not a Weyl multiplier for the form", file=sys.stderr)
        return EXIT_CONSTRUCTION
    try:
        W = weyl_system_from_multiplier(m)
        Q = quadratures_from_weyl(W, o)
    except CovMubError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    report = verify_quadrature_axioms(Q, tol=args.tol)
    if not report.all_ok:
        print("generated system fails the quadrature axioms", file=sys.stderr)
        return EXIT_VERIFY
    bundle = {
        "version": __version__,
        "seed": args.seed,
        "field": field_to_json(spec),
        "lambda": vector_to_json(PhaseVector(S.lam, spec.zero))[0],
        "origin": vector_to_json(o),
        "multiplier": multiplier_to_json(m),
        "projections": [
            {"line": line_to_json(l), "matrix": matrix_to_json(Q.proj[l])}
            for l in Q.lines
        ],
    }
    _emit(args, bundle)
    return EXIT_OK


def cmd_verify(args):
    try:
        bundle = load(args.infile)
        spec = field_from_json(bundle["field"])
        S = SymplecticForm(spec.element(bundle["lambda"]))
        m = multiplier_from_json(bundle["multiplier"])
        proj = {}
        for entry in bundle["projections"]:
            proj[line_from_json(spec, entry["line"])] = matrix_from_json(entry["matrix"])
        o = vector_from_json(spec, bundle["origin"])
    except (KeyError, ValueError, TypeError, CovMubError) as exc:
        print(f"malformed bundle: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    from .quadratures import QuadratureSystem

    expected = set(lines(spec))
    if set(proj) != expected or len(bundle["projections"]) != len(expected):
        print("bundle does not cover the affine lines exactly once", file=sys.stderr)
        return EXIT_VERIFY
    Q = QuadratureSystem(spec, proj, o)
    report = verify_quadrature_axioms(Q, tol=args.tol)
    if not report.all_ok:
        print("bundle fails the quadrature axioms", file=sys.stderr)
        return EXIT_VERIFY
    try:
        S_found = induced_symplectic_form(Q)
        m_found = associated_multiplier(Q, S_found)
    except CovMubError as exc:
        print(f"bundle is not covariant: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    if S_found != S or m_found != m:
        print("bundle metadata does not match its projections", file=sys.stderr)
        return EXIT_VERIFY
    print("ok: bundle verified")
    return EXIT_OK


def cmd_classify(args):
    spec = _field_from_args(args)
    if spec.q > 5:
        print("classification is limited to q <= 5", file=sys.stderr)
        return EXIT_CONSTRUCTION
    S1 = SymplecticForm(spec.one)
    tables = enumerate_weyl_multipliers(spec, S1)
    sl = sl_enumerate(spec)
    sl_inv = invariant_multipliers(spec, S1, sl)
    torus = maximal_nonsplit_torus(spec)
    t_inv = invariant_multipliers(spec, S1, torus.elements)
    per_form = len(tables)
    if spec.q <= 3:
        # full pairing: construct every system, key it by (form, multiplier)
        classes = set()
        for lam in spec.nonzero_elements():
            S = SymplecticForm(lam)
            for m in enumerate_weyl_multipliers(spec, S):
                Q = quadratures_from_weyl(weyl_system_from_multiplier(m))
                Sf = induced_symplectic_form(Q)
                mf = associated_multiplier(Q, Sf)
                classes.add((Sf.lam.index, mf.table.tobytes()))
        total = len(classes)
        method = "constructed"
    else:
        total = (spec.q - 1) * per_form
        method = "count"
    report = {
        "field": field_to_json(spec),
        "per_form": per_form,
        "sl_invariant": len(sl_inv),
        "torus_invariant": len(t_inv),
        "total": total,
        "method": method,
        "version": __version__,
    }
    _emit(args, report)
    return EXIT_OK


def cmd_torus(args):
    spec = _field_from_args(args)
    torus = maximal_nonsplit_torus(spec)
    orbits = torus_orbits_on_directions(torus, spec)
    g = torus.generator
    report = {
        "field": field_to_json(spec),
        "generator": [vector_to_json(PhaseVector(g.a, g.b)), vector_to_json(PhaseVector(g.c, g.d))],
        "order": torus.order,
        "orbits": [[vector_to_json(d.rep) for d in orbit] for orbit in orbits],
        "version": __version__,
    }
    _emit(args, report)
    return EXIT_OK


def cmd_metaplectic(args):
    spec = _field_from_args(args)
    S = _form_from_args(spec, args)
    m = _multiplier_from_selector(spec, S, args.multiplier)
    torus = maximal_nonsplit_torus(spec)
    try:
        W = weyl_system_from_multiplier(m)
        raw = metaplectic_operator(torus.generator, W)
        ops, c = ordinary_phase_fix(torus, raw)
    except CovMubError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    worst = max(
        covariance_residual(
            type(raw)(A, ops[A], complex(1.0)), W
        )
        for A in torus.elements
    )
    if worst > args.tol:
        print(f"covariance residual {worst:.3e} above tolerance", file=sys.stderr)
        return EXIT_VERIFY
    report = {
        "field": field_to_json(spec),
        "order": torus.order,
        "phase_fix_c": [c.real, c.imag],
        "max_covariance_residual": worst,
        "operators": [
            {
                "A": [
                    vector_to_json(PhaseVector(A.a, A.b)),
                    vector_to_json(PhaseVector(A.c, A.d)),
                ],
                "matrix": matrix_to_json(ops[A]),
            }
            for A in torus.elements
        ],
        "version": __version__,
        "seed": args.seed,
    }
    _emit(args, report)
    return EXIT_OK


def cmd_probe_sl(args):
    spec = _field_from_args(args)
    S = _form_from_args(spec, args)
    m = _multiplier_from_selector(spec, S, args.multiplier)
    try:
        W = weyl_system_from_multiplier(m)
        report = sl_extension_probe(spec, W)
    except CovMubError as exc:
        print(f"construction failed: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    worst = max(report.defects.values()) if report.defects else 0
    out = {
        "field": field_to_json(spec),
        "group_order": len(report.operators),
        "defect_free": report.defect_free,
        "max_defect_exponent": worst,
        "nonzero_defect_pairs": sum(1 for v in report.defects.values() if v),
        "version": __version__,
    }
    _emit(args, out)
    return EXIT_OK


def cmd_demo_qubit(args):
    from .demo import run_qubit_demo

    report, ok = run_qubit_demo(pretty=args.pretty)
    print(report)
    return EXIT_OK if ok else EXIT_VERIFY


# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="mub", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, field=True, form=True, multiplier=False, origin=False):
        if field:
            p.add_argument("--field", required=True, help="field descriptor p or p^r")
            p.add_argument("--poly", help="modulus c0,c1,...,cr")
        if form:
            p.add_argument("--lambda", dest="lam", help="form scale (default 1)")
        if multiplier:
            p.add_argument(
                "--multiplier",
                help="inv | selfdual | base | tavg | enumeration index | file",
            )
        if origin:
            p.add_argument("--origin", help="origin point 'a,b'")
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--pretty", action="store_true")

    p_field = sub.add_parser("field", help="field utilities")
    sub_field = p_field.add_subparsers(dest="subcommand", required=True)
    p_info = sub_field.add_parser("info")
    common(p_info, form=False)
    p_info.set_defaults(func=cmd_field_info)

    p_mult = sub.add_parser("multipliers", help="multiplier utilities")
    sub_mult = p_mult.add_subparsers(dest="subcommand", required=True)
    p_enum = sub_mult.add_parser("enumerate")
    common(p_enum)
    p_enum.set_defaults(func=cmd_multipliers_enumerate)
    p_show = sub_mult.add_parser("show")
    common(p_show, multiplier=True)
    p_show.set_defaults(func=cmd_multipliers_show)

    p_gen = sub.add_parser("generate", help="build and write a MUB bundle")
    common(p_gen, multiplier=True, origin=True)
    p_gen.set_defaults(func=cmd_generate)

    p_ver = sub.add_parser("verify", help="verify a MUB bundle file")
    p_ver.add_argument("infile")
    p_ver.add_argument("--tol", type=float, default=1e-9)
    p_ver.add_argument("--pretty", action="store_true")
    p_ver.set_defaults(func=cmd_verify)

    p_cls = sub.add_parser("classify")
    common(p_cls, form=False)
    p_cls.set_defaults(func=cmd_classify)

    p_tor = sub.add_parser("torus")
    common(p_tor, form=False)
    p_tor.set_defaults(func=cmd_torus)

    p_met = sub.add_parser("metaplectic")
    common(p_met, multiplier=True)
    p_met.set_defaults(func=cmd_metaplectic)

    p_probe = sub.add_parser("probe-sl")
    common(p_probe, multiplier=True)
    p_probe.set_defaults(func=cmd_probe_sl)

    p_demo = sub.add_parser("demo")
    sub_demo = p_demo.add_subparsers(dest="subcommand", required=True)
    p_qubit = sub_demo.add_parser("qubit")
    p_qubit.add_argument("--pretty", action="store_true")
    p_qubit.set_defaults(func=cmd_demo_qubit)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FieldTooLargeError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CONSTRUCTION
    except CovMubError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION


if __name__ == "__main__":
    sys.exit(main())
