"""Command-line front end.

Subcommands: ``coeff`` computes the bracket coefficient of a Catalan state
by a chosen method, ``expand`` prints the middle-state expansion of a roof
state, and ``verify`` runs the built-in cross-validation suites.

Exit codes: 0 on success, 2 on input errors, 3 when cross-checked methods
or verification suites disagree.  JSON output carries a ``"v": 1`` field.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import finsets, kauffman, planar, plucking, theta
from .exact_arith import (
    LaurentPoly,
    is_unimodal,
    poly_json,
    poly_text,
    rf_text,
    spaced_coefficients,
)
from .finsets import EMPTY, FinSet
from .planar import BoundaryLine, Conn, K0, LiteralError, classify, conn_text, parse_conn

OK, INPUT_ERROR, MISMATCH = 0, 2, 3


def _read_literal(arg: str) -> str:
    return sys.stdin.read() if arg == "-" else arg


def _fail(code: int, message: str) -> SystemExit:
    print(message, file=sys.stderr)
    return SystemExit(code)


def _parse_state(text: str) -> Conn:
    try:
        return parse_conn(text)
    except LiteralError as exc:
        raise _fail(INPUT_ERROR, f"error: {exc}")


def _methods_for(c: Conn, m: int, n: int, requested: str) -> list[str]:
    if requested != "check":
        return [requested]
    methods = ["firstrow", "auto", "theta"]
    if m * n <= kauffman.max_cells():
        methods.insert(0, "brute")
    if not c.has_bottom_return() or not c.has_top_return():
        methods.append("plucking")
    return methods


def _run_method(c: Conn, m: int, n: int, method: str) -> LaurentPoly:
    if method == "brute":
        return kauffman.bracket_coeff(c, m, n)
    if method == "firstrow":
        return kauffman.coeff_first_row(c, m, n)
    if method == "plucking":
        if not c.has_bottom_return():
            return plucking.coeff_no_bottom_returns(c, m, n)
        if not c.has_top_return():
            return plucking.coeff_no_top_returns(c, m, n)
        raise _fail(
            INPUT_ERROR, "error: plucking needs a state without returns on one horizontal side"
        )
    if method in ("auto", "theta"):
        return theta.coeff_any(c, m, n, method=method)
    raise _fail(INPUT_ERROR, f"error: unknown method {method!r}")


def cmd_coeff(args: argparse.Namespace) -> int:
    c = _parse_state(_read_literal(args.state))
    m = args.m if args.m is not None else c.ht
    n = args.n if args.n is not None else c.n_t
    if c.n_t != n or c.n_b != n or c.ht != m:
        print(f"error: state has nt={c.n_t} nb={c.n_b} ht={c.ht}, not Cat({m},{n})", file=sys.stderr)
        return INPUT_ERROR
    if args.check:
        results = {name: _run_method(c, m, n, name) for name in _methods_for(c, m, n, "check")}
        values = set(results.values())
        agree = len(values) == 1
        value = next(iter(values))
        if args.json:
            print(json.dumps({
                "v": 1, "state": conn_text(c), "m": m, "n": n,
                "methods": sorted(results), "agree": agree,
                "coeff": poly_json(value) if agree else None,
                "text": poly_text(value) if agree else None,
            }))
        else:
            for name, val in results.items():
                print(f"{name}: {poly_text(val)}")
        if not agree:
            print("error: methods disagree", file=sys.stderr)
            return MISMATCH
        return OK
    try:
        value = _run_method(c, m, n, args.method)
    except kauffman.TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    if args.json:
        print(json.dumps({
            "v": 1, "state": conn_text(c), "m": m, "n": n,
            "method": args.method, "coeff": poly_json(value), "text": poly_text(value),
        }))
    else:
        print(poly_text(value))
    return OK


def cmd_expand(args: argparse.Namespace) -> int:
    c = _parse_state(_read_literal(args.state))
    if c.has_bottom_return():
        print("error: not a roof state (it has bottom returns)", file=sys.stderr)
        return INPUT_ERROR
    try:
        iset = FinSet.parse(args.finset)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    expansion = theta.theta_expand(c, iset)
    if args.json:
        print(json.dumps({
            "v": 1,
            "source": {"state": conn_text(c), "finset": list(iset)},
            "terms": [
                {
                    "coeff": {"num": poly_json(t.coeff.num), "den": poly_json(t.coeff.den)},
                    "state": conn_text(t.R),
                    "finset": list(t.I),
                }
                for t in expansion.terms
            ],
        }))
        return OK
    if expansion.is_zero():
        print("0")
        return OK
    for t in expansion.terms:
        print(f"{rf_text(t.coeff)} * Theta({conn_text(t.R)}, {t.I.text()})")
    return OK


# -- verification suites ---------------------------------------------------


def _grids(limit: int) -> list[tuple[int, int]]:
    """Sweep grids: both sides bounded by 6, cell count bounded by limit.

    Thin grids like 1 x 9 blow up the state count without adding coverage, so
    the sweeps stay on compact rectangles.
    """
    out = []
    for m in range(1, 7):
        for n in range(1, 7):
            if m * n <= limit:
                out.append((m, n))
    return out


def _suite_kauffman(limit: int):
    plus = kauffman.smooth(kauffman.KauffmanState(((1,),))).state
    minus = kauffman.smooth(kauffman.KauffmanState(((-1,),))).state
    fixture_ok = (
        kauffman.bracket_coeff(plus, 1, 1) == LaurentPoly.monomial(1)
        and kauffman.bracket_coeff(minus, 1, 1) == LaurentPoly.monomial(-1)
    )
    passed, failed = (1, 0) if fixture_ok else (0, 1)
    for m, n in _grids(limit):
        counts = kauffman.states_per_catalan(m, n)
        if sum(counts.values()) == 2 ** (m * n):
            passed += 1
        else:
            failed += 1
    return passed, failed


def _suite_oracle(limit: int):
    passed = failed = 0
    for m, n in _grids(limit):
        table = kauffman.coeff_table(m, n)
        for c in kauffman.enumerate_catalan(m, n):
            expect = table.get(c, LaurentPoly.zero())
            ok = kauffman.coeff_first_row(c, m, n) == expect
            ok = ok and theta.coeff_any(c, m, n) == expect
            if not c.has_bottom_return():
                ok = ok and plucking.coeff_no_bottom_returns(c, m, n) == expect
            ok = ok and (not expect.is_zero()) == planar.realizable(c, m, n)
            if ok:
                passed += 1
            else:
                failed += 1
    return passed, failed


def _suite_symmetry(limit: int):
    passed = failed = 0
    for m, n in _grids(min(limit, 9)):
        table = kauffman.coeff_table(m, n)
        for c in kauffman.enumerate_catalan(m, n):
            expect = table.get(c, LaurentPoly.zero())
            refl = table.get(planar.symmetry(c, "reflect"), LaurentPoly.zero())
            rot = table.get(planar.symmetry(c, "rotate"), LaurentPoly.zero())
            if refl == expect.invert_variable() and rot == expect:
                passed += 1
            else:
                failed += 1
    return passed, failed


def _suite_finsets(limit: int):
    passed = failed = 0
    bound = min(limit, 6)
    for n in range(0, bound + 1):
        for I in finsets.enumerate_Ln(n):
            ok = finsets.phi(finsets.phi_inv(I, n)) == I
            for J in finsets.enumerate_Ln(n):
                if finsets.preceq(J, I):
                    ok = ok and finsets.oplus(finsets.ominus(I, J), J) == I
            if ok:
                passed += 1
            else:
                failed += 1
    return passed, failed


def _suite_theta(limit: int):
    passed = failed = 0
    pinned = {
        (3, 1, ()): LaurentPoly([(-7, 1), (-3, 1), (1, 1)]),
        (3, 1, (1,)): LaurentPoly([(-5, 1), (-1, 1)]),
        (3, 1, (2,)): LaurentPoly([(-3, 1)]),
        (3, 2, ()): LaurentPoly([(-1, 1), (3, 1), (7, 1)]),
        (3, 2, (1,)): LaurentPoly([(3, 1)]),
        (3, 2, (2,)): LaurentPoly([(1, 1), (5, 1)]),
        (5, 1, ()): LaurentPoly([(-23, 1), (-19, 1), (-15, 1), (-11, 1), (-7, 1)]),
        (5, 1, (4,)): LaurentPoly([(-15, 1)]),
    }
    for (n, k, I), expect in pinned.items():
        if theta.z_coeff(n, k, FinSet(I)) == expect:
            passed += 1
        else:
            failed += 1
    for n in range(1, 4):
        for k in range(0, n + 1):
            expansion = theta.rnk_expansion(n, k)
            ok = all(not t.coeff.is_zero() for t in expansion.terms)
            ok = ok and all(
                theta.triangle_leq(expansion.source, theta.WPair(t.R, t.I))
                for t in expansion.terms
            )
            expected_terms = sum(
                1 for I in finsets.enumerate_Ln(n) if len(I) <= min(k, n - k)
            )
            ok = ok and len(expansion.terms) == expected_terms
            if ok:
                passed += 1
            else:
                failed += 1
    return passed, failed


def _suite_unimodal(args):
    if not args.state:
        print("unimodal suite needs --state", file=sys.stderr)
        return 0, 1
    c = _parse_state(_read_literal(args.state))
    m = args.m if args.m is not None else c.ht
    n = args.n if args.n is not None else c.n_t
    value = theta.coeff_any(c, m, n)
    if value.is_zero():
        print("coefficient: 0")
        return 1, 0
    seq = spaced_coefficients(value)
    verdict = "unimodal" if is_unimodal(seq) else "non-unimodal"
    print(f"coefficient: {poly_text(value)}")
    print(f"sequence: {','.join(str(x) for x in seq)} -> {verdict}")
    return 1, 0


SUITES = {
    "kauffman": _suite_kauffman,
    "finsets": _suite_finsets,
    "theta": _suite_theta,
    "oracle": _suite_oracle,
    "symmetry": _suite_symmetry,
}


def cmd_verify(args: argparse.Namespace) -> int:
    limit = args.max_cells
    names = args.suites.split(",") if args.suites else list(SUITES)
    report = {}
    any_failed = False
    for name in names:
        if name == "unimodal":
            passed, failed = _suite_unimodal(args)
        elif name in SUITES:
            passed, failed = SUITES[name](limit)
        else:
            print(f"error: unknown suite {name!r}", file=sys.stderr)
            return INPUT_ERROR
        report[name] = {"pass": passed, "fail": failed}
        any_failed = any_failed or failed
        if not args.json:
            print(f"{name}: {passed} passed, {failed} failed")
    if args.json:
        print(json.dumps({"v": 1, "suites": report, "ok": not any_failed}))
    return MISMATCH if any_failed else OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="catbracket")
    sub = parser.add_subparsers(dest="command", required=True)

    p_coeff = sub.add_parser("coeff", help="bracket coefficient of a Catalan state")
    p_coeff.add_argument("state", help="connection literal, or - for stdin")
    p_coeff.add_argument("--m", type=int, default=None)
    p_coeff.add_argument("--n", type=int, default=None)
    p_coeff.add_argument(
        "--method",
        choices=["brute", "firstrow", "plucking", "theta", "auto"],
        default="auto",
    )
    p_coeff.add_argument("--check", action="store_true", help="cross-check all applicable methods")
    p_coeff.add_argument("--json", action="store_true")
    p_coeff.set_defaults(func=cmd_coeff)

    p_expand = sub.add_parser("expand", help="middle-state expansion of a roof state")
    p_expand.add_argument("state", help="roof-state literal, or - for stdin")
    p_expand.add_argument("--finset", default="{}", help="index set literal, e.g. {1,3}")
    p_expand.add_argument("--json", action="store_true")
    p_expand.set_defaults(func=cmd_expand)

    p_verify = sub.add_parser("verify", help="run the cross-validation suites")
    p_verify.add_argument("--max-cells", type=int, default=12)
    p_verify.add_argument("--suites", default=None, help="comma-separated suite names")
    p_verify.add_argument("--m", type=int, default=None)
    p_verify.add_argument("--n", type=int, default=None)
    p_verify.add_argument("--state", default=None)
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
