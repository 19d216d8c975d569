"""Batch command-line front end.

Subcommands:

* ``nf``      normal form of an expression (small or divided alphabet),
* ``gb``      basis listing with completeness and reducedness certificates,
* ``verify``  relation suite, dimension count and coefficient checks,
* ``anick``   chain sets, differentials and exactness certificates,
* ``minimal`` the surgered complex: smallness, exactness at the corrected
              step, and extension-group dimensions.

All configuration comes from flags (no environment variables); listings are
sorted so output is reproducible byte for byte.  Exit status is 0 exactly
when every requested check passes.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .free_algebra import (
    FreeAlgebraError,
    QQ,
    format_poly,
    is_prime,
    parse_poly,
)
from .kostant import (
    Window,
    big_rewrite_system,
    dimension_check,
    relation_suite,
    small_groebner_basis,
)
from .anick import AnickComplex
from .minimal import MinimalResolution, coefficient_lemma_checks


class UsageError(Exception):
    pass


def _window(args) -> Window:
    if not is_prime(args.p):
        raise UsageError(f"--p must be prime, got {args.p}")
    if args.j >= args.m:
        raise UsageError(f"--j must be below --m, got j={args.j} m={args.m}")
    return Window(args.p, args.j, args.m)


def _emit(payload: dict, text: str, args) -> None:
    if args.json:
        rendered = json.dumps(payload, indent=2, sort_keys=True)
        if args.json == "-":
            print(rendered)
        else:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(rendered + "\n")
            print(f"wrote {args.json}")
    if text and args.json != "-":
        print(text)


def cmd_nf(args) -> int:
    win = _window(args)
    field = QQ if args.char0 else win.field
    poly = parse_poly(args.expression, field, prime=win.p)
    kinds = {g.kind for w in poly.terms for g in w}
    small = kinds & {"a", "b"}
    divided = kinds & {"ea", "eab", "eb"}
    if small and divided:
        raise UsageError("expression mixes small and divided generators")
    if small or not divided:
        if args.char0:
            raise UsageError("the window basis needs characteristic p")
        system = small_groebner_basis(win)
    else:
        bound = args.bound if args.bound else win.p**win.m - 1
        system = big_rewrite_system(field, bound, truncated=not args.char0)
    result = system.normal_form(poly)
    rendered = format_poly(result, system.order)
    _emit({"input": args.expression, "normal_form": rendered}, rendered, args)
    return 0


def cmd_gb(args) -> int:
    win = _window(args)
    if args.big:
        bound = args.bound if args.bound else win.p**win.m - 1
        system = big_rewrite_system(win.field, bound, truncated=True)
    else:
        system = small_groebner_basis(win)
    cert = system.is_complete()
    reduced = system.is_reduced()
    rules = [{"lhs": str(r.lhs), "rhs": format_poly(r.rhs, system.order)}
             for r in system.rules]
    payload = {
        "rule_count": len(system.rules),
        "rules": rules,
        "reduced": reduced,
        **cert.to_json(),
    }
    lines = [f"{r['lhs']} -> {r['rhs']}" for r in rules]
    lines.append(f"rules: {len(rules)}  complete: {cert.complete}  "
                 f"pairs: {cert.pair_count}  reduced: {reduced}")
    _emit(payload, "\n".join(lines), args)
    return 0 if cert.complete and reduced else 1


def cmd_verify(args) -> int:
    win = _window(args)
    relations = relation_suite(win)
    dims = dimension_check(win)
    lemmas = coefficient_lemma_checks(win)
    dim_ok = (dims["expected"] == dims["basis_count"]
              == dims["irreducible_count"])
    ok = all(c.ok for c in relations) and dim_ok and all(c.ok for c in lemmas)
    payload = {
        "relations": [c.to_json() for c in relations],
        "dimension": {**dims, "ok": dim_ok},
        "coefficient_lemmas": [c.to_json() for c in lemmas],
        "ok": ok,
    }
    lines = []
    for c in relations:
        lines.append(f"{'pass' if c.ok else 'FAIL'}  {c.name}")
    lines.append(f"{'pass' if dim_ok else 'FAIL'}  dimension "
                 f"{dims['irreducible_count']} (expected {dims['expected']})")
    for c in lemmas:
        lines.append(f"{'pass' if c.ok else 'FAIL'}  {c.name} = {c.actual}")
    lines.append("all checks pass" if ok else "FAILURES PRESENT")
    _emit(payload, "\n".join(lines), args)
    return 0 if ok else 1


def cmd_anick(args) -> int:
    win = _window(args)
    cx = AnickComplex(small_groebner_basis(win))
    bound = args.max_deg
    complex_report = cx.complex_check(bound)
    exactness = cx.exactness_check(bound)
    matrices = {}
    for level in (1, 2):
        matrices[f"d{level}"] = [
            cx.matrix(level, degree).to_json()
            for degree in cx.relevant_degrees(bound)
        ]
    ok = complex_report["ok"] and all(r.ok for r in exactness)
    payload = {
        "t1": [list(c.word.tokens) for c in cx.t1],
        "t2": [list(c.word.tokens) for c in cx.t2],
        "degree_tables": {
            str(level): {str(c.word): [c.degree.alpha, c.degree.beta]
                         for c in cx.chains(level)}
            for level in (0, 1, 2)
        },
        "matches_W": [[str(u.word), str(w.word)] for u, w in cx.matches_w()],
        **matrices,
        "complex_check": complex_report,
        "exactness": [r.to_json() for r in exactness],
        "ok": ok,
    }
    lines = [
        f"T1 ({len(cx.t1)}): " + ", ".join(str(c.word) for c in cx.t1),
        f"T2 ({len(cx.t2)}): " + ", ".join(str(c.word) for c in cx.t2),
        f"matches_W: {len(cx.matches_w())} pairs",
        f"complex identities: {'pass' if complex_report['ok'] else 'FAIL'}",
        f"exactness (Deg <= {bound}): "
        f"{'pass' if all(r.ok for r in exactness) else 'FAIL'} "
        f"in {len(exactness)} degrees",
    ]
    _emit(payload, "\n".join(lines), args)
    return 0 if ok else 1


def cmd_minimal(args) -> int:
    win = _window(args)
    resolution = MinimalResolution(win, args.max_deg)
    report = resolution.report()
    payload = report.to_json()
    payload["t1_prime"] = [list(c.word.tokens) for c in resolution.t1_prime]
    payload["t2_prime"] = [list(c.word.tokens) for c in resolution.t2_prime]
    payload["d2_prime"] = [m.to_json() for m in resolution.d2_prime_matrices()]
    lines = [
        f"T1' ({len(resolution.t1_prime)}): "
        + ", ".join(str(c.word) for c in resolution.t1_prime),
        f"T2' ({len(resolution.t2_prime)}): "
        + ", ".join(str(c.word) for c in resolution.t2_prime),
        "smallness: " + ", ".join(
            f"{k}={'pass' if v else 'FAIL'}"
            for k, v in report.smallness.items()),
        f"d1'.d2' = 0: {'pass' if report.d1_after_d2_zero else 'FAIL'}",
        f"exact at P1' (Deg <= {args.max_deg}): "
        f"{'pass' if all(r.ok for r in report.exactness_at_p1_prime) else 'FAIL'}",
        "ext dims: " + json.dumps(report.ext_dims, sort_keys=True),
    ]
    _emit(payload, "\n".join(lines), args)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="u3plus",
        description="Exact rewriting, resolution and verification engine "
                    "for the divided-power enveloping algebra of strictly "
                    "upper-triangular 3x3 matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, max_deg=False):
        p.add_argument("--p", type=int, required=True, help="prime")
        p.add_argument("--m", type=int, required=True,
                       help="window size (indices j..m-1)")
        p.add_argument("--j", type=int, default=0, help="window start")
        p.add_argument("--json", metavar="PATH",
                       help="write a JSON report (- for stdout)")
        if max_deg:
            p.add_argument("--max-deg", type=int, default=8,
                           help="total-weight bound for graded checks")

    p_nf = sub.add_parser("nf", help="normal form of an expression")
    common(p_nf)
    p_nf.add_argument("--char0", action="store_true",
                      help="characteristic-zero coefficients "
                           "(divided alphabet only)")
    p_nf.add_argument("--bound", type=int, default=0,
                      help="divided-power bound for the big system")
    p_nf.add_argument("expression")
    p_nf.set_defaults(func=cmd_nf)

    p_gb = sub.add_parser("gb", help="basis listing and certificates")
    common(p_gb)
    p_gb.add_argument("--big", action="store_true",
                      help="the truncated divided-power system")
    p_gb.add_argument("--bound", type=int, default=0,
                      help="divided-power bound (default p^m - 1)")
    p_gb.set_defaults(func=cmd_gb)

    p_verify = sub.add_parser("verify", help="relation and dimension suite")
    common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_anick = sub.add_parser("anick", help="resolution chains and exactness")
    common(p_anick, max_deg=True)
    p_anick.set_defaults(func=cmd_anick)

    p_minimal = sub.add_parser("minimal", help="minimal-resolution surgery")
    common(p_minimal, max_deg=True)
    p_minimal.set_defaults(func=cmd_minimal)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FreeAlgebraError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
