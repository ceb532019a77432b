"""Command-line surface.

Subcommands map onto the library one-to-one: `enumerate` (complete box
search), `construct` (closed-form families with audit trace), `fixed-l`
(complete solver at frozen off-diagonal), `bound` (boundedness
certificate), and thin wrappers `classify`, `residue`, `triples`,
`modcheck`. Output is machine-readable (json/csv/table), deterministic,
and uses the exit-code contract 0 = found, 1 = provably empty,
2 = usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import gcd

from . import constructors, enumerator, kmatrix, ntheory
from .kmatrix import ChargeVector, KMatrix, Solution, format_filling

# Integers beyond double precision are emitted as decimal strings so
# JSON consumers cannot silently lose digits.
_SAFE_INT = 2**53


def _jint(v: int):
    return str(v) if abs(v) > _SAFE_INT else v


def _solution_row(s: Solution) -> dict:
    m, n, l, det = s.as_tuple()
    return {"m": _jint(m), "n": _jint(n), "l": _jint(l), "det": _jint(det)}


def _parse_filling(text: str) -> Fraction:
    if "/" in text:
        p_str, q_str = text.split("/", 1)
        p, q = int(p_str), int(q_str)
        if gcd(p, q) > 1:
            nu = kmatrix.check_filling(Fraction(p, q))
            print(
                f"warning: {text} is not in lowest terms, using {format_filling(nu)}",
                file=sys.stderr,
            )
            return nu
    return kmatrix.parse_filling(text)


def _parse_charge(text: str) -> ChargeVector:
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"charge must be 't1,t2', got {text!r}")
    return ChargeVector(int(parts[0]), int(parts[1]))


def _parse_kmatrix(text: str) -> KMatrix:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"K-matrix must be 'm,n,l', got {text!r}")
    return KMatrix(int(parts[0]), int(parts[1]), int(parts[2]))


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _render_solutions(args, solutions: list[Solution], extra: dict | None = None) -> str:
    rows = [s.as_tuple() for s in solutions]
    if args.format == "csv":
        lines = ["m,n,l,det"] + [f"{m},{n},{l},{det}" for m, n, l, det in rows]
        return "\n".join(lines)
    if args.format == "table":
        widths = [max([len(h)] + [len(str(r[i])) for r in rows]) for i, h in
                  enumerate(("m", "n", "l", "det"))]
        lines = ["  ".join(h.rjust(w) for h, w in zip(("m", "n", "l", "det"), widths))]
        for r in rows:
            lines.append("  ".join(str(v).rjust(w) for v, w in zip(r, widths)))
        return "\n".join(lines)
    payload = {
        "nu": format_filling(args.nu),
        "t": [args.t.t1, args.t.t2],
        "solutions": [_solution_row(s) for s in solutions],
    }
    if extra:
        payload.update(extra)
    return json.dumps(payload, indent=2)


def _verify_all(solutions: list[Solution]) -> None:
    for s in solutions:
        if not kmatrix.verify_solution(s):
            raise ValueError(f"internal error: emitted solution {s} fails verification")


def cmd_enumerate(args) -> int:
    m_max = args.max_m if args.max_m is not None else args.max
    n_max = args.max_n if args.max_n is not None else args.max
    if m_max is None or n_max is None:
        raise ValueError("enumerate needs --max or both --max-m and --max-n")
    solutions = enumerator.enumerate_solutions(args.nu, args.t, m_max, n_max, args.workers)
    if args.fix_l is not None:
        solutions = [s for s in solutions if s.kmatrix.l == args.fix_l]
    if args.verify:
        _verify_all(solutions)
    _emit(_render_solutions(args, solutions), args.out)
    return 0 if solutions else 1


def _construct_solution(args) -> Solution:
    if args.bosonic:
        return constructors.bosonic_construct(
            args.nu, args.t, args.min_det, args.alpha, args.beta
        )
    if args.family == "t10":
        if (args.t.t1, args.t.t2) != (1, 0):
            raise ValueError("--family t10 requires --t 1,0")
        return constructors.construct_t10_exceeding(args.nu, args.min_det)
    if args.family == "t11":
        if (args.t.t1, args.t.t2) != (1, 1):
            raise ValueError("--family t11 requires --t 1,1")
        if args.t_index is not None:
            return constructors.construct_t11(args.nu, args.t_index)
        return constructors.construct_t11_exceeding(args.nu, args.min_det)
    return constructors.construct(args.nu, args.t, args.min_det, args.beta)


def cmd_construct(args) -> int:
    sol = _construct_solution(args)
    if sol.det <= args.min_det:
        raise ValueError(f"constructed det {sol.det} does not exceed {args.min_det}")
    if args.verify:
        _verify_all([sol])
    trace = sol.trace.present_fields() if sol.trace else {}
    extra = {"trace": {k: (_jint(v) if isinstance(v, int) else v) for k, v in trace.items()}}
    _emit(_render_solutions(args, [sol], extra), args.out)
    return 0


def cmd_fixed_l(args) -> int:
    outcome = enumerator.solve_fixed_l(args.nu, args.t, args.l)
    solutions = list(outcome.solutions)
    if args.verify:
        _verify_all(solutions)
    extra = {"outcome": outcome.kind.value}
    if outcome.family_description:
        extra["family"] = outcome.family_description
    _emit(_render_solutions(args, solutions, extra), args.out)
    return 1 if outcome.kind == enumerator.OutcomeKind.EMPTY else 0


def cmd_bound(args) -> int:
    cert = enumerator.max_filling_fixed_l(args.t, args.l)
    payload = {
        "t": [args.t.t1, args.t.t2],
        "l": args.l,
        "certified_bound": format_filling(cert.certified_upper_bound),
        "empirical_max": format_filling(cert.empirical_max),
        "scan_region": {"m_max": cert.scan_m_max, "n_max": cert.scan_n_max},
    }
    _emit(json.dumps(payload, indent=2), args.out)
    return 0


def cmd_classify(args) -> int:
    k = args.k
    payload = {
        "m": _jint(k.m),
        "n": _jint(k.n),
        "l": _jint(k.l),
        "det": _jint(kmatrix.determinant(k)),
        "valid": kmatrix.is_valid_state(k),
        "parity": kmatrix.parity_class(k).value,
    }
    _emit(json.dumps(payload, indent=2), args.out)
    return 0


def cmd_residue(args) -> int:
    witness = ntheory.quadratic_residue_witness(args.target, args.mod)
    try:
        legendre = ntheory.legendre_symbol(args.target, args.mod)
    except ValueError:
        legendre = None
    payload = {
        "target": _jint(args.target % args.mod),
        "modulus": _jint(args.mod),
        "witness": _jint(witness.h) if witness else None,
        "legendre": legendre,
    }
    _emit(json.dumps(payload, indent=2), args.out)
    return 0 if witness else 1


def cmd_triples(args) -> int:
    triple = ntheory.euclid_triple(args.m, args.n, args.k)
    payload = {
        "a": _jint(triple.a),
        "b": _jint(triple.b),
        "c": _jint(triple.c),
        "primitive": triple.is_primitive,
    }
    _emit(json.dumps(payload, indent=2), args.out)
    return 0


def cmd_modcheck(args) -> int:
    report = ntheory.mod_solvable(args.eq, args.mod)
    payload = {
        "equation": str(report.equation),
        "modulus": report.modulus,
        "solvable": report.solvable,
        "witness": list(report.witness) if report.witness else None,
    }
    _emit(json.dumps(payload, indent=2), args.out)
    return 0 if report.solvable else 1


def _add_common(sub, *, nu_t=True, fmt_default="json"):
    if nu_t:
        sub.add_argument("--nu", type=_parse_filling, required=True,
                         help="filling fraction, 'p/q' or a bare integer")
        sub.add_argument("--t", type=_parse_charge, required=True,
                         help="charge vector 't1,t2'")
    sub.add_argument("--format", choices=("json", "csv", "table"), default=fmt_default)
    sub.add_argument("--out", default=None, help="write output to a file instead of stdout")
    sub.add_argument("--verify", action="store_true",
                     help="re-verify every emitted solution")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="halperin",
        description="Exact bilayer quantum Hall K-matrix solver and enumerator.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("enumerate", help="all solutions inside an (m, n) box")
    _add_common(p, fmt_default="csv")
    p.add_argument("--max", type=int, default=None, help="bound for both m and n")
    p.add_argument("--max-m", type=int, default=None)
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--fix-l", type=int, default=None, help="only report solutions at this l")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_enumerate)

    p = subs.add_parser("construct", help="one verified solution from a closed-form family")
    _add_common(p)
    p.add_argument("--min-det", type=int, default=0)
    p.add_argument("--family", choices=("auto", "t10", "t11"), default="auto")
    p.add_argument("--bosonic", action="store_true", help="force all-even entries")
    p.add_argument("--alpha", type=int, default=2, help="even scale for --bosonic")
    p.add_argument("--beta", type=int, default=None)
    p.add_argument("--t-index", type=int, default=None, help="growth dial for --family t11")
    p.set_defaults(func=cmd_construct)

    p = subs.add_parser("fixed-l", help="complete solution set at a frozen off-diagonal l")
    _add_common(p)
    p.add_argument("--l", type=int, required=True)
    p.set_defaults(func=cmd_fixed_l)

    p = subs.add_parser("bound", help="certified filling bound at fixed l")
    p.add_argument("--t", type=_parse_charge, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bound)

    p = subs.add_parser("classify", help="determinant, validity and parity of a K-matrix")
    p.add_argument("--k", type=_parse_kmatrix, required=True, help="K-matrix 'm,n,l'")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_classify)

    p = subs.add_parser("residue", help="quadratic residue witness and Legendre symbol")
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_residue)

    p = subs.add_parser("triples", help="Pythagorean triple from the scaled Euclid formula")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(func=cmd_triples)
    p.add_argument("--out", default=None)

    p = subs.add_parser("modcheck", help="residue scan for a fixed Diophantine shape")
    p.add_argument("--eq", required=True, help='e.g. "3x^2+2=y^2" or "3x^2-7y^2-17z^2=0"')
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_modcheck)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except ValueError as exc:  # bad --nu/--t/--k values raised by the type= parsers
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
