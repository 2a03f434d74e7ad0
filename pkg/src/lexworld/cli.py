"""Command-line front end.

Exit codes: 0 success, 1 mathematical failure (JSON verdict on stdout),
2 usage or parse error (message on stderr naming the offending token).
"""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import ceil, floor

from . import betas, entropy, renorm, sft
from .seq import EPSeq, NotAdmissible, ParseError, admissible, expand, parse_rat
from .words import (
    Ratio,
    Substitution,
    enumerate_balanced,
    sturmian_pair,
    substitute,
    try_decode,
)

CSV_HEADER = "a,b,tag,level,ratios,kappa,h_bits,dim,ie,ie_provenance"


class MathError(Exception):
    def __init__(self, payload: dict):
        super().__init__(payload.get("error", "error"))
        self.payload = payload


def _fmt(x) -> str:
    return "" if x is None else f"{x:.12g}"


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _seq(text: str) -> EPSeq:
    return EPSeq.parse(text)


def _pair_from_args(args) -> tuple[EPSeq, EPSeq, dict]:
    """(alpha, beta, extra) from --alpha/--beta or --a/--b."""
    if args.alpha is not None or args.beta is not None:
        if args.alpha is None or args.beta is None:
            raise ParseError("--alpha/--beta", "pair (both flags are required)")
        return _seq(args.alpha), _seq(args.beta), {}
    if args.a is not None and args.b is not None:
        hole = renorm.Hole(parse_rat(args.a), parse_rat(args.b))
        hp = renorm.hole_to_pair(hole)
        if hp is None:
            raise MathError({"error": "Unsupported", "hole_kind": hole.kind, "a": args.a, "b": args.b})
        return hp.alpha, hp.beta, {"hole_kind": hp.kind}
    raise ParseError("", "input (give --alpha/--beta or --a/--b)")


def _require(alpha: EPSeq, beta: EPSeq) -> None:
    verdict = admissible(alpha, beta)
    if not verdict:
        raise MathError(
            {
                "error": "NotAdmissible",
                "verdict": verdict.verdict,
                "reason": verdict.reason,
                "alpha": str(alpha),
                "beta": str(beta),
            }
        )


def cmd_classify(args) -> None:
    if args.alpha is None and args.a is not None and args.b is not None:
        c = renorm.classify(renorm.Hole(parse_rat(args.a), parse_rat(args.b)))
    else:
        alpha, beta, _ = _pair_from_args(args)
        c = renorm.classify((alpha, beta))
    _emit(c.to_dict())


def cmd_entropy(args) -> None:
    alpha, beta, extra = _pair_from_args(args)
    _require(alpha, beta)
    out = entropy.entropy_of(alpha, beta).to_dict()
    out.update(extra, alpha=str(alpha), beta=str(beta))
    _emit(out)


def _automaton(args):
    alpha, beta, _ = _pair_from_args(args)
    _require(alpha, beta)
    return alpha, beta, sft.oracle_automaton(alpha, beta)


def cmd_components(args) -> None:
    alpha, beta, aut = _automaton(args)
    if args.format == "edges":
        sys.stdout.write(aut.to_edge_list())
        return
    if args.format == "dot":
        sys.stdout.write(aut.to_dot())
        return
    reports = sft.components(aut)
    _emit(
        {
            "alpha": str(alpha),
            "beta": str(beta),
            "states": len(aut),
            "components": [r.to_dict() for r in reports],
            "ie": sft.ie_verdict(alpha, beta).to_dict(),
        }
    )


def cmd_measure(args) -> None:
    _, _, aut = _automaton(args)
    try:
        m = sft.parry_measure(aut, args.component)
    except sft.TrivialComponent as exc:
        raise MathError({"error": "TrivialComponent", "detail": str(exc)}) from None
    _emit(m.to_dict())


def cmd_balanced(args) -> None:
    r = Ratio.parse(args.r)
    xi, zeta = sturmian_pair(r)
    words = enumerate_balanced(r)
    _emit({"xi": xi, "zeta": zeta, "count": len(words), "words": words})


def _substitution(args) -> Substitution:
    if args.images:
        return Substitution.parse(args.images)
    if args.r:
        return Substitution.sturmian(Ratio.parse(args.r))
    raise ParseError("", "substitution (give --r or --images)")


def cmd_subst(args) -> None:
    s = _substitution(args)
    target = _seq(args.seq) if "(" in args.seq else args.seq
    if args.decode:
        out = try_decode(s, target)
        if out is None:
            raise MathError({"error": "DecodeError", "input": args.seq, "substitution": str(s)})
    else:
        out = substitute(s, target)
    _emit({"substitution": str(s), "input": args.seq, "output": str(out)})


def cmd_expand(args) -> None:
    if args.alpha is None and args.beta_value is None:
        if args.x is None:
            raise ParseError("", "input (give --x, --alpha or --beta-value)")
        x = parse_rat(args.x)
        _emit({"x": str(x), "binary": str(expand(x))})
        return
    if args.alpha is not None:
        base = _seq(args.alpha)
        beta_val = betas.beta_of(base)
    else:
        try:
            beta_val = float(args.beta_value)
        except ValueError:
            raise ParseError(args.beta_value, "real number") from None
        base = beta_val
    x = parse_rat(args.x) if args.x is not None else Fraction(1)
    try:
        greedy = betas.greedy_expansion(x, base, args.n)
        qg = betas.quasi_greedy_one(base)
    except (betas.DomainError, betas.BadLeadingSymbol) as exc:
        raise MathError({"error": type(exc).__name__, "detail": str(exc)}) from None
    _emit({"beta": beta_val, "x": str(x), "greedy": greedy, "quasi_greedy_one": str(qg)})


def _box(omega: str, nu: str, ratios: str | None) -> renorm.RenormBox:
    rs = tuple(Ratio.parse(t) for t in ratios.split(",")) if ratios else ()
    try:
        pair = renorm.AssocPair(omega, nu)
    except ValueError:
        raise MathError({"error": "NotAssociatedPair", "omega": omega, "nu": nu}) from None
    return renorm.RenormBox(pair, len(rs), rs)


def cmd_boxes(args) -> None:
    box = _box(args.omega, args.nu, args.ratios)
    out = {"box": box.to_dict(), "diameter": renorm.box_diameter(box), "diameter_sq": str(renorm.box_diameter_sq(box))}
    if args.alpha is not None:
        out["contains"] = renorm.box_contains(box, _seq(args.alpha), _seq(args.beta))
    if args.omega2 is not None:
        other = _box(args.omega2, args.nu2, args.ratios2)
        try:
            out["disjoint"] = renorm.boxes_disjoint(box, other)
        except renorm.StrataMismatch as exc:
            raise MathError({"error": "StrataMismatch", "detail": str(exc)}) from None
    _emit(out)


def grid(denominator: int, rect: tuple[Fraction, Fraction, Fraction, Fraction]) -> list[tuple[int, int]]:
    """Lattice points (i, j) with (i/D, j/D) strictly inside the rectangle, in (i, j) order."""
    a_lo, a_hi, b_lo, b_hi = rect
    d = denominator

    def inner(lo: Fraction, hi: Fraction) -> range:
        return range(floor(lo * d) + 1, ceil(hi * d))

    return [(i, j) for i in inner(a_lo, a_hi) for j in inner(b_lo, b_hi)]


def scan_cell(cell: tuple[int, int, int]) -> str:
    i, j, d = cell
    a, b = Fraction(i, d), Fraction(j, d)
    try:
        c = renorm.classify(renorm.Hole(a, b))
    except renorm.InfiniteRenormalisationSuspected:
        c = renorm.Classification("CodedLimit", ie="Unknown", ie_provenance="none")
    e = c.entropy
    fields = [
        str(a),
        str(b),
        c.tag,
        str(c.level),
        ";".join(str(r) for r in c.ratios),
        _fmt(None if e is None else e.kappa),
        _fmt(None if e is None else e.h_bits),
        _fmt(None if e is None else e.dim),
        c.ie,
        c.ie_provenance,
    ]
    return ",".join(fields)


def run_scan(denominator: int, rect, jobs: int = 1):
    """Yield CSV rows (without newline) in deterministic cell order."""
    cells = [(i, j, denominator) for i, j in grid(denominator, rect)]
    if jobs <= 1:
        yield from map(scan_cell, cells)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(scan_cell, cells, chunksize=max(1, len(cells) // (4 * jobs)))


def footer(rows: list[str]) -> str:
    tags = Counter(r.split(",")[2] for r in rows)
    ie = sum(1 for r in rows if r.split(",")[8] == "IntrinsicallyErgodic")
    frac = ie / len(rows) if rows else 0.0
    counts = " ".join(f"{t}={tags[t]}" for t in sorted(tags))
    return f"# rows={len(rows)} {counts} ie_fraction={frac:.12g}"


def cmd_scan(args) -> None:
    d = args.denominator
    if d < 4:
        raise ParseError(str(d), "denominator (need D >= 4)")
    rect = tuple(parse_rat(t) for t in args.rect.split(","))
    if len(rect) != 4:
        raise ParseError(args.rect, "rectangle (expected a_lo,a_hi,b_lo,b_hi)")
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    rows: list[str] = []
    try:
        out.write(CSV_HEADER + "\n")
        try:
            for row in run_scan(d, rect, args.jobs):
                rows.append(row)
                out.write(row + "\n")
        except KeyboardInterrupt:
            out.write(f"# TRUNCATED after {len(rows)} rows\n")
            out.flush()
            raise
        out.write(footer(rows) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lexworld", description="Lexicographic subshifts and doubling-map holes.")
    sub = p.add_subparsers(dest="command", required=True)

    def pair_flags(sp):
        sp.add_argument("--alpha", help="upper sequence, pre(per)")
        sp.add_argument("--beta", help="lower sequence, pre(per)")
        sp.add_argument("--a", help="left hole endpoint p/q")
        sp.add_argument("--b", help="right hole endpoint p/q")
        sp.add_argument("--json", action="store_true", help="JSON output (the default)")

    sp = sub.add_parser("classify", help="classify a pair or hole")
    pair_flags(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("entropy", help="kneading entropy and dimension")
    pair_flags(sp)
    sp.set_defaults(func=cmd_entropy)

    sp = sub.add_parser("components", help="transitive components of the automaton")
    pair_flags(sp)
    sp.add_argument("--format", choices=["json", "edges", "dot"], default="json")
    sp.set_defaults(func=cmd_components)

    sp = sub.add_parser("measure", help="maximal-entropy measure of one component")
    pair_flags(sp)
    sp.add_argument("--component", type=int, default=0)
    sp.set_defaults(func=cmd_measure)

    sp = sub.add_parser("balanced", help="cyclically balanced words of ratio p/q")
    sp.add_argument("--r", required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_balanced)

    sp = sub.add_parser("subst", help="apply or invert a substitution")
    sp.add_argument("--seq", required=True, help="word or pre(per) sequence")
    sp.add_argument("--r", help="Sturmian ratio p/q")
    sp.add_argument("--images", help="explicit images, 0->bits,1->bits")
    sp.add_argument("--decode", action="store_true")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_subst)

    sp = sub.add_parser("expand", help="binary or beta expansions")
    sp.add_argument("--x", help="rational to expand (default 1 for beta expansions)")
    sp.add_argument("--alpha", help="Parry sequence defining beta")
    sp.add_argument("--beta-value", help="beta as a real number")
    sp.add_argument("--n", type=int, default=16)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("boxes", help="renormalisation box membership, diameter, disjointness")
    sp.add_argument("--omega", required=True)
    sp.add_argument("--nu", required=True)
    sp.add_argument("--ratios", help="comma separated p/q list in application order")
    sp.add_argument("--alpha")
    sp.add_argument("--beta")
    sp.add_argument("--omega2")
    sp.add_argument("--nu2")
    sp.add_argument("--ratios2")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_boxes)

    sp = sub.add_parser("scan", help="classify a grid of centred holes, CSV output")
    sp.add_argument("--denominator", type=int, default=64)
    sp.add_argument("--rect", default="1/4,1/2,1/2,3/4", help="a_lo,a_hi,b_lo,b_hi")
    sp.add_argument("--out")
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_scan)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except ParseError as exc:
        print(f"lexworld: parse error at {exc.token!r}: {exc}", file=sys.stderr)
        return 2
    except MathError as exc:
        _emit(exc.payload)
        return 1
    except NotAdmissible as exc:
        _emit({"error": "NotAdmissible", "verdict": "Extremal", "reason": exc.reason})
        return 1
    except (renorm.EndpointOrder, ValueError) as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)})
        return 1
    except KeyboardInterrupt:
        return 130
    return 0


if __name__ == "__main__":
    sys.exit(main())
