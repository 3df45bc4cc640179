"""Command-line front door.

Subcommands: pattern, rank, match, essential, lemma2, dichotomy, selftest.
Exit codes: 0 success / all-copy, 2 witness branch present, 3 search failure
or missing copy, 1 usage or I/O error.
"""

import argparse
import json
import sys
import time
from fractions import Fraction

from . import jsonio
from ._backend import BACKEND
from .campaign import config_from_dict, run_campaign
from .dichotomy import pair_dichotomy, triple_dichotomy
from .errors import SimplexRamseyError
from .geometry import EssentialSimplex, eps_dense, in_boundary_nbhd, sample_complement
from .matching import essential_at_depth, find_copy_in_complement
from .patterns import (
    chain,
    grid_pattern,
    insert,
    make_pattern,
    oplus,
    pair_extend,
    validate_chain_stages,
)
from .plmaps import densify_from_grid, thin_from_witness
from .rank import BoxUnionSet, brute_force_rank, rank


def parse_pattern_literal(text):
    """Parse '{{0,1},{2,3}}' (or JSON block lists) into a Pattern."""
    text = text.strip()
    if text.startswith("["):
        blocks = [tuple(b) for b in json.loads(text)]
    else:
        inner = text.strip()
        if not (inner.startswith("{") and inner.endswith("}")):
            raise ValueError(f"cannot parse pattern literal: {text}")
        inner = inner[1:-1]
        blocks = []
        for part in inner.replace("},{", "}|{").split("|"):
            part = part.strip().lstrip("{").rstrip("}")
            if part:
                blocks.append(tuple(int(x) for x in part.split(",")))
    if not blocks:
        raise ValueError("empty pattern literal")
    arity = len(blocks[0])
    return make_pattern(arity, blocks)


def _read_json(path):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _emit(obj, output):
    text = jsonio.dumps(obj)
    if output and output != "-":
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _pattern_payload(P):
    payload = jsonio.enc_pattern(P)
    payload["provenance"] = [
        {"label": s.label, "component": jsonio.enc_pattern(s.component), "emb": list(s.emb)}
        for s in P.provenance
    ]
    return payload


def cmd_pattern(args):
    if args.op == "make":
        P = parse_pattern_literal(args.blocks)
    elif args.op == "grid":
        P = grid_pattern(args.width)
    elif args.op in ("lemma1-extend", "extend-pair"):
        P = pair_extend(parse_pattern_literal(args.p), args.k)
    elif args.op == "oplus":
        P = oplus(
            parse_pattern_literal(args.p), args.j1, args.j2, parse_pattern_literal(args.q), args.i
        )
    elif args.op == "insert":
        P = insert(parse_pattern_literal(args.p), args.j, parse_pattern_literal(args.q))
    elif args.op == "chain":
        base = parse_pattern_literal(args.base)
        P = chain(base, args.j, args.k, args.l)
        payload = _pattern_payload(P)
        payload["stage_map_validation"] = jsonio.sanitize(
            validate_chain_stages(P, base.size, args.j, args.k, args.l)
        )
        _emit(payload, args.output)
        return 0
    else:  # pragma: no cover - argparse guards
        raise ValueError(args.op)
    _emit(_pattern_payload(P), args.output)
    return 0


def cmd_rank(args):
    S = jsonio.dec_box_union(_read_json(args.input))
    report = rank(S, args.cap)
    payload = {"report": jsonio.enc_rank_report(report)}
    if args.oracle:
        oracle = brute_force_rank(S, args.cap)
        payload["oracle"] = oracle
        payload["agree"] = oracle == report.value
    _emit(payload, args.output)
    if args.oracle and not payload["agree"]:
        return 1
    return 0


def cmd_match(args):
    S = jsonio.dec_box_union(_read_json(args.input))
    P = parse_pattern_literal(args.pattern)
    D = EssentialSimplex(Fraction(args.a), Fraction(args.b), S.dim)
    copy = find_copy_in_complement(P, S, D, args.q)
    _emit({"copy": jsonio.enc_copy(copy) if copy else None}, args.output)
    return 0 if copy is not None else 3


def cmd_essential(args):
    S = jsonio.dec_box_union(_read_json(args.input))
    P = parse_pattern_literal(args.pattern)
    report = essential_at_depth(P, S, args.depth, Fraction(args.min_gap), args.q)
    _emit(jsonio.enc_essentiality(report), args.output)
    return 0 if report.all_found else 3


def cmd_lemma2(args):
    data = _read_json(args.input)
    n = data["n"]
    if args.mode == "densify":
        x = [Fraction(v) for v in data["x"]]
        y = [Fraction(v) for v in data["y"]]
        g = densify_from_grid(x, y, n)
        if "points" in data:
            pts = [jsonio.dec_point(p) for p in data["points"]]
        else:
            # one realized point per grid cell (i, j), i <= j: x below the
            # column's y-threshold, y inside the row band
            pts = [
                ((x[i] + y[i]) / 2, (y[j] + y[j + 1]) / 2)
                for i in range(n)
                for j in range(i, n)
            ]
        images = [g.apply_point(p) for p in pts]
        bound = Fraction(14143, 10000) * Fraction(4, 2 * n + 3)
        eps = bound * Fraction(10001, 10000)
        dense = eps_dense(images, eps)
        payload = {
            "homeo": jsonio.enc_homeo(g),
            "verification": {
                "eps": jsonio.enc_rational(eps),
                "dense": dense,
                "points": [jsonio.enc_point(p) for p in images],
            },
        }
        _emit(payload, args.output)
        return 0 if dense else 3
    # thin
    w = jsonio.dec_witness(data["witness"])
    f = thin_from_witness(w, n)
    if "set" in data:
        complement = jsonio.dec_box_union(data["set"])
    else:
        complement = BoxUnionSet(2, w.rectangles())
    D = EssentialSimplex(0, 1, 2)
    samples = sample_complement(complement, D, data.get("q", 3))
    eps = Fraction(4, 2 * n + 4)
    violations = [p for p in samples if not in_boundary_nbhd(f.apply_point(p), eps)]
    payload = {
        "homeo": jsonio.enc_homeo(f),
        "verification": {
            "eps": jsonio.enc_rational(eps),
            "samples": len(samples),
            "violations": len(violations),
        },
    }
    _emit(payload, args.output)
    return 0 if not violations else 3


def cmd_dichotomy(args):
    config = config_from_dict(_read_json(args.input))
    if args.seed is not None:
        config = config_from_dict({**_read_json(args.input), "seed": args.seed})
    t0 = time.time()
    report = run_campaign(config, jobs=args.jobs, oracle=args.oracle)
    wall = time.time() - t0
    _emit(report, args.output)
    print(f"campaign: {report['aggregate']} in {wall:.1f}s [{BACKEND} backend]", file=sys.stderr)
    if report["aggregate"]["failure"]:
        return 3
    if report["aggregate"]["witness"]:
        return 2
    return 0


def cmd_selftest(args):
    from .geometry import Box

    failures = []

    def check(name, ok):
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        if not ok:
            failures.append(name)

    P3 = make_pattern(3, [(0, 1, 2)])
    check("oplus splice", oplus(P3, 1, 2, P3, 2).blocks == ((0, 3, 5), (1, 2, 4)))
    check("pair extension", pair_extend(make_pattern(2, [(0, 1)]), 1).blocks == ((0, 2), (1, 3)))
    check("grid width 1", grid_pattern(1).blocks == ((0, 1),))
    ch = chain(P3, 1, 2, 3)
    check("chain size", ch.size == 9)
    S = BoxUnionSet(2, [Box([(0, Fraction(1, 2)), (Fraction(1, 2), 1)])])
    check("rank engine", rank(S, 4).value == 1)
    check("rank oracle", brute_force_rank(S, 4) == 1)
    D = EssentialSimplex(0, 1, 2)
    out = pair_dichotomy(BoxUnionSet(2, []), make_pattern(2, [(0, 2), (1, 3)]), D, 3)
    check("2d dichotomy copy", out.branch == "copy")
    out3 = triple_dichotomy(BoxUnionSet(3, []), EssentialSimplex(0, 1, 3), 1)
    check("3d dichotomy copy", out3.branch == "copy")
    f = thin_from_witness(
        jsonio.dec_witness(
            {"dim": 2, "x0": "1/8", "pairs": [["2/8", "3/8"]], "y_end": "7/8"}
        ),
        1,
    )
    check("thin comb", f(Fraction(1, 8)) == Fraction(1, 6))
    print(f"backend: {BACKEND}")
    return 0 if not failures else 1


def main(argv=None):
    parser = argparse.ArgumentParser(prog="simplex-ramsey", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_pat = sub.add_parser("pattern", help="pattern algebra calculator")
    pat_sub = p_pat.add_subparsers(dest="op", required=True)
    sp = pat_sub.add_parser("make")
    sp.add_argument("--blocks", required=True)
    sp = pat_sub.add_parser("grid")
    sp.add_argument("--width", type=int, required=True)
    sp = pat_sub.add_parser("lemma1-extend", aliases=["extend-pair"])
    sp.add_argument("--p", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp = pat_sub.add_parser("oplus")
    sp.add_argument("--p", required=True)
    sp.add_argument("--j1", type=int, required=True)
    sp.add_argument("--j2", type=int, required=True)
    sp.add_argument("--q", required=True)
    sp.add_argument("--i", type=int, required=True)
    sp = pat_sub.add_parser("insert")
    sp.add_argument("--p", required=True)
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--q", required=True)
    sp = pat_sub.add_parser("chain")
    sp.add_argument("--base", required=True)
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    for sp2 in pat_sub.choices.values():
        sp2.add_argument("--output", default=None)
    p_pat.set_defaults(func=cmd_pattern)

    p_rank = sub.add_parser("rank", help="rank of a box-union set")
    p_rank.add_argument("--input", required=True)
    p_rank.add_argument("--cap", type=int, default=4)
    p_rank.add_argument("--oracle", action="store_true")
    p_rank.add_argument("--output", default=None)
    p_rank.set_defaults(func=cmd_rank)

    p_match = sub.add_parser("match", help="copy search in a set complement")
    p_match.add_argument("--pattern", required=True)
    p_match.add_argument("--input", required=True)
    p_match.add_argument("--a", default="0")
    p_match.add_argument("--b", default="1")
    p_match.add_argument("--q", type=int, default=None)
    p_match.add_argument("--output", default=None)
    p_match.set_defaults(func=cmd_match)

    p_ess = sub.add_parser("essential", help="depth-bounded essentiality report")
    p_ess.add_argument("--pattern", required=True)
    p_ess.add_argument("--input", required=True)
    p_ess.add_argument("--depth", type=int, default=2)
    p_ess.add_argument("--min-gap", default="1/4")
    p_ess.add_argument("--q", type=int, default=None)
    p_ess.add_argument("--output", default=None)
    p_ess.set_defaults(func=cmd_essential)

    p_l2 = sub.add_parser("lemma2", help="boundary-map constructions")
    p_l2.add_argument("--mode", choices=("densify", "thin"), required=True)
    p_l2.add_argument("--input", required=True)
    p_l2.add_argument("--output", default=None)
    p_l2.set_defaults(func=cmd_lemma2)

    p_dich = sub.add_parser("dichotomy", help="seeded dichotomy campaign")
    p_dich.add_argument("--input", required=True)
    p_dich.add_argument("--output", default=None)
    p_dich.add_argument("--seed", type=int, default=None)
    p_dich.add_argument("--jobs", type=int, default=1)
    p_dich.add_argument("--oracle", action="store_true")
    p_dich.set_defaults(func=cmd_dichotomy)

    p_self = sub.add_parser("selftest", help="quick built-in battery")
    p_self.set_defaults(func=cmd_selftest)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError, SimplexRamseyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
