"""JSON encoding/decoding for every wire type.

Rationals travel as reduced "p/q" strings; all container encodings are
plain dicts/lists so reports are stable and diffable.  Every encoder has a
decoder and round-trips exactly.
"""

import json
from fractions import Fraction

from .geometry import Box, BoxUnionSet, EssentialSimplex
from .matching import CopyAssignment, EssentialityReport
from .patterns import IndexMap, Pattern, make_pattern
from .plmaps import PLHomeo
from .rank import RankReport, RankWitness2D, RankWitness3D


def enc_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def dec_rational(s) -> Fraction:
    return Fraction(s)


def enc_point(p):
    return [enc_rational(x) for x in p]


def dec_point(lst):
    return tuple(dec_rational(x) for x in lst)


def enc_box(b: Box):
    return [[enc_rational(lo), enc_rational(hi)] for lo, hi in b.intervals]


def dec_box(lst) -> Box:
    return Box([(dec_rational(lo), dec_rational(hi)) for lo, hi in lst])


def enc_box_union(S: BoxUnionSet):
    return {"dim": S.dim, "boxes": [enc_box(b) for b in S.boxes]}


def dec_box_union(obj) -> BoxUnionSet:
    return BoxUnionSet(obj["dim"], [dec_box(b) for b in obj["boxes"]])


def enc_essential(D: EssentialSimplex):
    return {"a": enc_rational(D.a), "b": enc_rational(D.b), "dim": D.dim}


def dec_essential(obj) -> EssentialSimplex:
    return EssentialSimplex(dec_rational(obj["a"]), dec_rational(obj["b"]), obj["dim"])


def enc_pattern(P: Pattern):
    return {"arity": P.arity, "blocks": [list(b) for b in P.blocks]}


def dec_pattern(obj) -> Pattern:
    return make_pattern(obj["arity"], [tuple(b) for b in obj["blocks"]])


def enc_index_map(m: IndexMap):
    k = m.kind
    if k == "identity":
        return {"kind": "identity"}
    if k == "translate":
        return {"kind": "translate", "k": m.params[0]}
    if k in ("psi", "psi_inverse"):
        return {"kind": k, "k": m.params[0], "n": m.params[1]}
    if k == "phi_single":
        return {"kind": k, "j1": m.params[0], "l1": m.params[1]}
    if k == "phi":
        j1, l1, j2, l2 = m.params
        return {"kind": k, "j1": j1, "l1": l1, "j2": j2, "l2": l2}
    if k == "composition":
        return {"kind": k, "maps": [enc_index_map(x) for x in m.params]}
    raise ValueError(f"unknown kind {k}")


def dec_index_map(obj) -> IndexMap:
    from . import patterns as P

    k = obj["kind"]
    if k == "identity":
        return P.identity_map()
    if k == "translate":
        return P.translate_map(obj["k"])
    if k == "psi":
        return P.psi_map(obj["k"], obj["n"])
    if k == "psi_inverse":
        return P.psi_inverse_map(obj["k"], obj["n"])
    if k == "phi_single":
        return P.phi_single_map(obj["j1"], obj["l1"])
    if k == "phi":
        return P.phi_map(obj["j1"], obj["l1"], obj["j2"], obj["l2"])
    if k == "composition":
        return P.compose(*[dec_index_map(x) for x in obj["maps"]])
    raise ValueError(f"unknown kind {k}")


def enc_copy(c: CopyAssignment):
    return {"pattern": enc_pattern(c.pattern), "points": [enc_point(p) for p in c.points]}


def dec_copy(obj) -> CopyAssignment:
    return CopyAssignment(dec_pattern(obj["pattern"]), [dec_point(p) for p in obj["points"]])


def enc_witness(w):
    if isinstance(w, RankWitness2D):
        return {
            "dim": 2,
            "x0": enc_rational(w.x0),
            "pairs": [[enc_rational(x), enc_rational(y)] for x, y in w.pairs],
            "y_end": enc_rational(w.y_end),
        }
    if isinstance(w, RankWitness3D):
        return {
            "dim": 3,
            "bottom": enc_rational(w.bottom),
            "levels": [[enc_rational(v) for v in lvl] for lvl in w.levels],
            "top": enc_rational(w.top),
        }
    raise TypeError(f"not a witness: {w!r}")


def dec_witness(obj):
    if obj["dim"] == 2:
        return RankWitness2D(
            dec_rational(obj["x0"]),
            [(dec_rational(x), dec_rational(y)) for x, y in obj["pairs"]],
            dec_rational(obj["y_end"]),
        )
    return RankWitness3D(
        dec_rational(obj["bottom"]),
        [tuple(dec_rational(v) for v in lvl) for lvl in obj["levels"]],
        dec_rational(obj["top"]),
    )


def enc_rank_report(r: RankReport):
    return {
        "value": r.value,
        "capped": r.capped,
        "witness": enc_witness(r.witness) if r.witness is not None else None,
    }


def dec_rank_report(obj) -> RankReport:
    w = dec_witness(obj["witness"]) if obj["witness"] is not None else None
    return RankReport(obj["value"], w, obj["capped"])


def enc_homeo(g: PLHomeo):
    return {"breakpoints": [[enc_rational(t), enc_rational(v)] for t, v in g.breakpoints]}


def dec_homeo(obj) -> PLHomeo:
    return PLHomeo([(dec_rational(t), dec_rational(v)) for t, v in obj["breakpoints"]])


def sanitize(obj):
    """Make arbitrary trace structures JSON-clean (Fractions to 'p/q')."""
    if isinstance(obj, Fraction):
        return enc_rational(obj)
    if isinstance(obj, dict):
        return {str(k): sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [sanitize(v) for v in obj]
    return obj


def enc_essentiality(r: EssentialityReport):
    return {
        "pattern": enc_pattern(r.pattern),
        "depth": r.depth,
        "min_gap": enc_rational(r.min_gap),
        "all_found": r.all_found,
        "regions": [
            {
                "a": enc_rational(D.a),
                "b": enc_rational(D.b),
                "outcome": outcome,
                "copy": enc_copy(c) if c is not None else None,
            }
            for D, outcome, c in r.regions
        ],
    }


def enc_outcome(o):
    return {
        "branch": o.branch,
        "copy": enc_copy(o.copy) if o.copy is not None else None,
        "witness_set": enc_box_union(o.witness_set) if o.witness_set is not None else None,
        "witness": enc_witness(o.witness) if o.witness is not None else None,
        "trace": sanitize(o.trace),
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
