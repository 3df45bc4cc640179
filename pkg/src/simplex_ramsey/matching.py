"""Copy search and verification: realizing patterns inside point sets.

A copy assigns a simplex point to each ordered block so that the merged
coordinate values realize exactly the pattern's index order (the induced
slot-to-value map is strictly increasing).  Searches are deterministic and
return the lexicographically least copy in block-encounter order.
"""

from . import _backend
from .errors import SearchBudgetExceeded
from .geometry import (
    EssentialSimplex,
    in_essential_simplex,
    in_simplex,
    sample_complement,
    strictly_increasing,
)
from .patterns import Pattern, ordered_blocks

DEFAULT_BUDGET = 2_000_000


class CopyAssignment:
    """Points assigned to a pattern's ordered blocks, in block order."""

    __slots__ = ("pattern", "points")

    def __init__(self, pattern: Pattern, points):
        points = tuple(tuple(p) for p in points)
        if len(points) != len(pattern.blocks):
            raise ValueError("one point per block required")
        self.pattern = pattern
        self.points = points

    def assignment(self):
        return dict(zip(self.pattern.blocks, self.points))

    def slot_values(self):
        """Value at each merged-order slot 0..N-1, or None if ill-defined."""
        vals = [None] * self.pattern.size
        for block, point in zip(self.pattern.blocks, self.points):
            for idx, coord in zip(block, point):
                vals[idx] = coord
        return vals

    def induced_values(self):
        vals = self.slot_values()
        if any(v is None for v in vals):
            raise ValueError("assignment does not cover all slots")
        return vals

    def __eq__(self, other):
        return (
            isinstance(other, CopyAssignment)
            and self.pattern == other.pattern
            and self.points == other.points
        )

    def __repr__(self):
        return f"CopyAssignment({self.pattern}, {list(self.points)})"


def verify_copy(c: CopyAssignment, D: EssentialSimplex, membership) -> bool:
    """Exact copy check: points in F ∩ D ∩ Δⁿ, all N values distinct and
    ordered like their slots (index order implies value order)."""
    if c.pattern.arity != D.dim:
        return False
    for p in c.points:
        if len(p) != D.dim or not in_simplex(p):
            return False
        if not in_essential_simplex(p, D):
            return False
        if not membership(p):
            return False
    vals = c.induced_values()
    return all(a < b for a, b in zip(vals, vals[1:]))


def _slot_arrays(P: Pattern):
    slot_block = [0] * P.size
    slot_pos = [0] * P.size
    for b, block in enumerate(P.blocks):
        for s, idx in enumerate(block):
            slot_block[idx] = b
            slot_pos[idx] = s
    return slot_block, slot_pos


def find_copy(P: Pattern, points, D: EssentialSimplex, budget=DEFAULT_BUDGET):
    """Deterministic backtracking copy search among the given points.

    Candidate points are filtered to D with strictly increasing coordinates
    (others can never appear in a copy), deduplicated and sorted; coordinate
    values are rank-compressed so the kernel works on integers.  Returns the
    lexicographically least copy or None; raises SearchBudgetExceeded.
    """
    if P.size == 0:
        return CopyAssignment(P, [])
    usable = sorted(
        {
            tuple(p)
            for p in points
            if len(p) == P.arity and strictly_increasing(p) and in_essential_simplex(p, D)
        }
    )
    if len(usable) < len(P.blocks):
        return None
    values = sorted({c for p in usable for c in p})
    rank = {v: i for i, v in enumerate(values)}
    ranked = [tuple(rank[c] for c in p) for p in usable]
    slot_block, slot_pos = _slot_arrays(P)
    status, assignment = _backend.search_copy(
        P.arity, len(P.blocks), slot_block, slot_pos, ranked, budget
    )
    if status == _backend.BUDGET:
        raise SearchBudgetExceeded(f"copy search for {P} exceeded {budget} nodes")
    if status != _backend.FOUND:
        return None
    copy = CopyAssignment(P, [usable[i] for i in assignment])
    assert verify_copy(copy, D, lambda p: True)
    return copy


def find_copy_in_complement(P, S, D, q=None, budget=DEFAULT_BUDGET):
    """Copy of P among sampled points of (Δⁿ ∖ S) ∩ D.

    q defaults to size(P); smaller q trades completeness for speed (any miss
    surfaces as an explicit None / CopySearchFailed upstream, never as a
    false certificate).  A returned copy re-verifies against the exact
    complement predicate.
    """
    if q is None:
        q = P.size
    pts = sample_complement(S, D, q)
    copy = find_copy(P, pts, D, budget)
    if copy is not None:
        assert verify_copy(copy, D, lambda p: not S.covers_point(p))
    return copy


def dyadic_regions(depth: int, min_gap, dim: int):
    """All D_{p/2^d, q/2^d} with q-p at least min_gap, in (p, q) order."""
    from fractions import Fraction

    denom = 2**depth
    min_gap = Fraction(min_gap)
    out = []
    for p in range(denom):
        for q in range(p + 1, denom + 1):
            if Fraction(q - p, denom) >= min_gap:
                out.append(EssentialSimplex(Fraction(p, denom), Fraction(q, denom), dim))
    return out


class EssentialityReport:
    __slots__ = ("pattern", "depth", "min_gap", "regions", "all_found")

    def __init__(self, pattern, depth, min_gap, regions):
        self.pattern = pattern
        self.depth = depth
        self.min_gap = min_gap
        self.regions = regions
        self.all_found = all(outcome == "copy" for _, outcome, _ in regions)

    def __repr__(self):
        found = sum(1 for _, o, _ in self.regions if o == "copy")
        return (
            f"EssentialityReport({self.pattern}, depth={self.depth}, "
            f"{found}/{len(self.regions)} regions, all_found={self.all_found})"
        )


def essential_at_depth(P, S, depth, min_gap, q=None, budget=DEFAULT_BUDGET):
    """Depth-bounded essentiality: copy search in every dyadic region.

    This truncates the 'for every a < b' quantifier to dyadic endpoints with
    a minimum gap; the report says exactly which regions produced copies and
    records budget misses per region instead of raising.
    """
    regions = []
    for D in dyadic_regions(depth, min_gap, S.dim):
        try:
            copy = find_copy_in_complement(P, S, D, q, budget)
            regions.append((D, "copy" if copy is not None else "none", copy))
        except SearchBudgetExceeded:
            regions.append((D, "budget", None))
    return EssentialityReport(P, depth, min_gap, regions)
