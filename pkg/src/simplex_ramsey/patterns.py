"""Pattern calculus: partitions of [N] into arity-n blocks and index maps.

A pattern encodes the abstract order type of a finite point set in the
simplex: block {a, b} says one point's coordinates occupy slots a and b of
the merged coordinate order.  Constructions (pair extension, oplus splicing,
chains, grids) are tracked with provenance: for every stage of a composite
pattern we record the order-embedding of the component into the result, and
these recorded embeddings are authoritative wherever closed-form index
formulas exist as well.
"""

from collections import namedtuple
from itertools import permutations

from .errors import (
    BlockSizeError,
    CoverageError,
    DomainError,
    NegativeShiftError,
    OverlapError,
    SearchBudgetExceeded,
)

Stage = namedtuple("Stage", ["label", "component", "emb"])


class Pattern:
    __slots__ = ("arity", "size", "blocks", "provenance")

    def __init__(self, arity, blocks, provenance=()):
        self.arity = arity
        self.blocks = blocks
        self.size = arity * len(blocks)
        self.provenance = provenance

    def __eq__(self, other):
        return (
            isinstance(other, Pattern)
            and self.arity == other.arity
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.arity, self.blocks))

    def __repr__(self):
        body = ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return "{" + body + "}" if body else "{}"


def make_pattern(arity, blocks, provenance=None) -> Pattern:
    """Validate and canonicalize a block family into a Pattern.

    Blocks must be pairwise disjoint arity-sized sets covering {0..N-1};
    they are stored sorted, ordered by first element.
    """
    if arity not in (2, 3):
        raise BlockSizeError(f"arity must be 2 or 3, got {arity}")
    canon = []
    for b in blocks:
        tb = tuple(sorted(b))
        if len(tb) != arity or len(set(tb)) != arity:
            raise BlockSizeError(f"block {b} does not have {arity} distinct elements")
        canon.append(tb)
    canon.sort()
    seen = set()
    for b in canon:
        for x in b:
            if x in seen:
                raise OverlapError(f"index {x} appears in two blocks")
            seen.add(x)
    n_total = arity * len(canon)
    if seen and (min(seen) != 0 or max(seen) != n_total - 1 or len(seen) != n_total):
        raise CoverageError(f"blocks do not partition [{n_total}]")
    p = Pattern(arity, tuple(canon))
    if provenance is None:
        provenance = (Stage("base", p, tuple(range(n_total))),)
    p.provenance = tuple(provenance)
    return p


def empty_pattern(arity) -> Pattern:
    p = Pattern(arity, ())
    p.provenance = ()
    return p


def ordered_blocks(P: Pattern):
    return list(P.blocks)


# ---------------------------------------------------------------------------
# index maps

class IndexMap:
    """Injective order-preserving map on naturals, as a tagged term.

    Kinds: psi(k,n), psi_inverse(k,n), phi(j1,l1,j2,l2), phi_single(j1,l1),
    translate(k), composition(maps applied left to right), identity.
    """

    __slots__ = ("kind", "params")

    def __init__(self, kind, params):
        self.kind = kind
        self.params = params

    def __call__(self, x):
        return self.apply(x)

    def apply(self, x: int) -> int:
        k = self.kind
        if k == "identity":
            return x
        if k == "translate":
            return x + self.params[0]
        if k == "psi":
            kk = self.params[0]
            return x if x < kk else x + 1
        if k == "psi_inverse":
            kk = self.params[0]
            if x == kk:
                raise DomainError(f"psi_inverse undefined at {kk}")
            return x if x < kk else x - 1
        if k == "phi_single":
            j1, l1 = self.params
            return x if x < j1 else x + l1
        if k == "phi":
            j1, l1, j2, l2 = self.params
            if x < j1:
                return x
            if x < j2:
                return x + l1
            return x + l1 + l2
        if k == "composition":
            for m in self.params:
                x = m.apply(x)
            return x
        raise ValueError(f"unknown kind {k}")

    def apply_block(self, block):
        return tuple(sorted(self.apply(x) for x in block))

    def apply_blocks(self, blocks):
        return [self.apply_block(b) for b in blocks]

    def as_tuple(self, domain_size):
        return tuple(self.apply(x) for x in range(domain_size))

    def __eq__(self, other):
        return isinstance(other, IndexMap) and (self.kind, self.params) == (other.kind, other.params)

    def __repr__(self):
        return f"IndexMap({self.kind}{self.params})"


def identity_map() -> IndexMap:
    return IndexMap("identity", ())


def translate_map(k: int) -> IndexMap:
    if k < 0:
        raise NegativeShiftError(f"negative translation {k}")
    return IndexMap("translate", (k,))


def psi_map(k: int, n: int) -> IndexMap:
    if not 0 <= k <= n:
        raise DomainError(f"psi needs 0 <= k <= n, got k={k}, n={n}")
    return IndexMap("psi", (k, n))


def psi_inverse_map(k: int, n: int) -> IndexMap:
    if not 0 <= k <= n:
        raise DomainError(f"psi_inverse needs 0 <= k <= n, got k={k}, n={n}")
    return IndexMap("psi_inverse", (k, n))


def phi_single_map(j1: int, l1: int) -> IndexMap:
    if l1 < 0:
        raise NegativeShiftError(f"negative shift {l1} in phi_single({j1},{l1})")
    return IndexMap("phi_single", (j1, l1))


def phi_map(j1: int, l1: int, j2: int, l2: int) -> IndexMap:
    """Two-threshold shift map; collapses to phi_single when j1 == j2."""
    if l1 < 0 or l2 < 0:
        raise NegativeShiftError(f"negative shift in phi(({j1},{l1}),({j2},{l2}))")
    if j1 > j2:
        raise DomainError(f"phi needs j1 <= j2, got {j1} > {j2}")
    if j1 == j2:
        return phi_single_map(j1, l1 + l2)
    return IndexMap("phi", (j1, l1, j2, l2))


def compose(*maps) -> IndexMap:
    """Composition applied left to right: compose(f, g)(x) = g(f(x))."""
    flat = []
    for m in maps:
        if m.kind == "identity":
            continue
        if m.kind == "composition":
            flat.extend(m.params)
        else:
            flat.append(m)
    if not flat:
        return identity_map()
    if len(flat) == 1:
        return flat[0]
    return IndexMap("composition", tuple(flat))


def _mapped_stages(stages, m: IndexMap):
    return [Stage(s.label, s.component, tuple(m.apply(x) for x in s.emb)) for s in stages]


# ---------------------------------------------------------------------------
# constructions

def pair_extend(P: Pattern, k: int) -> Pattern:
    """Extend a 2-pattern of size n to size n+2: psi_k(P) plus block {k, n+1}."""
    if P.arity != 2:
        raise IndexError("pair extension is defined for 2-patterns")
    n = P.size
    if not 0 <= k <= n:
        raise IndexError(f"need k <= {n}, got {k}")
    psi = psi_map(k, n)
    blocks = psi.apply_blocks(P.blocks) + [(k, n + 1)]
    pairp = Pattern(2, ((0, 1),))
    pairp.provenance = (Stage("base", pairp, (0, 1)),)
    prov = _mapped_stages(P.provenance, psi) + [Stage("new-pair", pairp, (k, n + 1))]
    return make_pattern(2, blocks, provenance=prov)


def oplus(P: Pattern, j1: int, j2: int, Q: Pattern, i: int) -> Pattern:
    """Splice Q into P between positions j1 < j2, splitting Q at i."""
    if P.arity != Q.arity:
        raise IndexError("oplus requires equal arities")
    if not 0 <= j1 < j2 <= P.size:
        raise IndexError(f"need 0 <= j1 < j2 <= {P.size}, got ({j1},{j2})")
    if not 0 <= i <= Q.size:
        raise IndexError(f"need 0 <= i <= {Q.size}, got {i}")
    mP = phi_map(j1, i, j2, Q.size - i)
    mQ = phi_map(0, j1, i, j2 - j1)
    blocks = mP.apply_blocks(P.blocks) + mQ.apply_blocks(Q.blocks)
    prov = _mapped_stages(P.provenance, mP) + _mapped_stages(Q.provenance, mQ)
    return make_pattern(P.arity, blocks, provenance=prov)


def oplus_maps(P: Pattern, j1: int, j2: int, Q: Pattern, i: int):
    """The two embeddings used by oplus, (host map, guest map)."""
    return phi_map(j1, i, j2, Q.size - i), phi_map(0, j1, i, j2 - j1)


def insert(P: Pattern, j: int, Q: Pattern) -> Pattern:
    """Block-insertion reading of a single-subscript splice.

    Shifts P's indices >= j up by |Q| and translates Q by j; this is the
    j1 == j2 degeneration of oplus under the shift-map convention.
    """
    if P.arity != Q.arity:
        raise IndexError("insert requires equal arities")
    if not 0 <= j <= P.size:
        raise IndexError(f"need 0 <= j <= {P.size}, got {j}")
    mP = phi_single_map(j, Q.size)
    mQ = translate_map(j)
    blocks = mP.apply_blocks(P.blocks) + mQ.apply_blocks(Q.blocks)
    prov = _mapped_stages(P.provenance, mP) + _mapped_stages(Q.provenance, mQ)
    return make_pattern(P.arity, blocks, provenance=prov)


def insert_maps(P: Pattern, j: int, Q: Pattern):
    return phi_single_map(j, Q.size), translate_map(j)


def chain(P: Pattern, j: int, k: int, l: int) -> Pattern:
    """l-chain of P at (j, k): iterated oplus self-splicing.

    The result's provenance has exactly l stages, one per copy of P, in
    construction order; stage embeddings are recorded, not derived from the
    closed-form stage map (see validate_chain_stages).
    """
    n = P.size
    if not 0 <= j < k <= n:
        raise IndexError(f"need 0 <= j < k <= {n}, got ({j},{k})")
    if l < 1:
        raise IndexError("chain length must be >= 1")
    stage_embs = [tuple(range(n))]
    cur_blocks = list(P.blocks)
    for s in range(1, l):
        host = make_pattern(P.arity, cur_blocks)
        mH, mG = oplus_maps(host, s * j, (s - 1) * j + k, P, k)
        cur_blocks = mH.apply_blocks(cur_blocks) + mG.apply_blocks(P.blocks)
        stage_embs = [tuple(mH.apply(x) for x in e) for e in stage_embs]
        stage_embs.append(mG.as_tuple(n))
    prov = [Stage(f"stage{i + 1}", P, e) for i, e in enumerate(stage_embs)]
    return make_pattern(P.arity, cur_blocks, provenance=prov)


def stage_embedding(chain_pattern: Pattern, i: int) -> tuple:
    """Embedding of the i-th (1-based) stage component into the chain."""
    if not 1 <= i <= len(chain_pattern.provenance):
        raise IndexError(f"stage {i} out of range")
    return chain_pattern.provenance[i - 1].emb


def chain_stage_closed_form(n: int, j: int, k: int, l: int, i: int) -> IndexMap:
    """Closed-form stage map for an l-chain; raises NegativeShiftError at the
    boundary stages where the published formula's shift goes negative."""
    if i == 1:
        return phi_map(j, (l - 2) * n + k, k, n - k)
    return compose(phi_map(j, (l - i - 1) * n + k, k, n - j), *([translate_map(j)] * (i - 1)))


def validate_chain_stages(chain_pattern: Pattern, n: int, j: int, k: int, l: int):
    """Compare recorded stage embeddings against the closed form.

    Returns one record per stage: status 'match', 'mismatch' (with both
    tuples) or 'negative-shift' where the closed form is not even a valid
    order embedding.  Provenance stays authoritative either way.
    """
    records = []
    for i in range(1, l + 1):
        emb = stage_embedding(chain_pattern, i)
        try:
            cf = chain_stage_closed_form(n, j, k, l, i).as_tuple(n)
        except NegativeShiftError as exc:
            records.append({"stage": i, "status": "negative-shift", "detail": str(exc)})
            continue
        if cf == emb:
            records.append({"stage": i, "status": "match"})
        else:
            records.append(
                {"stage": i, "status": "mismatch", "provenance": emb, "closed_form": cf}
            )
    return records


# ---------------------------------------------------------------------------
# grids and embedding order

def grid_pattern(w: int) -> Pattern:
    """Canonical grid of width w (arity 2, size w(w+1)).

    Level t hosts the x-slots of column t (ascending row) followed by the
    y-slots of row t (ascending column).
    """
    if w < 1:
        raise ValueError("width must be >= 1")
    blocks = []
    for i in range(1, w + 1):
        for j in range(i, w + 1):
            x_idx = (i - 1) * (w + 1) + (j - i)
            y_idx = (j - 1) * (w + 1) + (w - j + i)
            blocks.append((x_idx, y_idx))
    return make_pattern(2, blocks)


def is_grid(P: Pattern, w: int) -> bool:
    """Level-set grid test: indices split into w consecutive levels of size
    w+1, and blocks hit each cell (i, j), i <= j, of the triangular grid
    exactly once; within-level order is free."""
    if P.arity != 2 or w < 1 or P.size != w * (w + 1):
        return False
    cells = set()
    for a, b in P.blocks:
        i, j = a // (w + 1), b // (w + 1)
        if i > j:
            return False
        if (i, j) in cells:
            return False
        cells.add((i, j))
    return len(cells) == w * (w + 1) // 2


def all_grids(w: int):
    """Every pattern accepted by is_grid at width w."""
    levels = [list(range(t * (w + 1), (t + 1) * (w + 1))) for t in range(w)]
    cells = [(i, j) for i in range(w) for j in range(i, w)]
    # per level: slots are x-of-cells (t, j) then y-of-cells (i, t)
    level_slots = []
    for t in range(w):
        slots = [("x", t, j) for j in range(t, w)] + [("y", i, t) for i in range(t + 1)]
        level_slots.append(slots)
    out = set()
    def rec(t, assignment):
        if t == w:
            blocks = []
            ok = True
            for (i, j) in cells:
                a, b = assignment[("x", i, j)], assignment[("y", i, j)]
                if a >= b:
                    ok = False
                    break
                blocks.append((a, b))
            if ok:
                out.add(make_pattern(2, blocks))
            return
        for perm in permutations(levels[t]):
            for slot, idx in zip(level_slots[t], perm):
                assignment[slot] = idx
            rec(t + 1, assignment)
        return
    rec(0, {})
    return sorted(out, key=lambda p: p.blocks)


def pattern_embeds(P: Pattern, Q: Pattern) -> bool:
    """Injective order-preserving index map of P into Q carrying blocks onto
    blocks; when true, every copy of Q contains a copy of P."""
    if P.arity != Q.arity:
        raise IndexError("embedding requires equal arities")
    if P.size == 0:
        return True
    if P.size > Q.size:
        return False
    pb, qb = P.blocks, Q.blocks

    def rec(t, used, partial):
        if t == len(pb):
            return True
        for qi, qblock in enumerate(qb):
            if qi in used:
                continue
            cand = dict(partial)
            ok = True
            for a, b in zip(pb[t], qblock):
                cand[a] = b
            items = sorted(cand.items())
            for (x1, y1), (x2, y2) in zip(items, items[1:]):
                if y1 >= y2:
                    ok = False
                    break
            if ok and rec(t + 1, used | {qi}, cand):
                return True
        return False

    return rec(0, frozenset(), {})


def min_grid_width(P: Pattern, max_width: int = 3) -> int:
    """Smallest w such that P embeds into every grid of width w, by
    exhaustive search over the grid family.

    Raises SearchBudgetExceeded when no width within the budget suffices.
    That outcome is meaningful: since within-level order is free, the family
    contains laminar (crossing-free) grids at least up to width 3, so
    crossing patterns admit no sufficient width the search can certify.
    """
    if P.arity != 2:
        raise IndexError("grid widths are defined for 2-patterns")
    for w in range(1, max_width + 1):
        if all(pattern_embeds(P, G) for G in all_grids(w)):
            return w
    raise SearchBudgetExceeded(f"no width <= {max_width} suffices for {P}")


def enumerate_patterns(arity: int, size: int):
    """All patterns of the given arity and size (partitions into blocks)."""
    if size % arity != 0:
        raise ValueError("arity must divide size")
    out = []

    def rec(remaining, blocks):
        if not remaining:
            out.append(make_pattern(arity, blocks))
            return
        first = remaining[0]
        rest = remaining[1:]
        from itertools import combinations

        for partners in combinations(rest, arity - 1):
            blk = (first,) + partners
            nxt = [x for x in rest if x not in partners]
            rec(nxt, blocks + [blk])

    rec(list(range(size)), [])
    return out
