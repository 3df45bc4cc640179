"""Rank of box-union sets: staircase witnesses, search engines and oracles.

2D rank >= n: an increasing chain x0 < x1 <= y1 < ... < xn <= yn < y_end
whose staircase rectangles (x0, xi) x (yi, y_end) all sit inside the set.
3D rank >= m: the interleaved level chain whose family of closed boxes has
interior (within the simplex) inside the set.

Witness coordinates are searched over arrangement *positions*: either a box
endpoint or an open gap between consecutive endpoints.  Coverage of every
queried box is constant per position, and a gap position may host several
chain values (a set like (a,b)^n supports arbitrarily long staircases inside
the single gap (a,b)), so position chains are a complete and exact search
space.  The main engine prunes with prefix-sum coverage tables; the brute
force oracle re-derives everything through direct geometry-layer containment
calls on representative boxes.
"""

from fractions import Fraction

from .errors import HypothesisViolation, WitnessConstructionFailed
from .geometry import (
    ONE,
    ZERO,
    Box,
    BoxUnionSet,
    contains_box,
    interior_union_contains,
    select_increasing,
)


class RankWitness2D:
    __slots__ = ("x0", "pairs", "y_end")

    def __init__(self, x0, pairs, y_end):
        self.x0 = Fraction(x0)
        self.pairs = tuple((Fraction(x), Fraction(y)) for x, y in pairs)
        self.y_end = Fraction(y_end)

    @property
    def level(self):
        return len(self.pairs)

    def chain_ok(self) -> bool:
        if not (ZERO <= self.x0 and self.y_end <= ONE) or not self.pairs:
            return False
        prev = self.x0
        for x, y in self.pairs:
            if x <= prev or y < x:
                return False
            prev = y
        return prev < self.y_end

    def rectangles(self):
        return [Box([(self.x0, x), (y, self.y_end)]) for x, y in self.pairs]

    def __eq__(self, other):
        return (
            isinstance(other, RankWitness2D)
            and (self.x0, self.pairs, self.y_end) == (other.x0, other.pairs, other.y_end)
        )

    def __repr__(self):
        return f"RankWitness2D(x0={self.x0}, pairs={list(self.pairs)}, y_end={self.y_end})"


class RankWitness3D:
    """Level chain: bottom x_1^0, full levels (x_1^i, x_2^i, x_3^i) for
    i = 1..m, top x_3^{m+1}; within-level comparisons are non-strict, the
    chain is strict between levels."""

    __slots__ = ("bottom", "levels", "top")

    def __init__(self, bottom, levels, top):
        self.bottom = Fraction(bottom)
        self.levels = tuple(tuple(Fraction(v) for v in lvl) for lvl in levels)
        self.top = Fraction(top)
        for lvl in self.levels:
            if len(lvl) != 3:
                raise ValueError("each level holds three coordinates")

    @property
    def level(self):
        return len(self.levels)

    def chain_ok(self) -> bool:
        if not self.levels:
            return False
        if not (ZERO <= self.bottom and self.top <= ONE):
            return False
        prev = self.bottom
        for lvl in self.levels:
            if lvl[0] <= prev or not (lvl[0] <= lvl[1] <= lvl[2]):
                return False
            prev = lvl[2]
        return prev < self.top

    def boxes(self):
        """Closed boxes of the witness family; all ranges are nondegenerate
        because the chain is strict between levels (empty for level 1)."""
        m = self.level
        xs = [self.bottom] + [lvl[0] for lvl in self.levels]
        ys = [None] + [lvl[1] for lvl in self.levels]
        zs = [None] + [lvl[2] for lvl in self.levels] + [self.top]
        out = []
        for i1 in range(0, m - 1):
            for i2 in range(i1 + 1, m):
                for i3 in range(i2 + 1, m + 1):
                    out.append(Box([(xs[i1], xs[i1 + 1]), (ys[i2], ys[i2 + 1]), (zs[i3], zs[i3 + 1])]))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, RankWitness3D)
            and (self.bottom, self.levels, self.top) == (other.bottom, other.levels, other.top)
        )

    def __repr__(self):
        return f"RankWitness3D(bottom={self.bottom}, levels={list(self.levels)}, top={self.top})"


class RankReport:
    __slots__ = ("value", "witness", "capped")

    def __init__(self, value, witness, capped):
        self.value = value
        self.witness = witness
        self.capped = capped

    def __repr__(self):
        return f"RankReport(value={self.value}, capped={self.capped})"


def verify_witness2(S: BoxUnionSet, w: RankWitness2D) -> bool:
    if S.dim != 2 or not w.chain_ok():
        return False
    return all(contains_box(S, r) for r in w.rectangles())


def verify_witness3(S: BoxUnionSet, w: RankWitness3D) -> bool:
    """Definition-2 check: chain shape plus interior-of-union containment.

    For level 1 the box family is empty, so the interior condition holds
    vacuously and only the chain shape is asserted (see decisions ledger).
    """
    if S.dim != 3 or not w.chain_ok():
        return False
    return interior_union_contains(S, w.boxes())


def verify_witness(S: BoxUnionSet, w) -> bool:
    if isinstance(w, RankWitness2D):
        return verify_witness2(S, w)
    return verify_witness3(S, w)


# ---------------------------------------------------------------------------
# position machinery
#
# With E = merged sorted endpoints (all axes, plus 0 and 1), position 2i is
# the endpoint E[i] and position 2i+1 the open gap (E[i], E[i+1]).  An open
# interval between two chain values occupies a contiguous range of positions
# bounded by gap positions on both sides.

def _endpoints(S: BoxUnionSet):
    vals = {ZERO, ONE}
    for ax in S.axes():
        vals.update(ax)
    return sorted(vals)


def _pos_rep(E, p):
    return E[p // 2] if p % 2 == 0 else (E[p // 2] + E[p // 2 + 1]) / 2


def _gap_lo(p):
    """First position of the open interval starting at a value in position p."""
    return p if p % 2 == 1 else p + 1


def _gap_hi(p):
    """Last position of the open interval ending at a value in position p."""
    return p if p % 2 == 1 else p - 1


def _range_box(E, ranges):
    """Representative open box whose position range per axis is exactly the
    given [c1, c2] (both gap positions): first/last quartile of those gaps."""
    ivs = []
    for c1, c2 in ranges:
        g1, g2 = (c1 - 1) // 2, (c2 - 1) // 2
        lo = E[g1] + (E[g1 + 1] - E[g1]) / 4
        hi = E[g2 + 1] - (E[g2 + 1] - E[g2]) / 4
        ivs.append((lo, hi))
    return Box(ivs)


def _materialize(E, slots):
    """Assign exact values to chain slots given as (position, relation) with
    relation one of 'first', 'lt', 'le' against the previous slot."""
    values = []
    i = 0
    n = len(slots)
    while i < n:
        p = slots[i][0]
        j = i
        while j < n and slots[j][0] == p:
            j += 1
        run = slots[i:j]
        if p % 2 == 0:
            assert all(rel != "lt" for _, rel in run[1:]), "strict step at an endpoint position"
            values.extend([E[p // 2]] * len(run))
        else:
            lo, hi = E[(p - 1) // 2], E[(p + 1) // 2]
            dist = [0]
            for _, rel in run[1:]:
                dist.append(dist[-1] + (1 if rel == "lt" else 0))
            k = dist[-1] + 1
            for d in dist:
                values.append(lo + (hi - lo) * Fraction(d + 1, k + 1))
        i = j
    return values


class _Table2:
    """2D coverage and prefix sums over the merged-endpoint position grid."""

    def __init__(self, S: BoxUnionSet):
        E = _endpoints(S)
        self.E = E
        npos = 2 * len(E) - 1
        self.npos = npos
        reps = [_pos_rep(E, p) for p in range(npos)]
        cov = [[0] * npos for _ in range(npos)]
        for c in range(npos):
            for r in range(npos):
                if S.covers_point((reps[c], reps[r])):
                    cov[c][r] = 1
        pre = [[0] * (npos + 1) for _ in range(npos + 1)]
        for c in range(npos):
            acc = 0
            for r in range(npos):
                acc += cov[c][r]
                pre[c + 1][r + 1] = pre[c][r + 1] + acc
        self.pre = pre
        self._runs = {}

    def row_runs(self, c1, c2):
        """runs[r] = first row >= r not fully covered on columns [c1, c2]."""
        key = (c1, c2)
        runs = self._runs.get(key)
        if runs is None:
            pre = self.pre
            width = c2 - c1 + 1
            npos = self.npos
            runs = [0] * (npos + 1)
            runs[npos] = npos
            for r in range(npos - 1, -1, -1):
                full = (pre[c2 + 1][r + 1] - pre[c1][r + 1] - pre[c2 + 1][r] + pre[c1][r]) == width
                runs[r] = runs[r + 1] if full else r
            self._runs[key] = runs
        return runs


def _rank2_positions(S: BoxUnionSet, m: int, table: _Table2):
    """Position chain (px_1, py_1, ..., px_m, py_m) search, lex-least."""
    npos = table.npos
    best = None

    def dfs(t, prev_py, p0, picks, mintop):
        nonlocal best
        if best is not None:
            return
        if t == m:
            pt_min = prev_py if prev_py % 2 == 1 else prev_py + 1
            if pt_min <= mintop and pt_min < npos:
                best = (p0, list(picks), pt_min)
            return
        if t == 0:
            px_range = range(1, npos)
        else:
            px_range = range(prev_py + (0 if prev_py % 2 == 1 else 1), npos)
        for px in px_range:
            if t > 0 and px == prev_py and px % 2 == 0:
                continue  # strict step needs a new value; endpoints hold one
            p0_here = p0 if t > 0 else (px if px % 2 == 1 else px - 1)
            for py in range(px, npos - 1):
                runs = table.row_runs(p0_here, _gap_hi(px) if px != p0_here else p0_here)
                r1 = _gap_lo(py)
                first_bad = runs[r1]
                maxtop = first_bad if first_bad % 2 == 0 else first_bad - 1
                need = py if py % 2 == 1 else py + 1
                if maxtop < need:
                    continue
                dfs(t + 1, py, p0_here, picks + [(px, py)], min(mintop, maxtop))
                if best is not None:
                    return

    dfs(0, -1, -1, [], npos)
    return best


def rank_at_least2(S: BoxUnionSet, m: int, _table=None):
    if not S.boxes:
        return None
    table = _table if _table is not None else _Table2(S)
    found = _rank2_positions(S, m, table)
    if found is None:
        return None
    p0, picks, pt = found
    slots = [(p0, "first")]
    rels = []
    for px, py in picks:
        slots.append((px, "lt"))
        slots.append((py, "le"))
    slots.append((pt, "lt"))
    values = _materialize(table.E, slots)
    w = RankWitness2D(values[0], list(zip(values[1:-1:2], values[2:-1:2])), values[-1])
    assert verify_witness2(S, w)
    return w


# ---------------------------------------------------------------------------
# 3D engine

class _Table3:
    def __init__(self, S: BoxUnionSet):
        E = _endpoints(S)
        self.E = E
        npos = 2 * len(E) - 1
        self.npos = npos
        reps = [_pos_rep(E, p) for p in range(npos)]
        cov = {}
        col_any = [0] * npos
        xy_any = [[0] * npos for _ in range(npos)]
        for c in range(npos):
            for r in range(npos):
                anyz = 0
                for t in range(npos):
                    v = 1 if S.covers_point((reps[c], reps[r], reps[t])) else 0
                    cov[(c, r, t)] = v
                    anyz |= v
                xy_any[c][r] = anyz
                col_any[c] |= anyz
        self.cov = cov
        self.col_any = col_any
        self.xy_any = xy_any
        pre = [[[0] * (npos + 1) for _ in range(npos + 1)] for _ in range(npos + 1)]
        for c in range(npos):
            for r in range(npos):
                acc = 0
                for t in range(npos):
                    acc += cov[(c, r, t)]
                    pre[c + 1][r + 1][t + 1] = (
                        pre[c][r + 1][t + 1] + pre[c + 1][r][t + 1] - pre[c][r][t + 1] + acc
                    )
        self.pre = pre

    def box_covered(self, c1, c2, r1, r2, t1, t2):
        vol = (c2 - c1 + 1) * (r2 - r1 + 1) * (t2 - t1 + 1)
        pre = self.pre
        got = (
            pre[c2 + 1][r2 + 1][t2 + 1]
            - pre[c1][r2 + 1][t2 + 1]
            - pre[c2 + 1][r1][t2 + 1]
            - pre[c2 + 1][r2 + 1][t1]
            + pre[c1][r1][t2 + 1]
            + pre[c1][r2 + 1][t1]
            + pre[c2 + 1][r1][t1]
            - pre[c1][r1][t1]
        )
        return got == vol


def _strict_point_in_boxes(S: BoxUnionSet):
    for b in S.boxes:
        probe = select_increasing([("iv", lo, hi) for lo, hi in b.intervals], strict=True)
        if probe is not None:
            return probe
    return None


def _chain3_boxes_pos(p_b, levels, p_top, m):
    """Index-box family over positions: per box the three position ranges."""
    xs = [p_b] + [lvl[0] for lvl in levels]
    ys = [None] + [lvl[1] for lvl in levels]
    zs = [None] + [lvl[2] for lvl in levels] + [p_top]
    out = []
    for i1 in range(0, m - 1):
        for i2 in range(i1 + 1, m):
            for i3 in range(i2 + 1, m + 1):
                out.append(
                    (
                        (_gap_lo(xs[i1]), _gap_hi(xs[i1 + 1])),
                        (_gap_lo(ys[i2]), _gap_hi(ys[i2 + 1])),
                        (_gap_lo(zs[i3]), _gap_hi(zs[i3 + 1])),
                    )
                )
    return out


def _witness3_from_positions(E, p_b, levels, p_top):
    slots = [(p_b, "first")]
    for i, (p1, p2, p3) in enumerate(levels):
        slots.append((p1, "lt"))
        slots.append((p2, "le"))
        slots.append((p3, "le"))
    slots.append((p_top, "lt"))
    values = _materialize(E, slots)
    lvl_vals = [tuple(values[1 + 3 * i : 4 + 3 * i]) for i in range(len(levels))]
    return RankWitness3D(values[0], lvl_vals, values[-1])


def rank_at_least3(S: BoxUnionSet, m: int, _table=None):
    """Definition-2 search over positions.

    Level 1 has an empty box family, so the displayed condition is vacuous;
    the engine grants rank >= 1 exactly when the set meets the open simplex
    interior (ledgered convention) and searches the real family for m >= 2.
    """
    if not S.boxes:
        return None
    if m == 1:
        p = _strict_point_in_boxes(S)
        if p is None:
            return None
        w = RankWitness3D(ZERO, [p], ONE)
        assert verify_witness3(S, w)
        return w
    table = _table if _table is not None else _Table3(S)
    E, npos = table.E, table.npos
    found = None

    def level_strict_ok(prev, p):
        return p > prev or (p == prev and p % 2 == 1)

    def boxes_ok(p_b, levels, i3, top_pos):
        """Boxes with third index i3, using top_pos for Z_{i3+1} if needed."""
        xs = [p_b] + [lvl[0] for lvl in levels]
        ys = [None] + [lvl[1] for lvl in levels]
        zs = [None] + [lvl[2] for lvl in levels]
        ze = zs[i3 + 1] if i3 + 1 <= len(levels) else top_pos
        t1, t2 = _gap_lo(zs[i3]), _gap_hi(ze)
        for i1 in range(0, i3 - 1):
            for i2 in range(i1 + 1, i3):
                if not table.box_covered(
                    _gap_lo(xs[i1]), _gap_hi(xs[i1 + 1]),
                    _gap_lo(ys[i2]), _gap_hi(ys[i2 + 1]),
                    t1, t2,
                ):
                    return False
        return True

    def dfs(levels):
        nonlocal found
        if found is not None:
            return
        depth = len(levels)
        if depth == m:
            prev = levels[-1][2]
            p_top = prev if prev % 2 == 1 else prev + 1
            if p_top >= npos:
                return
            # full interior-of-union condition on materialized values
            w = _witness3_from_positions(E, _below(levels[0][0]), levels, p_top)
            if verify_witness3(S, w):
                found = w
            return
        prev = levels[-1][2] if levels else None
        for p1 in range(0 if prev is None else prev, npos):
            if prev is not None and not level_strict_ok(prev, p1):
                continue
            if prev is None and p1 < 1:
                continue  # need room below for the bottom value
            p_b = _below(p1) if not levels else _below(levels[0][0])
            # x-columns of the earliest box must carry some coverage
            if not levels and not all(
                table.col_any[c] for c in range(_gap_lo(p_b), _gap_hi(p1) + 1)
            ):
                continue
            for p2 in range(p1, npos):
                if len(levels) == 1 and not _xy_possible(table, p_b, levels, p1, p2, m):
                    continue
                for p3 in range(p2, npos - 1):
                    new_levels = levels + [(p1, p2, p3)]
                    depth_new = depth + 1
                    ok = True
                    # boxes fully determined: third index i3 = depth_new - 1
                    if depth_new >= 3:
                        ok = boxes_ok(p_b, new_levels, depth_new - 1, None)
                    # minimal-top necessary check for i3 = depth_new
                    if ok and depth_new >= 2:
                        min_top = p3 if p3 % 2 == 1 else p3 + 1
                        if min_top >= npos:
                            ok = False
                        else:
                            ok = boxes_ok(p_b, new_levels, depth_new, min_top)
                    if ok:
                        dfs(new_levels)
                    if found is not None:
                        return

    def _below(p):
        return p if p % 2 == 1 else p - 1

    def _xy_possible(table, p_b, levels, p1, p2, m):
        # necessary condition for the first box (0, 1, depth): once level-2's
        # y is placed, columns x [bottom..X1] and rows y [Y1..Y2] must admit
        # some covered z per cell
        ys1 = levels[0][1]
        c1, c2 = _gap_lo(p_b), _gap_hi(levels[0][0])
        r1, r2 = _gap_lo(ys1), _gap_hi(p2)
        if r2 < r1 or c2 < c1:
            return True
        xy = table.xy_any
        return all(xy[c][r] for c in range(c1, c2 + 1) for r in range(r1, r2 + 1))

    dfs([])
    return found


def rank_at_least(S: BoxUnionSet, m: int):
    if m < 1:
        raise ValueError("m must be >= 1")
    if S.dim == 2:
        return rank_at_least2(S, m)
    if S.dim == 3:
        return rank_at_least3(S, m)
    raise ValueError("rank is defined for dimensions 2 and 3")


def rank(S: BoxUnionSet, cap: int) -> RankReport:
    """Greatest m <= cap with a verifying witness (0 if none)."""
    if cap < 0:
        raise ValueError("cap must be >= 0")
    value, witness = 0, None
    table = None
    if S.boxes and cap >= 1:
        table = _Table2(S) if S.dim == 2 else _Table3(S)
    for m in range(1, cap + 1):
        w = rank_at_least2(S, m, table) if S.dim == 2 else rank_at_least3(S, m, table)
        if w is None:
            break
        value, witness = m, w
    return RankReport(value, witness, capped=(value == cap))


# ---------------------------------------------------------------------------
# brute-force oracle: same position space, independent machinery
#
# Containment is decided by direct geometry-layer calls on representative
# boxes (first/last quartiles of the bounding gaps), never via the engine's
# prefix tables.

def _brute2_max(S: BoxUnionSet, cap: int) -> int:
    E = _endpoints(S)
    npos = 2 * len(E) - 1
    memo = {}

    def rect_ok(c1, c2, r1, r2):
        key = (c1, c2, r1, r2)
        got = memo.get(key)
        if got is None:
            got = contains_box(S, _range_box(E, [(c1, c2), (r1, r2)]))
            memo[key] = got
        return got

    best = 0

    def dfs(t, prev_py, p0, picks):
        nonlocal best
        if t >= cap:
            return
        px_lo = 1 if t == 0 else prev_py + (0 if prev_py % 2 == 1 else 1)
        for px in range(px_lo, npos):
            if t > 0 and px == prev_py and px % 2 == 0:
                continue
            p0_here = p0 if t > 0 else (px if px % 2 == 1 else px - 1)
            for py in range(px, npos - 1):
                top = py if py % 2 == 1 else py + 1
                if top >= npos:
                    continue
                chain = picks + [(px, py)]
                if all(
                    rect_ok(p0_here, _gap_hi(x), _gap_lo(y), _gap_hi(top)) for x, y in chain
                ):
                    best = max(best, t + 1)
                    if best >= cap:
                        return
                # sound prune for deeper chains: this pair's rectangle must
                # hold at least at its own minimal top
                if rect_ok(p0_here, _gap_hi(px), _gap_lo(py), _gap_hi(top)):
                    dfs(t + 1, py, p0_here, chain)
                if best >= cap:
                    return

    dfs(0, -1, -1, [])
    return best


def _brute3_max(S: BoxUnionSet, cap: int) -> int:
    if _strict_point_in_boxes(S) is None:
        return 0
    best = 1
    if cap <= 1:
        return min(best, cap)
    E = _endpoints(S)
    npos = 2 * len(E) - 1
    memo = {}

    def box_ok(xr, yr, zr):
        key = (xr, yr, zr)
        got = memo.get(key)
        if got is None:
            got = contains_box(S, _range_box(E, [xr, yr, zr]))
            memo[key] = got
        return got

    def value_witness(p_b, levels, p_top):
        return _witness3_from_positions(E, p_b, levels, p_top)

    def boxes_ok(p_b, levels, i3, top_pos):
        xs = [p_b] + [lvl[0] for lvl in levels]
        ys = [None] + [lvl[1] for lvl in levels]
        zs = [None] + [lvl[2] for lvl in levels]
        ze = zs[i3 + 1] if i3 + 1 <= len(levels) else top_pos
        for i1 in range(0, i3 - 1):
            for i2 in range(i1 + 1, i3):
                if not box_ok(
                    (_gap_lo(xs[i1]), _gap_hi(xs[i1 + 1])),
                    (_gap_lo(ys[i2]), _gap_hi(ys[i2 + 1])),
                    (_gap_lo(zs[i3]), _gap_hi(ze)),
                ):
                    return False
        return True

    def dfs(levels):
        nonlocal best
        depth = len(levels)
        if depth >= 2:
            prev = levels[-1][2]
            p_top = prev if prev % 2 == 1 else prev + 1
            if p_top < npos and boxes_ok(_below(levels[0][0]), levels, depth, p_top):
                w = value_witness(_below(levels[0][0]), levels, p_top)
                if verify_witness3(S, w):
                    best = max(best, depth)
        if depth == cap or best >= cap:
            return
        prev = levels[-1][2] if levels else None
        for p1 in range(1 if prev is None else prev, npos):
            if prev is not None and not (p1 > prev or (p1 == prev and p1 % 2 == 1)):
                continue
            p_b = _below(levels[0][0]) if levels else _below(p1)
            for p2 in range(p1, npos):
                for p3 in range(p2, npos - 1):
                    new_levels = levels + [(p1, p2, p3)]
                    ok = True
                    if len(new_levels) >= 3:
                        ok = boxes_ok(p_b, new_levels, len(new_levels) - 1, None)
                    if ok and len(new_levels) >= 2:
                        min_top = p3 if p3 % 2 == 1 else p3 + 1
                        ok = min_top < npos and boxes_ok(p_b, new_levels, len(new_levels), min_top)
                    if ok:
                        dfs(new_levels)
                    if best >= cap:
                        return

    def _below(p):
        return p if p % 2 == 1 else p - 1

    dfs([])
    return min(best, cap)


def brute_force_rank(S: BoxUnionSet, cap: int) -> int:
    """Exhaustive oracle over the position space with containment checked
    directly through the geometry layer (representative-box queries)."""
    if not S.boxes or cap == 0:
        return 0
    return _brute2_max(S, cap) if S.dim == 2 else _brute3_max(S, cap)


# ---------------------------------------------------------------------------
# nested-box construction (high-rank sets from nested square families)

def _nested_witness_values(a, b, c, d, strict_bc):
    """Shared core: hypothesis checks and the midpoint witness recipe.

    Hypotheses (1-based): a_1 < a_{i+1} < b_{i+1} (< or <=) c_{i+1} < b_i,
    b_1 < d, plus a_1 < b_1 and c_1 < d (the b_0 = d reading of the recipe's
    final step)."""
    m = len(a)
    if not (len(b) == len(c) == m and m >= 1):
        raise HypothesisViolation("need equal-length a, b, c with m >= 1")
    d = Fraction(d)
    a = [Fraction(v) for v in a]
    b = [Fraction(v) for v in b]
    c = [Fraction(v) for v in c]

    def need(cond, msg):
        if not cond:
            raise HypothesisViolation(msg)

    need(a[0] < b[0], f"a_1 < b_1 fails: {a[0]} >= {b[0]}")
    need(b[0] < d, f"b_1 < d fails: {b[0]} >= {d}")
    need(c[0] < d, f"c_1 < d fails (b_0 = d reading): {c[0]} >= {d}")
    for i in range(1, m):
        need(a[0] < a[i], f"a_1 < a_{i + 1} fails")
        need(a[i] < b[i], f"a_{i + 1} < b_{i + 1} fails")
        if strict_bc:
            need(b[i] < c[i], f"b_{i + 1} < c_{i + 1} fails")
        else:
            need(b[i] <= c[i], f"b_{i + 1} <= c_{i + 1} fails")
        need(c[i] < b[i - 1], f"c_{i + 1} < b_{i} fails")

    S = BoxUnionSet(3, [Box([(a[i], b[i]), (a[i], b[i]), (c[i], d)]) for i in range(m)])

    # recipe: x_i = y_i in (z_{i-1}, b_{m-i+1}), z_i in (c_{m-i+1}, b_{m-i})
    # with b_0 = d; all picked as midpoints, the z-interval floor raised past
    # y_i when the hypotheses leave them interleaved
    levels = []
    x = (a[m - 1] + b[m - 1]) / 2
    bottom = a[m - 1]
    prev = x
    for i in range(1, m + 1):
        if i > 1:
            x = (prev + b[m - i]) / 2
        lo = max(c[m - i], x)
        hi = d if m - i - 1 < 0 else b[m - i - 1]
        if not lo < hi:
            raise WitnessConstructionFailed(
                f"empty choice interval for z_{i}: max(c,y)={lo} >= {hi}",
                trace=[{"i": i, "lo": str(lo), "hi": str(hi)}],
            )
        z = (lo + hi) / 2
        levels.append((x, x, z))
        prev = z
    w = RankWitness3D(bottom, levels, d)
    if not w.chain_ok():
        raise WitnessConstructionFailed("constructed chain violates the level ordering")
    return S, w


def nested_box_witness(a, b, c, d):
    """Build S = union of (a_i,b_i)^2 x (c_i,d) and its level-m rank witness.

    Hypotheses (strict) are validated up front; the returned witness is
    verified against S before returning."""
    S, w = _nested_witness_values(a, b, c, d, strict_bc=True)
    if not verify_witness3(S, w):
        raise WitnessConstructionFailed("witness failed interior containment against its own set")
    return S, w


def nested_box_witness_relaxed(a, b, c, d):
    """Variant allowing b_i = c_i, needed when the nested family comes from
    consecutive order-map values (the recipe goes through unchanged)."""
    S, w = _nested_witness_values(a, b, c, d, strict_bc=False)
    if not verify_witness3(S, w):
        raise WitnessConstructionFailed("witness failed interior containment against its own set")
    return S, w
