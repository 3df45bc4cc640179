"""Pure-Python reference kernels for the hot combinatorial searches.

The compiled extension (_kernels.pyx) mirrors these functions exactly;
`simplex_ramsey._backend` picks whichever is importable.  Both operate on
integer-rank data prepared by the callers, so they stay exact.
"""

from bisect import bisect_left

FOUND = 0
NONE = 1
BUDGET = 2


def search_copy(arity, nblocks, slot_block, slot_pos, points, budget):
    """Lexicographically least pattern-copy assignment over ranked points.

    slot_block[t] / slot_pos[t]: block id and within-block position of
    merged-order slot t (blocks numbered in encounter order).  points: list
    of arity-tuples of integer ranks, sorted ascending, each internally
    strictly increasing.  Returns (status, assignment) where assignment[b]
    is the chosen point index for block b.

    Placing a block pins rank values at all of its slots; candidates for
    later blocks are interval-checked against the nearest pinned slots in
    both directions, which keeps the search shallow on interleaved patterns.
    """
    total = arity * nblocks
    npts = len(points)
    first_ranks = [p[0] for p in points]
    block_slots = [[0] * arity for _ in range(nblocks)]
    for t in range(total):
        block_slots[slot_block[t]][slot_pos[t]] = t
    slot_val = [-1] * total
    assigned = [-1] * nblocks
    used = [False] * npts
    nodes = 0

    nranks = max((p[arity - 1] for p in points), default=-1) + 1

    def fits(b, pt, t):
        # every coordinate must leave room for the slots separating it from
        # the nearest pinned slot on either side: k slots apart need a rank
        # gap of at least k (the virtual pins are rank -1 before slot 0 and
        # nranks after the last slot)
        for s in range(arity):
            idx = block_slots[b][s]
            v = pt[s]
            j = idx - 1
            while j >= 0 and slot_val[j] < 0:
                j -= 1
            w = slot_val[j] if j >= 0 else -1
            if v - w < idx - j:
                return False
            j = idx + 1
            while j < total and slot_val[j] < 0:
                j += 1
            w = slot_val[j] if j < total else nranks
            if w - v < j - idx:
                return False
        return True

    def rec(t, last):
        nonlocal nodes
        if t == total:
            return FOUND
        b = slot_block[t]
        s = slot_pos[t]
        if s > 0:
            v = points[assigned[b]][s]
            if v > last:
                return rec(t + 1, v)
            return NONE
        start = bisect_left(first_ranks, last + 1)
        for p in range(start, npts):
            if used[p]:
                continue
            nodes += 1
            if nodes > budget:
                return BUDGET
            pt = points[p]
            if not fits(b, pt, t):
                continue
            assigned[b] = p
            used[p] = True
            for s2 in range(arity):
                slot_val[block_slots[b][s2]] = pt[s2]
            r = rec(t + 1, pt[0])
            used[p] = False
            for s2 in range(arity):
                slot_val[block_slots[b][s2]] = -1
            if r == FOUND:
                return FOUND
            assigned[b] = -1
            if r == BUDGET:
                return BUDGET
        return NONE

    status = rec(0, -1)
    return status, list(assigned) if status == FOUND else None
