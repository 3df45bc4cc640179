# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels for the hot combinatorial searches.

Mirrors _kernels_py exactly: same inputs, same outputs, same candidate
order, so both backends return identical results.
"""

from libc.stdlib cimport free, malloc

FOUND = 0
NONE = 1
BUDGET = 2


def search_copy(int arity, int nblocks, slot_block, slot_pos, points, long budget):
    cdef int total = arity * nblocks
    cdef int npts = len(points)
    cdef int i, j, s, t
    if npts == 0 or total == 0:
        return (NONE, None) if total else (FOUND, [])

    cdef int *c_slot_block = <int *> malloc(total * sizeof(int))
    cdef int *c_slot_pos = <int *> malloc(total * sizeof(int))
    cdef int *c_block_slots = <int *> malloc(total * sizeof(int))
    cdef long *c_pts = <long *> malloc(npts * arity * sizeof(long))
    cdef long *c_first = <long *> malloc(npts * sizeof(long))
    cdef long *slot_val = <long *> malloc(total * sizeof(long))
    cdef int *assigned = <int *> malloc(nblocks * sizeof(int))
    cdef char *used = <char *> malloc(npts * sizeof(char))
    cdef long nodes = 0
    cdef long nranks = 0
    cdef int status = NONE
    try:
        for t in range(total):
            c_slot_block[t] = slot_block[t]
            c_slot_pos[t] = slot_pos[t]
        for t in range(total):
            c_block_slots[c_slot_block[t] * arity + c_slot_pos[t]] = t
        for i in range(npts):
            pt = points[i]
            for s in range(arity):
                c_pts[i * arity + s] = pt[s]
            c_first[i] = c_pts[i * arity]
            used[i] = 0
        nranks = 0
        for i in range(npts):
            if c_pts[i * arity + arity - 1] + 1 > nranks:
                nranks = c_pts[i * arity + arity - 1] + 1
        for t in range(total):
            slot_val[t] = -1
        for i in range(nblocks):
            assigned[i] = -1

        status = _dfs(
            arity, nblocks, total, npts, nranks, budget, &nodes,
            c_slot_block, c_slot_pos, c_block_slots, c_pts, c_first,
            slot_val, assigned, used,
        )
        if status == FOUND:
            return FOUND, [assigned[i] for i in range(nblocks)]
        return status, None
    finally:
        free(c_slot_block)
        free(c_slot_pos)
        free(c_block_slots)
        free(c_pts)
        free(c_first)
        free(slot_val)
        free(assigned)
        free(used)


cdef int _fits(int arity, int total, long nranks, int b, long *pt_vals,
               int *block_slots, long *slot_val) noexcept:
    cdef int s, idx, j
    cdef long v, w
    for s in range(arity):
        idx = block_slots[b * arity + s]
        v = pt_vals[s]
        j = idx - 1
        while j >= 0 and slot_val[j] < 0:
            j -= 1
        w = slot_val[j] if j >= 0 else -1
        if v - w < idx - j:
            return 0
        j = idx + 1
        while j < total and slot_val[j] < 0:
            j += 1
        w = slot_val[j] if j < total else nranks
        if w - v < j - idx:
            return 0
    return 1


cdef int _dfs(int arity, int nblocks, int total, int npts, long nranks,
              long budget, long *nodes, int *slot_block, int *slot_pos,
              int *block_slots, long *pts, long *first, long *slot_val,
              int *assigned, char *used, int t=0, long last=-1) noexcept:
    cdef int b, s, p, s2, r, lo, hi, mid
    cdef long v
    if t == total:
        return 0  # FOUND
    b = slot_block[t]
    s = slot_pos[t]
    if s > 0:
        v = pts[assigned[b] * arity + s]
        if v > last:
            return _dfs(arity, nblocks, total, npts, nranks, budget, nodes,
                        slot_block, slot_pos, block_slots, pts, first,
                        slot_val, assigned, used, t + 1, v)
        return 1  # NONE
    # binary search: first point with first coordinate > last
    lo, hi = 0, npts
    while lo < hi:
        mid = (lo + hi) // 2
        if first[mid] <= last:
            lo = mid + 1
        else:
            hi = mid
    for p in range(lo, npts):
        if used[p]:
            continue
        nodes[0] += 1
        if nodes[0] > budget:
            return 2  # BUDGET
        if not _fits(arity, total, nranks, b, pts + p * arity, block_slots, slot_val):
            continue
        assigned[b] = p
        used[p] = 1
        for s2 in range(arity):
            slot_val[block_slots[b * arity + s2]] = pts[p * arity + s2]
        r = _dfs(arity, nblocks, total, npts, nranks, budget, nodes,
                 slot_block, slot_pos, block_slots, pts, first,
                 slot_val, assigned, used, t + 1, pts[p * arity])
        used[p] = 0
        for s2 in range(arity):
            slot_val[block_slots[b * arity + s2]] = -1
        if r == 0:
            return 0
        assigned[b] = -1
        if r == 2:
            return 2
    return 1
