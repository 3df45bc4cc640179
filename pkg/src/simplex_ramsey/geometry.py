"""Exact rational geometry of the simplex: points, open boxes, box unions.

All coordinates are `fractions.Fraction`; every predicate in this module is
decided exactly.  Membership questions about a finite union of open
axis-aligned boxes are answered on the *arrangement* induced by the box
endpoints: membership is constant on every open cell and on every
lower-dimensional face of the arrangement, so testing one representative
point per face is a complete decision procedure.
"""

from bisect import bisect_left, bisect_right
from fractions import Fraction
from itertools import product

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(value) -> Fraction:
    """Coerce ints, strings like '3/7' and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; use Fraction or 'p/q' strings")
    return Fraction(value)


def pt(*coords) -> tuple:
    return tuple(rat(c) for c in coords)


def in_simplex(p) -> bool:
    """Non-decreasing coordinates inside [0, 1]."""
    if not p:
        return False
    prev = ZERO
    for x in p:
        if x < prev:
            return False
        prev = x
    return p[0] >= ZERO and p[-1] <= ONE


def strictly_increasing(p) -> bool:
    return all(a < b for a, b in zip(p, p[1:])) and ZERO < p[0] and p[-1] < ONE


class Box:
    """Open axis-aligned box: a product of open intervals inside [0, 1]."""

    __slots__ = ("intervals",)

    def __init__(self, intervals):
        ivs = tuple((rat(lo), rat(hi)) for lo, hi in intervals)
        for lo, hi in ivs:
            if not (ZERO <= lo < hi <= ONE):
                raise ValueError(f"degenerate or out-of-range interval ({lo}, {hi})")
        self.intervals = ivs

    @property
    def dim(self):
        return len(self.intervals)

    def contains_point(self, p) -> bool:
        return all(lo < x < hi for x, (lo, hi) in zip(p, self.intervals))

    def contains_closed(self, p) -> bool:
        return all(lo <= x <= hi for x, (lo, hi) in zip(p, self.intervals))

    def __eq__(self, other):
        return isinstance(other, Box) and self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def __repr__(self):
        body = " x ".join(f"({lo},{hi})" for lo, hi in self.intervals)
        return f"Box[{body}]"


class EssentialSimplex:
    """Open sub-simplex D_{a,b}: points whose coordinates all lie in (a, b)."""

    __slots__ = ("a", "b", "dim")

    def __init__(self, a, b, dim):
        self.a, self.b = rat(a), rat(b)
        self.dim = dim
        if not (ZERO <= self.a < self.b <= ONE):
            raise ValueError(f"need 0 <= a < b <= 1, got ({self.a}, {self.b})")
        if dim not in (1, 2, 3):
            raise ValueError("dimension must be 1, 2 or 3")

    def as_box(self) -> Box:
        return Box([(self.a, self.b)] * self.dim)

    def __eq__(self, other):
        return (
            isinstance(other, EssentialSimplex)
            and (self.a, self.b, self.dim) == (other.a, other.b, other.dim)
        )

    def __hash__(self):
        return hash((self.a, self.b, self.dim))

    def __repr__(self):
        return f"D[{self.a},{self.b}]^{self.dim}"


def in_essential_simplex(p, D: EssentialSimplex) -> bool:
    if len(p) != D.dim:
        raise ValueError("dimension mismatch")
    return all(D.a < x < D.b for x in p)


class BoxUnionSet:
    """Finite union of open boxes; as a point set it denotes (union) ∩ Δⁿ.

    The per-axis endpoint lists and the face-coverage table of the induced
    arrangement are computed lazily and cached; instances are otherwise
    immutable.
    """

    def __init__(self, dim, boxes):
        if dim not in (1, 2, 3):
            raise ValueError("dimension must be 1, 2 or 3")
        boxes = tuple(boxes)
        for b in boxes:
            if b.dim != dim:
                raise ValueError("box dimension mismatch")
        self.dim = dim
        self.boxes = boxes
        self._axes = None
        self._cov = None

    def axes(self):
        """Per-axis sorted endpoint lists, always including 0 and 1."""
        if self._axes is None:
            self._axes = tuple(
                sorted({ZERO, ONE} | {b.intervals[k][axis_end] for b in self.boxes for axis_end in (0, 1)})
                for k in range(self.dim)
            )
        return self._axes

    def covers_point(self, p) -> bool:
        return any(b.contains_point(p) for b in self.boxes)

    def member(self, p) -> bool:
        return in_simplex(p) and self.covers_point(p)

    # -- arrangement face machinery ------------------------------------
    #
    # Axis k with coordinate list A has 2*len(A)-1 "positions":
    # even position 2i is the single coordinate A[i], odd position 2i+1 is
    # the open interval (A[i], A[i+1]).  A face of the arrangement is a
    # product of positions; box membership is constant on each face.

    def _coverage(self):
        if self._cov is None:
            axes = self.axes()
            reps = [_position_reps(a) for a in axes]
            cov = {}
            for pos in product(*(range(len(r)) for r in reps)):
                rep = tuple(reps[k][pos[k]] for k in range(self.dim))
                cov[pos] = self.covers_point(rep)
            self._cov = cov
        return self._cov

    def __eq__(self, other):
        return (
            isinstance(other, BoxUnionSet)
            and self.dim == other.dim
            and sorted(b.intervals for b in self.boxes) == sorted(b.intervals for b in other.boxes)
        )

    def __repr__(self):
        return f"BoxUnionSet(dim={self.dim}, boxes={list(self.boxes)})"


def _position_reps(axis_coords):
    reps = []
    for i, c in enumerate(axis_coords):
        reps.append(c)
        if i + 1 < len(axis_coords):
            reps.append((c + axis_coords[i + 1]) / 2)
    return reps


def _position_range(axis_coords, lo, hi):
    """Positions whose pieces meet the open interval (lo, hi)."""
    pl = 2 * bisect_right(axis_coords, lo) - 1
    pr = 2 * bisect_left(axis_coords, hi) - 1
    return pl, pr


def _face_pieces(axes, positions, clip=None):
    """Pieces (point or clipped open interval) of the face at `positions`."""
    pieces = []
    for k, p in enumerate(positions):
        A = axes[k]
        if p % 2 == 0:
            pieces.append(("pt", A[p // 2]))
        else:
            lo, hi = A[p // 2], A[p // 2 + 1]
            if clip is not None:
                lo = max(lo, clip[k][0])
                hi = min(hi, clip[k][1])
            pieces.append(("iv", lo, hi))
    return pieces


def select_increasing(pieces, strict):
    """Pick one value per piece forming an increasing sequence, or None.

    Pieces are ('pt', v) or ('iv', a, b) with a < b.  With strict=True the
    values must satisfy 0 < v_1 < ... < v_m < 1 (an interior simplex point);
    otherwise non-decreasing selections within [0, 1] are accepted, matching
    membership in Δⁿ.  Complete: returns a selection whenever one exists.
    """
    if not pieces:
        return ()
    # forward pass: per piece the infimum of feasible values and whether the
    # infimum is itself attainable; (bound_val, bound_eq) is the running
    # constraint "next value > bound_val, or >= when bound_eq"
    lows = []
    bound_val, bound_eq = ZERO, not strict
    for piece in pieces:
        if piece[0] == "pt":
            v = piece[1]
            if v < bound_val or (v == bound_val and not bound_eq):
                return None
            lows.append((v, True))
            bound_val, bound_eq = v, not strict
        else:
            _, a, b = piece
            inf = max(a, bound_val)
            att = bound_eq and a < bound_val < b
            if inf >= b:
                return None
            lows.append((inf, att))
            bound_val, bound_eq = inf, att and not strict
    # backward pass: realize values below a shrinking cap; any value strictly
    # between the forward infimum and the cap keeps both sides feasible
    values = [None] * len(pieces)
    cap_val, cap_eq = ONE, not strict
    for i in range(len(pieces) - 1, -1, -1):
        piece = pieces[i]
        f_val, f_att = lows[i]
        if piece[0] == "pt":
            v = piece[1]
            if v > cap_val or (v == cap_val and not cap_eq):
                return None
            values[i] = v
            cap_val, cap_eq = v, not strict
        else:
            _, a, b = piece
            sup = min(b, cap_val)
            if f_val < sup:
                values[i] = (f_val + sup) / 2
            elif not strict and f_att and f_val == sup and sup == cap_val and cap_eq and sup < b:
                values[i] = f_val
            else:
                return None
            cap_val, cap_eq = values[i], not strict
    # cheap paranoia check; the sequences are at most three values long
    ok = all((x < y if strict else x <= y) for x, y in zip(values, values[1:]))
    for v, piece in zip(values, pieces):
        if piece[0] == "pt":
            ok = ok and v == piece[1]
        else:
            ok = ok and piece[1] < v < piece[2]
    if strict:
        ok = ok and ZERO < values[0] and values[-1] < ONE
    return tuple(values) if ok else None


def arrangement_coords(S: BoxUnionSet):
    return [list(a) for a in S.axes()]


def contains_box(S: BoxUnionSet, B: Box) -> bool:
    """Open box B ⊆ union of the boxes of S, decided on arrangement faces.

    Faces include the lower-dimensional ones: a union covering two abutting
    half-boxes but not their shared wall does *not* contain a box straddling
    that wall.
    """
    if B.dim != S.dim:
        raise ValueError("dimension mismatch")
    axes = S.axes()
    cov = S._coverage()
    ranges = []
    for k in range(S.dim):
        lo, hi = B.intervals[k]
        pl, pr = _position_range(axes[k], lo, hi)
        ranges.append(range(pl, pr + 1))
    return all(cov[pos] for pos in product(*ranges))


def complement_point(S: BoxUnionSet, B: Box, strict=True):
    """Exact point of B ∖ S admitting an increasing coordinate selection.

    Returns the point found on the first qualifying face in lexicographic
    face order (deterministic), or None when every face of B that meets the
    simplex is covered by S.  strict=True additionally demands pairwise
    distinct, strictly increasing coordinates.
    """
    if B.dim != S.dim:
        raise ValueError("dimension mismatch")
    axes = S.axes()
    cov = S._coverage()
    ranges = []
    for k in range(S.dim):
        lo, hi = B.intervals[k]
        pl, pr = _position_range(axes[k], lo, hi)
        ranges.append(range(pl, pr + 1))
    for pos in product(*ranges):
        if cov[pos]:
            continue
        pieces = _face_pieces(axes, pos, clip=B.intervals)
        values = select_increasing(pieces, strict)
        if values is not None:
            return values
    return None


def interior_union_contains(A: BoxUnionSet, closed_boxes) -> bool:
    """int(∪ closed boxes) ∩ Δⁿ ⊆ A, decided exactly.

    A face of the joint arrangement lies in the interior of the union iff
    all full-dimensional cells adjacent to it are covered by some closed
    box; such a face must then be covered by an open box of A whenever it
    meets the simplex.
    """
    closed_boxes = list(closed_boxes)
    for b in closed_boxes:
        if b.dim != A.dim:
            raise ValueError("dimension mismatch")
    if not closed_boxes:
        return True
    n = A.dim
    axes = []
    for k in range(n):
        coords = {ZERO, ONE}
        coords.update(c for b in A.boxes for c in b.intervals[k])
        coords.update(c for b in closed_boxes for c in b.intervals[k])
        axes.append(sorted(coords))
    reps = [_position_reps(a) for a in axes]
    npos = [len(r) for r in reps]

    def cell_in_union(pos):
        rep = tuple(reps[k][pos[k]] for k in range(n))
        return any(b.contains_closed(rep) for b in closed_boxes)

    def face_in_A(pos):
        rep = tuple(reps[k][pos[k]] for k in range(n))
        return any(b.contains_point(rep) for b in A.boxes)

    ucov = {}
    for pos in product(*(range(1, m, 2) for m in npos)):
        ucov[pos] = cell_in_union(pos)

    for pos in product(*(range(m) for m in npos)):
        # adjacent full-dimensional cells: replace each coordinate position
        # by its two flanking intervals
        choices = []
        boundary = False
        for k, p in enumerate(pos):
            if p % 2 == 1:
                choices.append((p,))
            elif p == 0 or p == npos[k] - 1:
                boundary = True
                break
            else:
                choices.append((p - 1, p + 1))
        if boundary:
            continue
        if not all(ucov[c] for c in product(*choices)):
            continue
        # face lies in int(union); must be inside A wherever it meets Δⁿ
        pieces = _face_pieces(axes, pos)
        if select_increasing(pieces, strict=False) is None:
            continue
        if not face_in_A(pos):
            return False
    return True


def sample_complement(S: BoxUnionSet, D: EssentialSimplex, q: int):
    """Rational sample grid of (Δⁿ ∖ S) ∩ D, one q-per-axis grid per free cell.

    Within a cell the axis-k samples sit at offsets ((t-1)n + k)/(nq + 1),
    t = 1..q, so samples on different axes interleave; only combinations
    with strictly increasing coordinates (interior simplex points) are kept.
    """
    if D.dim != S.dim:
        raise ValueError("dimension mismatch")
    if q < 1:
        raise ValueError("q must be >= 1")
    n = S.dim
    cells_per_axis = []
    for k in range(n):
        coords = sorted({D.a, D.b} | {c for c in S.axes()[k] if D.a < c < D.b})
        cells_per_axis.append(list(zip(coords, coords[1:])))
    denom = n * q + 1
    points = []
    for cell in product(*cells_per_axis):
        # cells never straddle a box wall, so one midpoint decides coverage
        mid = tuple((lo + hi) / 2 for lo, hi in cell)
        if S.covers_point(mid):
            continue
        axis_values = [
            [lo + (hi - lo) * Fraction((t - 1) * n + k + 1, denom) for t in range(1, q + 1)]
            for k, (lo, hi) in enumerate(cell)
        ]
        for combo in product(*axis_values):
            if all(a < b for a, b in zip(combo, combo[1:])):
                points.append(combo)
    return points


def eps_dense(points, eps, n=2) -> bool:
    """Every vertex of an (eps/2)-spaced grid on Δ² is within eps of a point.

    Distances are compared on exact squared values.  This grid test is the
    operational definition of eps-density used throughout the package.
    """
    if n != 2:
        raise ValueError("density test is defined for the 2-simplex only")
    eps = rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    step = eps / 2
    values = []
    i = 0
    while i * step < ONE:
        values.append(i * step)
        i += 1
    values.append(ONE)
    eps2 = eps * eps
    for u in values:
        for v in values:
            if u > v:
                continue
            if not any((u - x) ** 2 + (v - y) ** 2 < eps2 for x, y in points):
                return False
    return True


def in_boundary_nbhd(p, eps) -> bool:
    """Sufficient three-condition test for p ∈ (∂Δ²)_eps.

    x < eps, or y > 1 - eps, or y - x < eps.  Keeps every comparison
    rational; it is sufficient but not necessary for the Euclidean
    eps-neighbourhood of the boundary.
    """
    eps = rat(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    x, y = p
    return x < eps or y > ONE - eps or y - x < eps
