"""Increasing piecewise-linear self-bijections of [0, 1].

Every homeomorphism needed by the constructions is determined by finitely
many point prescriptions, so the PL subclass (exact rational breakpoints,
linear in between) is closed under everything we do: application, inversion,
composition, and the two boundary constructions (densify a grid realization,
squeeze a staircase complement toward the boundary).
"""

from bisect import bisect_right
from fractions import Fraction

from .errors import MonotonicityError
from .geometry import ONE, ZERO, Box, BoxUnionSet, rat
from .rank import RankWitness2D


class PLHomeo:
    __slots__ = ("breakpoints",)

    def __init__(self, breakpoints):
        bps = tuple((rat(t), rat(v)) for t, v in breakpoints)
        if not bps or bps[0] != (ZERO, ZERO) or bps[-1] != (ONE, ONE):
            raise MonotonicityError("breakpoints must start at (0,0) and end at (1,1)")
        for (t1, v1), (t2, v2) in zip(bps, bps[1:]):
            if not (t1 < t2 and v1 < v2):
                raise MonotonicityError(f"breakpoints not strictly increasing: {(t1, v1)} -> {(t2, v2)}")
        self.breakpoints = bps

    def __call__(self, t):
        return self.apply_value(t)

    def apply_value(self, t) -> Fraction:
        t = rat(t)
        if not ZERO <= t <= ONE:
            raise ValueError(f"argument {t} outside [0, 1]")
        bps = self.breakpoints
        ts = [b[0] for b in bps]
        i = bisect_right(ts, t) - 1
        if i == len(bps) - 1:
            return bps[-1][1]
        (t1, v1), (t2, v2) = bps[i], bps[i + 1]
        return v1 + (v2 - v1) * (t - t1) / (t2 - t1)

    def apply_point(self, p):
        return tuple(self.apply_value(x) for x in p)

    def apply_box(self, b: Box) -> Box:
        return Box([(self.apply_value(lo), self.apply_value(hi)) for lo, hi in b.intervals])

    def apply_set(self, S: BoxUnionSet) -> BoxUnionSet:
        return BoxUnionSet(S.dim, [self.apply_box(b) for b in S.boxes])

    def apply(self, obj):
        """Diagonal action: scalars, points, boxes and box unions."""
        if isinstance(obj, BoxUnionSet):
            return self.apply_set(obj)
        if isinstance(obj, Box):
            return self.apply_box(obj)
        if isinstance(obj, tuple):
            return self.apply_point(obj)
        return self.apply_value(obj)

    def inverse(self) -> "PLHomeo":
        return PLHomeo([(v, t) for t, v in self.breakpoints])

    def compose(self, other: "PLHomeo") -> "PLHomeo":
        """(self . other): apply `other` first, then self."""
        inv = other.inverse()
        ts = {t for t, _ in other.breakpoints}
        ts.update(inv.apply_value(s) for s, _ in self.breakpoints)
        return PLHomeo(sorted((t, self.apply_value(other.apply_value(t))) for t in ts))

    def __eq__(self, other):
        return isinstance(other, PLHomeo) and self.breakpoints == other.breakpoints

    def __repr__(self):
        return f"PLHomeo({list(self.breakpoints)})"


def identity_homeo() -> PLHomeo:
    return PLHomeo([(0, 0), (1, 1)])


def through_points(src, dst) -> PLHomeo:
    """PL map fixing 0 and 1 carrying src_i to dst_i (both strictly
    increasing inside (0, 1))."""
    src = [rat(v) for v in src]
    dst = [rat(v) for v in dst]
    if len(src) != len(dst):
        raise MonotonicityError("src and dst must have equal lengths")
    for seq in (src, dst):
        if any(not ZERO < v < ONE for v in seq):
            raise MonotonicityError("prescribed points must lie strictly inside (0, 1)")
        if any(a >= b for a, b in zip(seq, seq[1:])):
            raise MonotonicityError("prescribed points must be strictly increasing")
    return PLHomeo([(ZERO, ZERO)] + list(zip(src, dst)) + [(ONE, ONE)])


def densify_from_grid(x, y, n: int) -> PLHomeo:
    """Map interleaved grid reals onto the uniform (2n+3)-denominator comb:
    g(x_i) = (2i-1)/(2n+3) and g(y_i) = 2i/(2n+3)."""
    x = [rat(v) for v in x]
    y = [rat(v) for v in y]
    if len(x) != n + 1 or len(y) != n + 1:
        raise MonotonicityError(f"need n+1 = {n + 1} values per list")
    src = []
    for xi, yi in zip(x, y):
        src.extend((xi, yi))
    denom = 2 * n + 3
    dst = [Fraction(k, denom) for k in range(1, 2 * n + 3)]
    return through_points(src, dst)


def strictify_witness(w: RankWitness2D) -> RankWitness2D:
    """Make all chain comparisons strict without breaking the witness.

    Collapsed pairs x_i = y_i leave no room for two prescriptions at one
    source point, so x_i is pulled down into the open margin above the
    previous chain value; shrinking (x0, x_i) keeps every staircase
    rectangle inside the set.  x0 = 0 and y_end = 1 are pulled inward the
    same way (prescriptions must live strictly inside (0, 1))."""
    if not w.chain_ok():
        raise MonotonicityError("witness chain is not valid")
    x0 = w.x0 if w.x0 > ZERO else w.pairs[0][0] / 2
    pairs = []
    prev = x0
    for x, y in w.pairs:
        if x == y:
            x = (prev + x) / 2
        pairs.append((x, y))
        prev = y
    y_end = w.y_end if w.y_end < ONE else (prev + ONE) / 2
    out = RankWitness2D(x0, pairs, y_end)
    assert out.chain_ok() and all(a < b for a, b in zip(_flat(out), _flat(out)[1:]))
    return out


def _flat(w: RankWitness2D):
    vals = [w.x0]
    for x, y in w.pairs:
        vals.extend((x, y))
    vals.append(w.y_end)
    return vals


def thin_from_witness(w: RankWitness2D, n: int) -> PLHomeo:
    """Map the witness chain onto the beta-comb: f(x0) = beta, f(x_i) =
    2i*beta, f(y_i) = (2i+1)*beta, f(y_end) = 1 - beta with beta = 1/(2n+4).

    The witness is strictified first (collapsed pairs carry two conflicting
    prescriptions otherwise); the strictified witness verifies against every
    set the original did."""
    if w.level != n:
        raise MonotonicityError(f"witness level {w.level} != n = {n}")
    ws = strictify_witness(w)
    beta = Fraction(1, 2 * n + 4)
    src = _flat(ws)
    dst = [beta]
    for i in range(1, n + 1):
        dst.extend((2 * i * beta, (2 * i + 1) * beta))
    dst.append(ONE - beta)
    return through_points(src, dst)
