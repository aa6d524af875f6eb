"""Elements of the group of dyadic piecewise-linear homeomorphisms.

A map is a finite list of breakpoint nodes with strictly increasing
dyadic coordinates, power-of-two segment slopes, and endpoints fixed on
the diagonal.  Canonical form (no collinear interior nodes) makes
structural equality coincide with equality of maps, which is what lets
every solver in this package return machine-checkable witnesses.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from . import kernel
from .exactnum import Dyadic, Pow2, Rat, is_dyadic


@dataclass(frozen=True)
class Interval:
    """A closed interval with dyadic endpoints."""

    lo: Dyadic
    hi: Dyadic

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("interval endpoints out of order")

    def contains(self, t) -> bool:
        return self.lo <= t <= self.hi

    def interior_contains(self, t) -> bool:
        return self.lo < t < self.hi

    def length(self) -> Dyadic:
        return self.hi - self.lo

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


UNIT = Interval(Dyadic(0), Dyadic(1))


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


class Classification(enum.Enum):
    IDENTITY = "identity"
    BELOW = "below"
    ABOVE = "above"
    MIXED = "mixed"


class PLMap:
    """An orientation-preserving PL self-homeomorphism with dyadic
    breakpoints and power-of-two slopes, fixing its interval endpoints."""

    __slots__ = ("_flat", "_hash")

    def __init__(self, nodes):
        flat = []
        for x, y in nodes:
            x = x if isinstance(x, Dyadic) else Dyadic.from_fraction(x)
            y = y if isinstance(y, Dyadic) else Dyadic.from_fraction(y)
            flat.extend((x.num, x.exp, y.num, y.exp))
        _validate_flat(flat)
        object.__setattr__(self, "_flat", kernel.canon_nodes(flat))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("PLMap is immutable")

    @classmethod
    def _from_flat(cls, flat) -> "PLMap":
        # trusted: canonical output of a kernel operation
        self = object.__new__(cls)
        object.__setattr__(self, "_flat", flat)
        object.__setattr__(self, "_hash", None)
        return self

    @classmethod
    def identity(cls, domain: Interval = UNIT) -> "PLMap":
        lo, hi = domain.lo, domain.hi
        return cls._from_flat(kernel.identity_nodes(lo.num, lo.exp, hi.num, hi.exp))

    # -- structure ---------------------------------------------------

    @property
    def flat(self):
        return self._flat

    @property
    def nodes(self) -> tuple[tuple[Dyadic, Dyadic], ...]:
        f = self._flat
        return tuple(
            (Dyadic._raw(f[i], f[i + 1]), Dyadic._raw(f[i + 2], f[i + 3]))
            for i in range(0, len(f), 4)
        )

    @property
    def domain(self) -> Interval:
        f = self._flat
        return Interval(Dyadic._raw(f[0], f[1]), Dyadic._raw(f[-4], f[-3]))

    @property
    def node_count(self) -> int:
        return len(self._flat) // 4

    def breakpoints(self) -> tuple[Dyadic, ...]:
        f = self._flat
        return tuple(Dyadic._raw(f[i], f[i + 1]) for i in range(0, len(f), 4))

    def is_identity(self) -> bool:
        return len(self._flat) == 8 and self._flat[0:2] == self._flat[2:4]

    def __eq__(self, other):
        if isinstance(other, PLMap):
            return self._flat == other._flat
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(tuple(self._flat)))
        return self._hash

    def __repr__(self):
        pts = ", ".join(f"({x},{y})" for x, y in self.nodes)
        return f"PLMap[{pts}]"

    # -- evaluation --------------------------------------------------

    def __call__(self, t):
        if isinstance(t, Dyadic):
            return Dyadic._raw(*kernel.eval_dyadic(self._flat, t.num, t.exp))
        if isinstance(t, int):
            return Dyadic._raw(*kernel.eval_dyadic(self._flat, *kernel.dy_canon(t, 0)))
        return self.eval_fraction(Fraction(t))

    def eval_fraction(self, t: Fraction) -> Fraction:
        f = self._flat
        lo = _frac(f[0], f[1])
        hi = _frac(f[-4], f[-3])
        if not lo <= t <= hi:
            raise ValueError("point outside domain")
        i = 0
        while i + 8 < len(f) and _frac(f[i + 4], f[i + 5]) <= t:
            i += 4
        slope = kernel.seg_slope_exp(*f[i : i + 8])
        x1 = _frac(f[i], f[i + 1])
        y1 = _frac(f[i + 2], f[i + 3])
        return y1 + (t - x1) * _pow2_frac(slope)

    def eval_inv(self, y):
        """Preimage of a dyadic point."""
        y = y if isinstance(y, Dyadic) else Dyadic.from_fraction(y)
        return Dyadic._raw(*kernel.eval_dyadic_inv(self._flat, y.num, y.exp))

    # -- group structure ---------------------------------------------

    def inverse(self) -> "PLMap":
        return PLMap._from_flat(kernel.invert_nodes(self._flat))

    def __pow__(self, k: int) -> "PLMap":
        return PLMap._from_flat(kernel.power_nodes(self._flat, k))


def _frac(n: int, e: int) -> Fraction:
    return Fraction(n, 1 << e) if e >= 0 else Fraction(n << -e)


def _pow2_frac(k: int) -> Fraction:
    return Fraction(1 << k) if k >= 0 else Fraction(1, 1 << -k)


def _validate_flat(flat):
    if len(flat) < 8 or len(flat) % 4:
        raise ValueError("a map needs at least two nodes")
    if flat[0:2] != flat[2:4] or flat[-4:-2] != flat[-2:]:
        raise ValueError("endpoints must be fixed")
    for i in range(0, len(flat) - 4, 4):
        if kernel.dy_cmp(flat[i], flat[i + 1], flat[i + 4], flat[i + 5]) >= 0:
            raise ValueError("breakpoints must strictly increase")
        if kernel.seg_slope_exp(*flat[i : i + 8]) is None:
            raise ValueError("segment slope is not a power of two")


def compose(f: PLMap, g: PLMap) -> PLMap:
    """Composition f∘g: t -> f(g(t)).  The two maps must share a domain."""
    if f._flat[0:2] != g._flat[0:2] or f._flat[-4:-2] != g._flat[-4:-2]:
        raise ValueError("domain mismatch")
    return PLMap._from_flat(kernel.compose_nodes(f._flat, g._flat))


def invert(f: PLMap) -> PLMap:
    return f.inverse()


def power(f: PLMap, k: int) -> PLMap:
    return f**k


def evaluate(f: PLMap, t):
    return f(t)


def conjugate_by(y: PLMap, g: PLMap) -> PLMap:
    """The conjugate t -> g⁻¹(y(g(t)))."""
    return compose(g.inverse(), compose(y, g))


def commutes(f: PLMap, g: PLMap) -> bool:
    return compose(f, g) == compose(g, f)


# -- slopes and local data -------------------------------------------


def slope_exp_right(f: PLMap, t) -> int:
    """Exponent of the slope just right of t (t < domain.hi)."""
    flat = f._flat
    tf = t.as_fraction() if isinstance(t, Dyadic) else Fraction(t)
    if not _frac(flat[0], flat[1]) <= tf < _frac(flat[-4], flat[-3]):
        raise ValueError("no segment right of point")
    i = 0
    while i + 8 < len(flat) and _frac(flat[i + 4], flat[i + 5]) <= tf:
        i += 4
    return kernel.seg_slope_exp(*flat[i : i + 8])


def slope_exp_left(f: PLMap, t) -> int:
    """Exponent of the slope just left of t (t > domain.lo)."""
    flat = f._flat
    tf = t.as_fraction() if isinstance(t, Dyadic) else Fraction(t)
    if not _frac(flat[0], flat[1]) < tf <= _frac(flat[-4], flat[-3]):
        raise ValueError("no segment left of point")
    i = 0
    while i + 8 < len(flat) and _frac(flat[i + 4], flat[i + 5]) < tf:
        i += 4
    return kernel.seg_slope_exp(*flat[i : i + 8])


def one_sided_slope(f: PLMap, t, side: Side) -> Pow2:
    """Slope of the segment adjacent to t on the given side."""
    if side is Side.RIGHT:
        return Pow2(slope_exp_right(f, t))
    return Pow2(slope_exp_left(f, t))


def first_break_after(f: PLMap, t) -> Dyadic:
    """Smallest node x-coordinate strictly greater than t."""
    tf = t.as_fraction() if isinstance(t, Dyadic) else Fraction(t)
    for x in f.breakpoints():
        if x.as_fraction() > tf:
            return x
    raise ValueError("no breakpoint after point")


def last_break_before(f: PLMap, t) -> Dyadic:
    """Largest node x-coordinate strictly smaller than t."""
    tf = t.as_fraction() if isinstance(t, Dyadic) else Fraction(t)
    for x in reversed(f.breakpoints()):
        if x.as_fraction() < tf:
            return x
    raise ValueError("no breakpoint before point")


# -- fixed-point sets ------------------------------------------------


@dataclass(frozen=True)
class IsolatedPoint:
    at: Rat

    @property
    def lo(self) -> Rat:
        return self.at

    @property
    def hi(self) -> Rat:
        return self.at

    def is_interval(self) -> bool:
        return False


@dataclass(frozen=True)
class ClosedInterval:
    lo_pt: Dyadic
    hi_pt: Dyadic

    @property
    def lo(self) -> Rat:
        return self.lo_pt.as_fraction()

    @property
    def hi(self) -> Rat:
        return self.hi_pt.as_fraction()

    def is_interval(self) -> bool:
        return True


@dataclass(frozen=True)
class FixedSet:
    """The set {t : f(t) = t}: disjoint sorted closed intervals and
    isolated rational points; always contains the domain endpoints."""

    components: tuple

    def boundary(self) -> tuple[Rat, ...]:
        pts = []
        for c in self.components:
            if c.is_interval():
                pts.extend((c.lo, c.hi))
            else:
                pts.append(c.lo)
        return tuple(pts)

    def dyadic_boundary(self) -> tuple[Dyadic, ...]:
        return tuple(Dyadic.from_fraction(p) for p in self.boundary() if is_dyadic(p))

    def interior_boundary(self, domain: Interval) -> tuple[Rat, ...]:
        lo, hi = domain.lo.as_fraction(), domain.hi.as_fraction()
        return tuple(p for p in self.boundary() if lo < p < hi)

    def interior_dyadic_boundary(self, domain: Interval) -> tuple[Dyadic, ...]:
        lo, hi = domain.lo.as_fraction(), domain.hi.as_fraction()
        return tuple(p for p in self.dyadic_boundary() if lo < p.as_fraction() < hi)

    def contains(self, t) -> bool:
        t = Fraction(t) if not isinstance(t, Fraction) else t
        return any(c.lo <= t <= c.hi for c in self.components)

    def is_discrete(self) -> bool:
        return all(not c.is_interval() for c in self.components)

    def kinds(self) -> tuple[bool, ...]:
        return tuple(c.is_interval() for c in self.components)


def fixed_set(f: PLMap) -> FixedSet:
    """Exact maximal components of the fixed-point set of f."""
    flat = f._flat
    comps = []
    for i in range(0, len(flat) - 4, 4):
        k = kernel.seg_slope_exp(*flat[i : i + 8])
        x1 = _frac(flat[i], flat[i + 1])
        y1 = _frac(flat[i + 2], flat[i + 3])
        x2 = _frac(flat[i + 4], flat[i + 5])
        if k == 0:
            if x1 == y1:
                comps.append(
                    ClosedInterval(Dyadic._raw(flat[i], flat[i + 1]), Dyadic._raw(flat[i + 4], flat[i + 5]))
                )
        else:
            s = _pow2_frac(k)
            t = (y1 - s * x1) / (1 - s)
            if x1 <= t <= x2:
                comps.append(IsolatedPoint(t))
    comps.sort(key=lambda c: c.lo)
    merged = []
    for c in comps:
        if merged and c.lo <= merged[-1].hi:
            if c.is_interval() or merged[-1].is_interval():
                if not c.is_interval():
                    continue  # point at an interval end
                if not merged[-1].is_interval():
                    merged[-1] = c
                    continue
            else:
                continue  # duplicate point from the shared node
        merged.append(c)
    return FixedSet(tuple(merged))


def classify(f: PLMap, window: Interval | None = None) -> Classification:
    """Position of the graph relative to the diagonal on a preserved window."""
    if window is not None and window != f.domain:
        f = restrict(f, window)
    if f.is_identity():
        return Classification.IDENTITY
    flat = f._flat
    below = above = False
    for i in range(4, len(flat) - 4, 4):
        c = kernel.dy_cmp(flat[i + 2], flat[i + 3], flat[i], flat[i + 1])
        if c < 0:
            below = True
        elif c > 0:
            above = True
        else:
            below = above = True  # interior node on the diagonal
    if below and not above:
        return Classification.BELOW
    if above and not below:
        return Classification.ABOVE
    return Classification.MIXED


# -- restriction, gluing, reflection ---------------------------------


def restrict(f: PLMap, window: Interval) -> PLMap:
    """Restriction to a preserved subinterval with dyadic endpoints."""
    lo, hi = window.lo, window.hi
    if not (f.domain.lo <= lo and hi <= f.domain.hi):
        raise ValueError("window outside domain")
    if f(lo) != lo or f(hi) != hi:
        raise ValueError("map does not preserve the window")
    flat = f._flat
    out = [lo.num, lo.exp, lo.num, lo.exp]
    for i in range(0, len(flat), 4):
        if (
            kernel.dy_cmp(flat[i], flat[i + 1], lo.num, lo.exp) > 0
            and kernel.dy_cmp(flat[i], flat[i + 1], hi.num, hi.exp) < 0
        ):
            out.extend(flat[i : i + 4])
    out.extend((hi.num, hi.exp, hi.num, hi.exp))
    return PLMap._from_flat(kernel.canon_nodes(out))


def glue(pieces) -> PLMap:
    """Concatenate maps on consecutive intervals into one map."""
    pieces = list(pieces)
    if not pieces:
        raise ValueError("nothing to glue")
    out = list(pieces[0]._flat)
    for p in pieces[1:]:
        if out[-4:] != p._flat[:4]:
            raise ValueError("pieces do not meet")
        out.extend(p._flat[4:])
    return PLMap._from_flat(kernel.canon_nodes(out))


def split_at(f: PLMap, cuts) -> list[PLMap]:
    """Restrictions of f to the cells of a fixed dyadic partition."""
    pts = [f.domain.lo, *cuts, f.domain.hi]
    return [restrict(f, Interval(a, b)) for a, b in zip(pts, pts[1:])]


def reflect(f: PLMap) -> PLMap:
    """Conjugate of f by the reflection about the domain midpoint sum."""
    flat = f._flat
    sn, se = kernel.dy_add(flat[0], flat[1], flat[-4], flat[-3])  # lo + hi
    out = []
    for i in range(len(flat) - 4, -4, -4):
        xn, xe = kernel.dy_sub(sn, se, flat[i], flat[i + 1])
        yn, ye = kernel.dy_sub(sn, se, flat[i + 2], flat[i + 3])
        out.extend((xn, xe, yn, ye))
    return PLMap._from_flat(kernel.canon_nodes(out))


def reflect_point(domain: Interval, t):
    s = domain.lo.as_fraction() + domain.hi.as_fraction()
    if isinstance(t, Dyadic):
        return Dyadic.from_fraction(s - t.as_fraction())
    return s - Fraction(t)


def clip_nodes(f: PLMap, lo: Dyadic, hi: Dyadic) -> list[tuple[Dyadic, Dyadic]]:
    """Graph of f on [lo, hi] as node pairs (ends interpolated)."""
    out = [(lo, f(lo))]
    for x, y in f.nodes:
        if lo < x < hi:
            out.append((x, y))
    out.append((hi, f(hi)))
    return out


def coincidence_end(f: PLMap, g: PLMap, start=None) -> Fraction:
    """Largest t with f == g on [start, t]; requires f(start) == g(start)."""
    if f.domain != g.domain:
        raise ValueError("domain mismatch")
    hi = f.domain.hi.as_fraction()
    s = f.domain.lo.as_fraction() if start is None else Fraction(start)
    if f.eval_fraction(s) != g.eval_fraction(s):
        raise ValueError("maps differ at the start point")
    pts = sorted(
        {x.as_fraction() for x in f.breakpoints()} | {x.as_fraction() for x in g.breakpoints()}
    )
    cur = s
    while cur < hi:
        if slope_exp_right(f, cur) != slope_exp_right(g, cur):
            return cur
        cur = min((p for p in pts if p > cur), default=hi)
    return hi


# -- partition maps (Cannon-Floyd-Parry construction) -----------------


def _std_cuts(lo: Dyadic, hi: Dyadic) -> list[Dyadic]:
    """Cut points decomposing [lo, hi] into standard dyadic intervals,
    greedily taking the largest aligned interval at each step."""
    cuts = [lo]
    cur = lo
    while cur < hi:
        j = max(cur.exp, 0)
        while True:
            end = cur + Dyadic(1, j)
            if end <= hi:
                break
            j += 1
        cuts.append(end)
        cur = end
    return cuts


def _split_widest(cuts: list[Dyadic]):
    widest = 0
    width = cuts[1] - cuts[0]
    for i in range(1, len(cuts) - 1):
        w = cuts[i + 1] - cuts[i]
        if width < w:
            widest, width = i, w
    mid = cuts[widest] + width.mul_pow2(-1)
    cuts.insert(widest + 1, mid)


def _cell_nodes(a: Dyadic, b: Dyadic, c: Dyadic, d: Dyadic):
    """Nodes of a PL map [a,b] -> [c,d] with power-of-two slopes."""
    src = _std_cuts(a, b)
    dst = _std_cuts(c, d)
    while len(src) < len(dst):
        _split_widest(src)
    while len(dst) < len(src):
        _split_widest(dst)
    return list(zip(src, dst))


def partition_map_flat(xs, ys):
    """Flat nodes of a PL map carrying the partition xs onto ys."""
    if len(xs) != len(ys):
        raise ValueError("partitions must have equal length")
    if len(xs) < 2:
        raise ValueError("partitions need at least two points")
    xs = [x if isinstance(x, Dyadic) else Dyadic.from_fraction(x) for x in xs]
    ys = [y if isinstance(y, Dyadic) else Dyadic.from_fraction(y) for y in ys]
    for a, b in zip(xs, xs[1:]):
        if not a < b:
            raise ValueError("partition must strictly increase")
    for a, b in zip(ys, ys[1:]):
        if not a < b:
            raise ValueError("partition must strictly increase")
    flat = []
    for i in range(len(xs) - 1):
        for x, y in _cell_nodes(xs[i], xs[i + 1], ys[i], ys[i + 1])[:-1]:
            flat.extend((x.num, x.exp, y.num, y.exp))
    flat.extend((xs[-1].num, xs[-1].exp, ys[-1].num, ys[-1].exp))
    return kernel.canon_nodes(flat)


def from_partition(xs, ys) -> PLMap:
    """A map of the group carrying each x_i to y_i (extra breakpoints may
    be inserted to keep all slopes powers of two)."""
    flat = partition_map_flat(xs, ys)
    if flat[0:2] != flat[2:4] or flat[-4:-2] != flat[-2:]:
        raise ValueError("partitions must share their endpoints")
    return PLMap._from_flat(flat)


def transport_to(f: PLMap, target: Interval) -> PLMap:
    """Carry f to another interval through a fixed partition map."""
    iso = partition_map_flat([f.domain.lo, f.domain.hi], [target.lo, target.hi])
    moved = kernel.compose_nodes(kernel.compose_nodes(iso, f._flat), kernel.invert_nodes(iso))
    return PLMap._from_flat(moved)


# -- extension of partial maps ----------------------------------------


def _piece_flat(piece):
    flat = []
    for x, y in piece:
        x = x if isinstance(x, Dyadic) else Dyadic.from_fraction(x)
        y = y if isinstance(y, Dyadic) else Dyadic.from_fraction(y)
        flat.extend((x.num, x.exp, y.num, y.exp))
    if len(flat) < 8:
        raise ValueError("a partial piece needs at least two nodes")
    for i in range(0, len(flat) - 4, 4):
        if kernel.dy_cmp(flat[i], flat[i + 1], flat[i + 4], flat[i + 5]) >= 0:
            raise ValueError("piece breakpoints must strictly increase")
        if kernel.seg_slope_exp(*flat[i : i + 8]) is None:
            raise ValueError("piece slope is not a power of two")
    return flat


def extend_partial(pieces, point_pairs=(), domain: Interval = UNIT) -> PLMap:
    """Extend disjoint partial PL graphs (plus optional isolated dyadic
    point constraints) to a map of the whole interval.

    Each piece is a sequence of (x, y) dyadic node pairs covering its own
    closed interval; pieces must be pairwise disjoint and ordered on both
    the source and the target side.  An empty input yields the identity.
    """
    events = [("piece", _piece_flat(p)) for p in pieces]
    for a, b in point_pairs:
        a = a if isinstance(a, Dyadic) else Dyadic.from_fraction(a)
        b = b if isinstance(b, Dyadic) else Dyadic.from_fraction(b)
        events.append(("point", [a.num, a.exp, b.num, b.exp]))
    events.sort(key=lambda e: _frac(e[1][0], e[1][1]))
    if not events:
        return PLMap.identity(domain)

    lo, hi = domain.lo, domain.hi
    xs, ys = [lo], [lo]
    for kind, flat in events:
        x0, y0 = Dyadic._raw(flat[0], flat[1]), Dyadic._raw(flat[2], flat[3])
        if x0 == lo or y0 == lo:
            if not (x0 == lo and y0 == lo and kind == "piece"):
                raise ValueError("piece touches the left endpoint without fixing it")
            xs.pop(), ys.pop()
        xs.append(x0)
        ys.append(y0)
        if kind == "piece":
            xs.append(Dyadic._raw(flat[-4], flat[-3]))
            ys.append(Dyadic._raw(flat[-2], flat[-1]))
    if xs[-1] == hi or ys[-1] == hi:
        if not (xs[-1] == hi and ys[-1] == hi):
            raise ValueError("piece touches the right endpoint without fixing it")
    else:
        xs.append(hi)
        ys.append(hi)
    for seq in (xs, ys):
        for a, b in zip(seq, seq[1:]):
            if not a < b:
                raise ValueError("pieces overlap or leave the interval")

    base = partition_map_flat(xs, ys)
    out = []
    pi = 0  # next piece event to splice in
    pieces_flat = [flat for kind, flat in events if kind == "piece"]
    i = 0
    while i < len(base):
        if pi < len(pieces_flat) and kernel.dy_cmp(
            base[i], base[i + 1], pieces_flat[pi][0], pieces_flat[pi][1]
        ) >= 0:
            # the base graph passes through the piece endpoints even when
            # canonicalisation removed them as nodes; splice by position
            pf = pieces_flat[pi]
            out.extend(pf)
            while i < len(base) and kernel.dy_cmp(base[i], base[i + 1], pf[-4], pf[-3]) <= 0:
                i += 4
            pi += 1
        else:
            out.extend(base[i : i + 4])
            i += 4
    return PLMap._from_flat(kernel.canon_nodes(out))


# -- linearity boxes ---------------------------------------------------


@dataclass(frozen=True)
class LinearityBox:
    """A square neighbourhood of a domain endpoint on which two compared
    maps agree and are linear with a common slope != 1; any conjugator is
    forced to be linear inside it."""

    anchor: Dyadic
    extent: Dyadic
    slope: Pow2


def initial_box(y: PLMap, z: PLMap) -> LinearityBox | None:
    if y.domain != z.domain:
        raise ValueError("domain mismatch")
    lo = y.domain.lo
    ky = slope_exp_right(y, lo)
    if ky != slope_exp_right(z, lo) or ky == 0:
        return None
    extent = min(first_break_after(y, lo), first_break_after(z, lo))
    return LinearityBox(lo, extent, Pow2(ky))


def final_box(y: PLMap, z: PLMap) -> LinearityBox | None:
    if y.domain != z.domain:
        raise ValueError("domain mismatch")
    hi = y.domain.hi
    ky = slope_exp_left(y, hi)
    if ky != slope_exp_left(z, hi) or ky == 0:
        return None
    extent = max(last_break_before(y, hi), last_break_before(z, hi))
    return LinearityBox(hi, extent, Pow2(ky))


# -- misc helpers ------------------------------------------------------


def simplest_dyadic_between(lo, hi) -> Dyadic:
    """The dyadic k/2**j with smallest j (then smallest k) in (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("empty interval")
    j = 0
    while True:
        k = (lo * (1 << j)).__floor__() + 1
        if Fraction(k, 1 << j) < hi:
            return Dyadic(k, j)
        j += 1
