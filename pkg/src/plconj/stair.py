"""The stair construction: unique conjugators with a prescribed slope.

For two maps strictly below the diagonal that share their initial slope,
a conjugator with prescribed slope q at the left end is forced: it must
be linear inside the initial coincidence box, equal to the composite
y^(-r) . g0 . z^r up to the point z^(-r)(box edge) for the smallest r
that clears the final box, and linear from there into the right corner.
Building that forced candidate and verifying it decides existence.

Maps whose interior fixed points are isolated and non-dyadic are handled
cell by cell between crossings; a conjugator has no breakpoint at a
non-dyadic crossing, so its slope propagates across each crossing and
the cell candidates join along a single line through the crossing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from . import kernel
from .exactnum import Dyadic, Pow2, Rat, is_dyadic
from .plmap import (
    Classification,
    Interval,
    PLMap,
    classify,
    clip_nodes,
    coincidence_end,
    compose,
    conjugate_by,
    extend_partial,
    first_break_after,
    fixed_set,
    last_break_before,
    reflect,
    reflect_point,
    simplest_dyadic_between,
    slope_exp_right,
)


class AnchorKind(enum.Enum):
    LEFT_END = "left-end"
    RIGHT_END = "right-end"
    INTERIOR = "interior-fixed-point"


@dataclass(frozen=True)
class StairParams:
    """Prescribed slope and the point at which it is prescribed."""

    slope: Pow2
    anchor: AnchorKind = AnchorKind.LEFT_END
    at: Rat | None = None

    @classmethod
    def left_end(cls, slope: Pow2) -> "StairParams":
        return cls(slope, AnchorKind.LEFT_END)

    @classmethod
    def right_end(cls, slope: Pow2) -> "StairParams":
        return cls(slope, AnchorKind.RIGHT_END)

    @classmethod
    def interior_fixed_point(cls, slope: Pow2, at) -> "StairParams":
        return cls(slope, AnchorKind.INTERIOR, Fraction(at))


def _pow2_frac(k: int) -> Fraction:
    return Fraction(1 << k) if k >= 0 else Fraction(1, 1 << -k)


def _require_below(f: PLMap, name: str):
    if classify(f) is not Classification.BELOW:
        raise ValueError(f"{name} must lie strictly below the diagonal")


# -- the cell engine ---------------------------------------------------


def _g0_for(y: PLMap, a: Fraction, e: Dyadic, q_exp: int, c0: Fraction) -> PLMap:
    """Some full map linear with slope 2**q_exp on [a, e] and value a at a."""
    domain = y.domain
    if q_exp == 0:
        return PLMap.identity(domain)
    q = _pow2_frac(q_exp)
    if is_dyadic(a):
        u = Dyadic.from_fraction(a)
    else:
        lo = domain.lo.as_fraction()
        u = simplest_dyadic_between(max(lo, (lo - c0) / q), a)
    lu = Dyadic.from_fraction(q * u.as_fraction() + c0)
    le = Dyadic.from_fraction(q * e.as_fraction() + c0)
    return extend_partial([[(u, lu), (e, le)]], domain=domain)


def _cell_candidate_below(y: PLMap, z: PLMap, a: Fraction, b: Fraction, q_exp: int):
    """Forced conjugator data on a cell where y and z are strictly below
    the diagonal.  Returns (interior node flat list, outgoing slope
    exponent at b) or None.  Both maps must fix a and b."""
    if q_exp > 0:
        swapped = _cell_candidate_below(z, y, a, b, -q_exp)
        if swapped is None:
            return None
        nodes, out = swapped
        return kernel.invert_nodes(nodes), -out

    cy = slope_exp_right(y, a)
    if cy != slope_exp_right(z, a) or cy >= 0:
        return None
    e = min(first_break_after(y, a), first_break_after(z, a))
    assert e.as_fraction() < b, "a map below the diagonal must break inside the cell"
    beta = max(last_break_before(y, b), last_break_before(z, b))
    # matching final boxes: common slope into (b, b)
    ly = _slope_exp_left_at(y, b)
    if ly != _slope_exp_left_at(z, b) or ly <= 0:
        return None

    q = _pow2_frac(q_exp)
    c0 = (1 - q) * a
    if not is_dyadic(c0):
        return None  # no valid map has slope q at this fixed point
    g0 = _g0_for(y, a, e, q_exp, c0)

    p = e
    v = Dyadic.from_fraction(q * e.as_fraction() + c0)
    r = 0
    while not (p > beta and v > beta):
        p = z.eval_inv(p)
        v = y.eval_inv(v)
        r += 1
    h = compose(y**-r, compose(g0, z**r))
    assert h(p) == v

    nodes = []
    flat = h.flat
    for i in range(0, len(flat), 4):
        xf = Fraction(flat[i], 1 << flat[i + 1]) if flat[i + 1] >= 0 else Fraction(flat[i] << -flat[i + 1])
        if a < xf and kernel.dy_cmp(flat[i], flat[i + 1], p.num, p.exp) < 0:
            nodes.extend(flat[i : i + 4])
    nodes.extend((p.num, p.exp, v.num, v.exp))

    sigma = (b - v.as_fraction()) / (b - p.as_fraction())
    out = _pow2_exp_or_none(sigma)
    if out is None:
        return None
    return nodes, out


def _slope_exp_left_at(f: PLMap, b: Fraction) -> int:
    from .plmap import slope_exp_left

    return slope_exp_left(f, b)


def _pow2_exp_or_none(f: Fraction) -> int | None:
    if f <= 0:
        return None
    p, q = f.numerator, f.denominator
    if p == 1 and q == 1 << (q.bit_length() - 1):
        return -(q.bit_length() - 1)
    if q == 1 and p == 1 << (p.bit_length() - 1):
        return p.bit_length() - 1
    return None


def _cell_candidate(y: PLMap, z: PLMap, a: Fraction, b: Fraction, q_exp: int):
    """Cell dispatcher: flips above-diagonal cells to below-diagonal ones
    (same conjugator) before running the forced construction."""
    sy = slope_exp_right(y, a)
    sz = slope_exp_right(z, a)
    if sy == 0 or sz == 0 or (sy < 0) != (sz < 0):
        return None
    if sy > 0:
        y, z = y.inverse(), z.inverse()
    return _cell_candidate_below(y, z, a, b, q_exp)


def _run_cells(y: PLMap, z: PLMap, cells, q_exp: int):
    parts = []
    q = q_exp
    for a, b in cells:
        res = _cell_candidate(y, z, a, b, q)
        if res is None:
            return None
        nodes, q = res
        parts.extend(nodes)
    return parts


def _assemble(domain: Interval, parts) -> PLMap:
    lo, hi = domain.lo, domain.hi
    flat = [lo.num, lo.exp, lo.num, lo.exp, *parts, hi.num, hi.exp, hi.num, hi.exp]
    return PLMap(
        [
            (Dyadic._raw(flat[i], flat[i + 1]), Dyadic._raw(flat[i + 2], flat[i + 3]))
            for i in range(0, len(flat), 4)
        ]
    )


# -- public operations -------------------------------------------------


def identification_step(y: PLMap, z: PLMap, alpha: Dyadic) -> PLMap:
    """One stair step: given y == z on [lo, alpha], the map that is the
    identity up to alpha and y⁻¹∘z on [alpha, z⁻¹(alpha)], extended to the
    whole interval.  Conjugating y by it extends the coincidence with z
    up to z⁻¹(alpha)."""
    _require_below(y, "y")
    _require_below(z, "z")
    domain = y.domain
    if not domain.interior_contains(alpha.as_fraction()):
        raise ValueError("alpha must be interior")
    if coincidence_end(y, z) < alpha.as_fraction():
        raise ValueError("maps must coincide up to alpha")
    t_end = z.eval_inv(alpha)
    w = compose(y.inverse(), z)
    g = extend_partial([clip_nodes(w, domain.lo, t_end)], domain=domain)
    assert coincidence_end(g, PLMap.identity(domain)) >= alpha.as_fraction()
    assert coincidence_end(conjugate_by(y, g), z) >= t_end.as_fraction()
    return g


def stair_below(y: PLMap, z: PLMap, q: Pow2) -> PLMap | None:
    """The unique conjugator of two below-diagonal maps with prescribed
    slope q at the left end, or None."""
    _require_below(y, "y")
    _require_below(z, "z")
    if y.domain != z.domain:
        raise ValueError("domain mismatch")
    domain = y.domain
    res = _cell_candidate_below(y, z, domain.lo.as_fraction(), domain.hi.as_fraction(), q.exp)
    if res is None:
        return None
    g = _assemble(domain, res[0])
    if conjugate_by(y, g) != z:
        return None
    return g


def stair_below_iterative(y: PLMap, z: PLMap, q: Pow2) -> PLMap | None:
    """Same contract as stair_below, built by repeated identification
    steps instead of the closed power formula."""
    _require_below(y, "y")
    _require_below(z, "z")
    if y.domain != z.domain:
        raise ValueError("domain mismatch")
    if q.exp > 0:
        g = stair_below_iterative(z, y, q.inverse())
        return None if g is None else g.inverse()
    domain = y.domain
    a, b = domain.lo.as_fraction(), domain.hi.as_fraction()
    cy = slope_exp_right(y, a)
    if cy != slope_exp_right(z, a) or cy >= 0:
        return None
    if _slope_exp_left_at(y, b) != _slope_exp_left_at(z, b):
        return None
    e = min(first_break_after(y, a), first_break_after(z, a))
    beta = max(last_break_before(y, b), last_break_before(z, b))
    g0 = _g0_for(y, a, e, q.exp, Fraction(0) if q.exp == 0 else (1 - _pow2_frac(q.exp)) * a)

    p = e
    v = g0(e)
    r = 0
    while not (p > beta and v > beta):
        p = z.eval_inv(p)
        v = y.eval_inv(v)
        r += 1

    acc = g0
    ycur = conjugate_by(y, g0)
    alpha = e
    for _ in range(r):
        gi = identification_step(ycur, z, alpha)
        acc = compose(acc, gi)
        ycur = conjugate_by(ycur, gi)
        alpha = z.eval_inv(alpha)

    sigma = (b - acc(p).as_fraction()) / (b - p.as_fraction())
    if _pow2_exp_or_none(sigma) is None:
        return None
    flat = []
    for x, yy in clip_nodes(acc, domain.lo, p)[1:]:
        flat.extend((x.num, x.exp, yy.num, yy.exp))
    g = _assemble(domain, flat)
    if conjugate_by(y, g) != z:
        return None
    return g


def _pl20_crossings(f: PLMap) -> list[Fraction]:
    """Interior fixed points, validated isolated and non-dyadic."""
    d = fixed_set(f)
    domain = f.domain
    pts = []
    for c in d.components:
        if c.is_interval():
            if not (c.lo == c.hi == domain.lo.as_fraction() or c.lo == c.hi == domain.hi.as_fraction()):
                raise ValueError("map has an interval of fixed points")
        lo_f, hi_f = domain.lo.as_fraction(), domain.hi.as_fraction()
        if lo_f < c.lo < hi_f:
            if is_dyadic(c.lo):
                raise ValueError("map has an interior dyadic fixed point")
            pts.append(Fraction(c.lo))
    return pts


def stair_pl20(y: PLMap, z: PLMap, params: StairParams) -> PLMap | None:
    """Prescribed-slope conjugator for maps with discrete non-dyadic
    interior fixed sets; per the anchor, the slope is prescribed at the
    left end, the right end, or an interior common fixed point."""
    if y.domain != z.domain:
        raise ValueError("domain mismatch")
    cy = _pl20_crossings(y)
    cz = _pl20_crossings(z)
    if cy != cz:
        raise ValueError("interior fixed points differ")
    domain = y.domain
    lo_f, hi_f = domain.lo.as_fraction(), domain.hi.as_fraction()

    if params.anchor is AnchorKind.RIGHT_END:
        g = stair_pl20(reflect(y), reflect(z), StairParams.left_end(params.slope))
        return None if g is None else reflect(g)

    if params.anchor is AnchorKind.LEFT_END:
        pts = [lo_f, *cy, hi_f]
        parts = _run_cells(y, z, list(zip(pts, pts[1:])), params.slope.exp)
    else:
        tau = Fraction(params.at)
        if tau == lo_f:
            return stair_pl20(y, z, StairParams.left_end(params.slope))
        if tau == hi_f:
            return stair_pl20(y, z, StairParams.right_end(params.slope))
        if tau not in cy:
            raise ValueError("anchor point must be fixed by both maps")
        right_pts = [tau, *(p for p in cy if p > tau), hi_f]
        right = _run_cells(y, z, list(zip(right_pts, right_pts[1:])), params.slope.exp)
        if right is None:
            return None
        ry, rz = reflect(y), reflect(z)
        r_tau = reflect_point(domain, tau)
        left_pts = [r_tau, *(reflect_point(domain, p) for p in reversed([c for c in cy if c < tau])), hi_f]
        left_r = _run_cells(ry, rz, list(zip(left_pts, left_pts[1:])), params.slope.exp)
        if left_r is None:
            return None
        s = domain.lo + domain.hi
        left = []
        for i in range(len(left_r) - 4, -4, -4):
            xn, xe = kernel.dy_sub(s.num, s.exp, left_r[i], left_r[i + 1])
            yn, ye = kernel.dy_sub(s.num, s.exp, left_r[i + 2], left_r[i + 3])
            left.extend((xn, xe, yn, ye))
        parts = left + right

    if parts is None:
        return None
    g = _assemble(domain, parts)
    if conjugate_by(y, g) != z:
        return None
    return g


def rho(y: PLMap, z: PLMap, lam: Rat, mu: Rat) -> Pow2 | None:
    """The forced slope, at the common orbit limit, of any conjugator
    carrying lam to mu: the stabilised ratio of the forward orbits of mu
    under y and lam under z.  None when the ratio does not stabilise to
    a power of two (then no such conjugator exists)."""
    if y.domain != z.domain:
        raise ValueError("domain mismatch")
    dy, dz = fixed_set(y), fixed_set(z)
    if [(c.lo, c.hi) for c in dy.components] != [(c.lo, c.hi) for c in dz.components]:
        raise ValueError("fixed-point sets differ")
    lam, mu = Fraction(lam), Fraction(mu)
    bounds = sorted({Fraction(p) for c in dy.components for p in (c.lo, c.hi)})
    cell = None
    for p, pn in zip(bounds, bounds[1:]):
        if p < lam < pn:
            cell = (p, pn)
    if cell is None or not cell[0] < mu < cell[1]:
        raise ValueError("points must lie in the same complementary interval")

    tau = cell[0] if y.eval_fraction(lam) < lam else cell[1]
    toward_left = tau == cell[0]
    sy = _adjacent_slope_exp(y, tau, toward_left)
    sz = _adjacent_slope_exp(z, tau, toward_left)
    if sy != sz:
        return None
    zone_y = _linear_zone(y, tau, toward_left)
    zone_z = _linear_zone(z, tau, toward_left)

    p_pt, q_pt = mu, lam
    for _ in range(2):
        while not (_in_zone(p_pt, tau, zone_y) and _in_zone(q_pt, tau, zone_z)):
            p_pt = y.eval_fraction(p_pt)
            q_pt = z.eval_fraction(q_pt)
        ratio = (p_pt - tau) / (q_pt - tau)
        p_next, q_next = y.eval_fraction(p_pt), z.eval_fraction(q_pt)
        if (p_next - tau) / (q_next - tau) != ratio:
            return None
        p_pt, q_pt = p_next, q_next
    e = _pow2_exp_or_none(ratio)
    return None if e is None else Pow2(e)


def _adjacent_slope_exp(f: PLMap, tau: Fraction, toward_left: bool) -> int:
    from .plmap import slope_exp_left, slope_exp_right

    return slope_exp_right(f, tau) if toward_left else slope_exp_left(f, tau)


def _linear_zone(f: PLMap, tau: Fraction, toward_left: bool) -> Fraction:
    if toward_left:
        return first_break_after(f, tau).as_fraction()
    return last_break_before(f, tau).as_fraction()


def _in_zone(p: Fraction, tau: Fraction, border: Fraction) -> bool:
    return tau < p < border if tau < border else border < p < tau


def conjugator_with_value(y: PLMap, z: PLMap, lam: Rat, mu: Rat) -> PLMap | None:
    """The unique conjugator g with g(lam) = mu, or None.  The forced
    slope at the orbit-limit point is computed first; the prescribed
    slope stair anchored there then produces the only candidate."""
    lam, mu = Fraction(lam), Fraction(mu)
    if y.eval_fraction(lam) == lam:
        raise ValueError("lam must be moved by y")
    slope = rho(y, z, lam, mu)
    if slope is None:
        return None
    dy = fixed_set(y)
    bounds = sorted({Fraction(p) for c in dy.components for p in (c.lo, c.hi)})
    cell = None
    for p, pn in zip(bounds, bounds[1:]):
        if p < lam < pn:
            cell = (p, pn)
    tau = cell[0] if y.eval_fraction(lam) < lam else cell[1]
    domain = y.domain
    if tau == domain.lo.as_fraction():
        params = StairParams.left_end(slope)
    elif tau == domain.hi.as_fraction():
        params = StairParams.right_end(slope)
    else:
        params = StairParams.interior_fixed_point(slope, tau)
    g = stair_pl20(y, z, params)
    if g is None or g.eval_fraction(lam) != mu:
        return None
    return g
