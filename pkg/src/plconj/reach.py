"""Reachability of points and tuples under the group action, matching of
fixed-point sets, and orbit membership.

A point 2**t * m/n (m, n odd, coprime) can be carried to 2**k * u/n' by
a group element iff n == n' and u is congruent to 2**R * m mod n for
some R; the witness is an affine map t -> 2**r t + w with dyadic offset
on a small dyadic-end neighbourhood, extended to the whole interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import Dyadic, Rat, decompose, is_dyadic, solve_exponent
from .plmap import (
    UNIT,
    Interval,
    PLMap,
    extend_partial,
    fixed_set,
    kernel,
    partition_map_flat,
    power,
)


def _check_interior(p, domain: Interval, name: str):
    p = Fraction(p)
    if not domain.lo.as_fraction() < p < domain.hi.as_fraction():
        raise ValueError(f"{name} must lie strictly inside {domain}")
    return p


def can_map(a: Rat, b: Rat) -> bool:
    """Decide whether some group element carries a to b (unit interval)."""
    a = _check_interior(a, UNIT, "a")
    b = _check_interior(b, UNIT, "b")
    _, m, n = decompose(a)
    _, u, n2 = decompose(b)
    if n != n2:
        return False
    return solve_exponent(m, u, n) is not None


def _local_affine(a: Fraction, b: Fraction):
    """Slope exponent r and dyadic offset w with 2**r * a + w == b."""
    t, m, n = decompose(a)
    k, u, n2 = decompose(b)
    if n != n2:
        return None
    big_r = solve_exponent(m, u, n)
    if big_r is None:
        return None
    r = big_r + k - t
    w = Fraction(u - (1 << big_r) * m, n) * Fraction(1 << k) if k >= 0 else Fraction(
        u - (1 << big_r) * m, n << -k
    )
    assert is_dyadic(w)
    return r, w


def _pow2(r: int) -> Fraction:
    return Fraction(1 << r) if r >= 0 else Fraction(1, 1 << -r)


def _floor_dyadic(t: Fraction, j: int) -> Dyadic:
    return Dyadic((t * (1 << j)).__floor__(), j)


def _ceil_dyadic(t: Fraction, j: int) -> Dyadic:
    return Dyadic(-((-t * (1 << j)).__floor__()), j)


def build_tuple_map(points_a, points_b, domain: Interval = UNIT) -> PLMap | None:
    """A group element g with g(a_i) = b_i for all i, or None.

    Around each non-dyadic constraint the witness is the forced affine
    map on the largest dyadic-end neighbourhood that stays clear of the
    neighbouring constraints (shrinking dyadically from the half-gaps);
    dyadic constraints and the gaps are filled by a partition map.
    """
    if domain != UNIT:
        return _tuple_map_transported(points_a, points_b, domain)
    pa = [_check_interior(p, domain, "source point") for p in points_a]
    pb = [_check_interior(p, domain, "target point") for p in points_b]
    if len(pa) != len(pb):
        raise ValueError("point lists must have equal length")
    if any(not x < y for x, y in zip(pa, pa[1:])) or any(
        not x < y for x, y in zip(pb, pb[1:])
    ):
        raise ValueError("point lists must strictly increase")

    lo_f, hi_f = domain.lo.as_fraction(), domain.hi.as_fraction()
    pieces = []
    point_pairs = []
    for i, (a, b) in enumerate(zip(pa, pb)):
        if is_dyadic(a):
            if not is_dyadic(b):
                return None
            point_pairs.append((Dyadic.from_fraction(a), Dyadic.from_fraction(b)))
            continue
        loc = _local_affine(a, b)
        if loc is None:
            return None
        r, w = loc
        slope = _pow2(r)
        prev_a = pa[i - 1] if i else lo_f
        next_a = pa[i + 1] if i + 1 < len(pa) else hi_f
        prev_b = pb[i - 1] if i else lo_f
        next_b = pb[i + 1] if i + 1 < len(pb) else hi_f
        j = 1
        while True:
            gamma = _floor_dyadic(a, j)
            delta = _ceil_dyadic(a, j)
            gf, df = gamma.as_fraction(), delta.as_fraction()
            g_img, d_img = slope * gf + w, slope * df + w
            if (
                a - gf < (a - prev_a) / 2
                and df - a < (next_a - a) / 2
                and b - g_img < (b - prev_b) / 2
                and d_img - b < (next_b - b) / 2
            ):
                break
            j += 1
        pieces.append(
            [
                (gamma, Dyadic.from_fraction(g_img)),
                (delta, Dyadic.from_fraction(d_img)),
            ]
        )
    g = extend_partial(pieces, point_pairs, domain)
    for a, b in zip(pa, pb):
        assert g.eval_fraction(a) == b
    return g


def _tuple_map_transported(points_a, points_b, domain: Interval) -> PLMap | None:
    """Reachability on another interval through a fixed change of scale."""
    iso = partition_map_flat([domain.lo, domain.hi], [UNIT.lo, UNIT.hi])

    def fwd(p):
        return _eval_flat_fraction(iso, Fraction(p))

    g_unit = build_tuple_map([fwd(p) for p in points_a], [fwd(p) for p in points_b])
    if g_unit is None:
        return None
    moved = kernel.compose_nodes(
        kernel.compose_nodes(kernel.invert_nodes(iso), g_unit.flat), iso
    )
    return PLMap._from_flat(moved)


def _eval_flat_fraction(flat, t: Fraction) -> Fraction:
    def fr(n, e):
        return Fraction(n, 1 << e) if e >= 0 else Fraction(n << -e)

    i = 0
    while i + 8 < len(flat) and fr(flat[i + 4], flat[i + 5]) <= t:
        i += 4
    k = kernel.seg_slope_exp(*flat[i : i + 8])
    return fr(flat[i + 2], flat[i + 3]) + (t - fr(flat[i], flat[i + 1])) * _pow2(k)


def match_fixed_sets(y: PLMap, z: PLMap) -> PLMap | None:
    """A group element g with g(D(y)) = D(z), or None.

    The component sequences must agree in length and in kind (isolated
    point vs closed interval), and every boundary pair must pass the
    point-reachability test; the witness is the tuple map on the interior
    boundary points.
    """
    if y.domain != z.domain:
        raise ValueError("domain mismatch")
    dy, dz = fixed_set(y), fixed_set(z)
    if len(dy.components) != len(dz.components):
        return None
    if dy.kinds() != dz.kinds():
        return None
    domain = y.domain
    ay = dy.interior_boundary(domain)
    az = dz.interior_boundary(domain)
    if len(ay) != len(az):
        return None
    if not ay:
        return PLMap.identity(domain)
    g = build_tuple_map(ay, az, domain)
    if g is None:
        return None
    for cy, cz in zip(dy.components, dz.components):
        assert g.eval_fraction(Fraction(cy.lo)) == Fraction(cz.lo)
        assert g.eval_fraction(Fraction(cy.hi)) == Fraction(cz.hi)
    return g


@dataclass(frozen=True)
class OrbitBounds:
    """Nearest fixed points of h around a moved seed point; the open
    interval between them traps the full orbit of the seed."""

    phi_minus: Rat
    phi_plus: Rat


def orbit_bounds(h: PLMap, tau) -> OrbitBounds:
    tau = _check_interior(tau, h.domain, "seed")
    if h.eval_fraction(tau) == tau:
        raise ValueError("seed must be moved by the map")
    d = fixed_set(h)
    lo = max(c.hi for c in d.components if c.hi < tau)
    hi = min(c.lo for c in d.components if c.lo > tau)
    return OrbitBounds(lo, hi)


def orbit_search(h: PLMap, tau: Rat, mu: Rat) -> int | None:
    """The unique n with h**n(tau) == mu, or None.

    Monotone bracketing: orbit points march strictly toward the nearest
    fixed points, so failure is certified after finitely many steps.
    """
    tau = _check_interior(tau, h.domain, "tau")
    mu = _check_interior(mu, h.domain, "mu")
    if h.eval_fraction(tau) == tau:
        return 0 if mu == tau else None
    if mu == tau:
        return 0
    b = orbit_bounds(h, tau)
    if not b.phi_minus < mu < b.phi_plus:
        return None
    increasing = h.eval_fraction(tau) > tau
    forward = h if (mu > tau) == increasing else h.inverse()
    sign = 1 if (mu > tau) == increasing else -1
    n = 0
    t = tau
    if mu > tau:
        while t < mu:
            t = forward.eval_fraction(t)
            n += sign
    else:
        while t > mu:
            t = forward.eval_fraction(t)
            n += sign
    return n if t == mu else None
