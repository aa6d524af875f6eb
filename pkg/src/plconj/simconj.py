"""Simultaneous conjugacy: conjugation constrained to an intersection of
centralizers, solved by induction over the tuple.

The hard case is a cyclic constraint factor: deciding whether some power
of a fixed generator conjugates one map to another reduces, through the
slope-exponent lattice, to a power equation X^k = G0 . Y^k with G0 of
initial slope 1.  Away from degenerate cases the solution set of such an
equation is bounded by explicitly computable integers, so a finite scan
with exact verification decides it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .central import (
    CentralizerDesc,
    FactorKind,
    centralizer,
    intersect_centralizers,
)
from .conj import conjugate, verify
from .exactnum import Dyadic, is_dyadic
from .plmap import (
    Classification,
    Interval,
    PLMap,
    classify,
    coincidence_end,
    compose,
    conjugate_by,
    fixed_set,
    glue,
    reflect,
    reflect_point,
    restrict,
    slope_exp_left,
    slope_exp_right,
    split_at,
)
from .reach import build_tuple_map, orbit_search
from .stair import conjugator_with_value


@dataclass
class PowerEquation:
    """The equation X^k = G0∘Y^k together with the substitution taking a
    solution k back to the original power of the cyclic generator."""

    X: PLMap
    Y: PLMap
    G0: PLMap
    m_coeff: int
    m0: int
    n_coeff: int
    n0: int
    k_bounds: tuple[int, int] | None = None

    def power_for(self, k: int) -> int:
        return self.m_coeff * k + self.m0


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def reduce_power_equation(xhat: PLMap, yhat: PLMap, g0: PLMap) -> PowerEquation | None:
    """Rewrite "some power of xhat equals g0 followed by a power of yhat"
    as a single-parameter power equation, or None when the slope lattice
    obstructs it."""
    lo = xhat.domain.lo
    alpha = slope_exp_right(xhat, lo)
    beta = slope_exp_right(yhat, lo)
    gamma = slope_exp_right(g0, lo)
    if alpha == 0 or beta == 0:
        raise ValueError("cyclic generators cannot have initial slope 1")
    d, s, t = _egcd(alpha, beta)
    if gamma % d:
        return None
    m0 = s * (gamma // d)
    n0 = -t * (gamma // d)
    assert alpha * m0 - beta * n0 == gamma
    eq = PowerEquation(
        X=xhat ** (beta // d),
        Y=yhat ** (alpha // d),
        G0=compose(xhat**-m0, compose(g0, yhat**n0)),
        m_coeff=beta // d,
        m0=m0,
        n_coeff=alpha // d,
        n0=n0,
    )
    assert slope_exp_right(eq.G0, lo) == 0
    return eq


def _cap(f: Fraction, hi: Fraction) -> Fraction:
    return hi if f > hi else f


def _upper_bound(a_map: PLMap, b_map: PLMap, w: PLMap, lo: Fraction, hi: Fraction) -> int:
    """Least k0 such that A^k = W∘B^k has no solution k >= k0 on [lo, hi];
    A, B strictly below the diagonal there, W the identity near lo.
    Returns 0 in the degenerate case A == B on the cell."""
    t_div = _cap(coincidence_end(a_map, b_map, lo), hi)
    if t_div >= hi:
        return 0
    w_div = _cap(coincidence_end(w, PLMap.identity(w.domain), lo), hi)
    theta = min(t_div, w_div)
    assert theta > lo, "equation data must coincide on an initial piece"
    nxt = min(
        (p.as_fraction() for p in (*a_map.breakpoints(), *b_map.breakpoints()) if t_div < p.as_fraction() < hi),
        default=hi,
    )
    psi = (t_div + nxt) / 2
    runner = b_map if a_map.eval_fraction(psi) < b_map.eval_fraction(psi) else a_map
    k = 0
    t = psi
    while t >= theta:
        t = runner.eval_fraction(t)
        k += 1
    return k


def bound_K(eq: PowerEquation) -> tuple[int, int]:
    """Computable bounds [l0, k0] containing every solution of the power
    equation; requires X != Y and both strictly below the diagonal."""
    if eq.X == eq.Y:
        raise ValueError("degenerate equation: X == Y is solvable iff G0 is the identity")
    if classify(eq.X) is not Classification.BELOW or classify(eq.Y) is not Classification.BELOW:
        raise ValueError("bounds require maps strictly below the diagonal")
    lo = eq.X.domain.lo.as_fraction()
    hi = eq.X.domain.hi.as_fraction()
    k0 = _upper_bound(eq.X, eq.Y, eq.G0, lo, hi)
    xt = conjugate_by(eq.X, eq.G0)
    l0 = -_upper_bound(eq.Y, xt, eq.G0, lo, hi)
    eq.k_bounds = (l0, k0)
    return l0, k0


def _interior_fixed_points(f: PLMap) -> list[Fraction]:
    d = fixed_set(f)
    lo, hi = f.domain.lo.as_fraction(), f.domain.hi.as_fraction()
    pts = []
    for c in d.components:
        assert not c.is_interval() or c.lo in (lo, hi) and c.hi in (lo, hi), (
            "powers of cyclic generators have isolated fixed points"
        )
        if lo < c.lo < hi:
            pts.append(Fraction(c.lo))
    return pts


def _holds(eq_x: PLMap, eq_y: PLMap, g0: PLMap, k: int) -> bool:
    return eq_x**k == compose(g0, eq_y**k)


def solve_power_equation(x: PLMap, y: PLMap, g0: PLMap) -> int | None:
    """Some k with x^k == g0∘y^k, or None.  g0 must fix the interval ends
    with slope 1 at the left end."""
    if x == y:
        return 0 if g0.is_identity() else None
    dx = _interior_fixed_points(x)
    dy = _interior_fixed_points(y)
    if dx != dy:
        sym = sorted(set(dx) ^ set(dy))
        tau = sym[0]
        if tau in dy:
            k = orbit_search(x, tau, g0.eval_fraction(tau))
        else:
            k = orbit_search(y, tau, g0.inverse().eval_fraction(tau))
        if k is None:
            return None
        return k if _holds(x, y, g0, k) else None

    for r in dx:
        if g0.eval_fraction(r) != r:
            return None
    lo_f = x.domain.lo.as_fraction()
    hi_f = x.domain.hi.as_fraction()
    # slope equations at the common fixed points and the interval ends:
    # exponents must satisfy k*(a - b) = g at every such point
    probes = []
    for r in dx:
        probes.append((slope_exp_right(x, r), slope_exp_right(y, r), slope_exp_right(g0, r)))
    probes.append((slope_exp_left(x, hi_f), slope_exp_left(y, hi_f), slope_exp_left(g0, hi_f)))
    for a, b, g in probes:
        if a != b:
            if g % (a - b):
                return None
            k = g // (a - b)
            return k if _holds(x, y, g0, k) else None
        if g != 0:
            return None

    cells = list(zip([lo_f, *dx], [*dx, hi_f]))
    for clo, chi in cells:
        if _cap(coincidence_end(x, y, clo), chi) < chi:
            break
    else:
        raise AssertionError("x != y must diverge inside some cell")
    xs, ys_, ws = x, y, g0
    if slope_exp_right(x, clo) > 0:
        xs, ys_, ws = reflect(x), reflect(y), reflect(g0)
        clo, chi = reflect_point(x.domain, chi), reflect_point(x.domain, clo)
    k0 = _upper_bound(xs, ys_, ws, clo, chi)
    l0 = -_upper_bound(ys_, conjugate_by(xs, ws), ws, clo, chi)
    for k in range(l0, k0 + 1):
        if _holds(x, y, g0, k):
            return k
    return None


def solve_in_cyclic(xhat: PLMap, y: PLMap, z: PLMap) -> int | None:
    """Some k with xhat^-k ∘ y ∘ xhat^k == z, or None; the centralizer of
    xhat on the working interval must be generated by xhat."""
    if not all(not is_dyadic(p) for p in _interior_fixed_points(xhat)):
        raise AssertionError("cyclic generator with an interior dyadic fixed point")
    w = conjugate(y, z)
    if w is None:
        return None
    g0 = w.conjugator
    desc = centralizer(z)
    if len(desc.factors) >= 2:
        # some interior dyadic point is fixed by everything commuting
        # with z, hence carried the same way by every conjugator
        tau = desc.partition[1]
        if xhat(tau) == tau:
            raise AssertionError("generator fixes an interior dyadic point of the target")
        k = orbit_search(xhat, tau.as_fraction(), g0.eval_fraction(tau.as_fraction()))
        if k is None:
            return None
        return k if conjugate_by(y, xhat**k) == z else None
    if desc.factors[0].kind is FactorKind.FULL:
        # z is the identity, so only the identity is conjugate to it
        return 0 if y == z else None
    yhat = desc.factors[0].generator
    eq = reduce_power_equation(xhat, yhat, g0)
    if eq is None:
        return None
    k = solve_power_equation(eq.X, eq.Y, eq.G0)
    if k is None:
        return None
    m = eq.power_for(k)
    return m if conjugate_by(y, xhat**m) == z else None


def match_fixed_sets_in(desc: CentralizerDesc, y: PLMap, z: PLMap) -> PLMap | None:
    """A member g of the described group with g(D(y)) = D(z), or None."""
    domain = desc.domain
    if y.domain != domain or z.domain != domain:
        raise ValueError("domain mismatch")
    dy, dz = fixed_set(y), fixed_set(z)
    if len(dy.components) != len(dz.components) or dy.kinds() != dz.kinds():
        return None
    pairs = list(zip(dy.interior_boundary(domain), dz.interior_boundary(domain)))
    lam_pts = {p.as_fraction() for p in desc.partition[1:-1]}
    cell_pairs = {f.interval: [] for f in desc.factors}
    for a, b in pairs:
        if a in lam_pts or b in lam_pts:
            if a != b:
                return None
            continue  # pinned by the partition; no constraint left
        placed = False
        for f in desc.factors:
            if f.interval.lo.as_fraction() < a < f.interval.hi.as_fraction():
                if not f.interval.lo.as_fraction() < b < f.interval.hi.as_fraction():
                    return None
                cell_pairs[f.interval].append((a, b))
                placed = True
                break
        assert placed
    pieces = []
    for f in desc.factors:
        pts = cell_pairs[f.interval]
        if f.kind is FactorKind.TRIVIAL:
            if any(a != b for a, b in pts):
                return None
            pieces.append(PLMap.identity(f.interval))
        elif f.kind is FactorKind.FULL:
            if not pts:
                pieces.append(PLMap.identity(f.interval))
                continue
            piece = build_tuple_map([a for a, _ in pts], [b for _, b in pts], f.interval)
            if piece is None:
                return None
            pieces.append(piece)
        else:
            c = f.generator
            v = None
            for a, b in pts:
                if c.eval_fraction(a) == a:
                    if a != b:
                        return None
                    continue
                vi = orbit_search(c, a, b)
                if vi is None or (v is not None and vi != v):
                    return None
                v = vi
            pieces.append(c ** (v or 0))
    g = glue(pieces)
    for cy, cz in zip(dy.components, dz.components):
        if g.eval_fraction(Fraction(cy.lo)) != Fraction(cz.lo):
            return None
        if g.eval_fraction(Fraction(cy.hi)) != Fraction(cz.hi):
            return None
    return g


def conjugate_in_centralizer(xs, y: PLMap, z: PLMap) -> PLMap | None:
    """Some g commuting with every member of xs such that g⁻¹∘y∘g == z,
    or None."""
    xs = list(xs)
    if not xs:
        w = conjugate(y, z)
        return None if w is None else w.conjugator
    domain = y.domain
    if z.domain != domain or any(x.domain != domain for x in xs):
        raise ValueError("domain mismatch")
    desc = intersect_centralizers(xs)
    g1 = match_fixed_sets_in(desc, y, z)
    if g1 is None:
        return None
    yhat = conjugate_by(y, g1.inverse())  # now D(yhat) == D(z)
    cuts = fixed_set(z).interior_dyadic_boundary(domain)
    lam_interior = [p.as_fraction() for p in desc.partition[1:-1]]

    pieces = []
    for ycell, zcell in zip(split_at(yhat, cuts), split_at(z, cuts)):
        cell = ycell.domain
        if ycell.is_identity():
            if not zcell.is_identity():
                return None
            pieces.append(PLMap.identity(cell))
            continue
        inner_lams = [p for p in lam_interior if cell.lo.as_fraction() < p < cell.hi.as_fraction()]
        if inner_lams:
            lam = inner_lams[0]
            cand = conjugator_with_value(ycell, zcell, lam, lam)
            if cand is None or any(cand.eval_fraction(p) != p for p in inner_lams[1:]):
                return None
            pieces.append(cand)
            continue
        factor = next(
            f
            for f in desc.factors
            if f.interval.lo.as_fraction() <= cell.lo.as_fraction()
            and cell.hi.as_fraction() <= f.interval.hi.as_fraction()
        )
        if factor.kind is FactorKind.TRIVIAL:
            if ycell != zcell:
                return None
            pieces.append(PLMap.identity(cell))
        elif factor.kind is FactorKind.FULL:
            w = conjugate(ycell, zcell)
            if w is None:
                return None
            pieces.append(w.conjugator)
        else:
            if factor.interval == cell:
                k = solve_in_cyclic(factor.generator, ycell, zcell)
                if k is None:
                    return None
                pieces.append(factor.generator**k)
            else:
                # powers of the generator move the fixed cut points
                # interior to this factor, so only the identity remains
                if ycell != zcell:
                    return None
                pieces.append(PLMap.identity(cell))
    h = glue(pieces)
    g = compose(g1.inverse(), h)
    if not verify(y, z, g):
        return None
    if any(not verify(x, x, g) for x in xs):
        return None
    return g


def simultaneous_conjugate(xs, ys) -> PLMap | None:
    """One g with g⁻¹∘x_i∘g == y_i for every i, or None."""
    xs, ys = list(xs), list(ys)
    if len(xs) != len(ys):
        raise ValueError("tuples must have equal length")
    if not xs:
        raise ValueError("tuples must be nonempty")
    w = conjugate(xs[0], ys[0])
    if w is None:
        return None
    g = w.conjugator
    for i in range(1, len(xs)):
        moved = conjugate_by(xs[i], g)
        h = conjugate_in_centralizer(ys[:i], moved, ys[i])
        if h is None:
            return None
        g = compose(g, h)
    assert all(verify(x, yy, g) for x, yy in zip(xs, ys))
    return g
