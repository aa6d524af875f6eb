"""Roots, centralizer structure, intersections of centralizers, and the
reduction of any intersection to an intersection of two centralizers.

The centralizer of a map decomposes over the cells cut by the dyadic
boundary of its fixed set: identity cells contribute a full copy of the
group, the other cells an infinite cyclic factor generated by the
deepest root of the restriction.  Intersections intersect factor by
factor on the common refinement; a cell some constraint fails to
preserve is forced trivial.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

from .exactnum import Dyadic, Pow2
from .plmap import (
    Interval,
    PLMap,
    compose,
    fixed_set,
    glue,
    restrict,
    slope_exp_right,
    split_at,
    transport_to,
)
from .stair import StairParams, stair_pl20


class FactorKind(enum.Enum):
    TRIVIAL = "trivial"
    CYCLIC = "cyclic"
    FULL = "full"


@dataclass(frozen=True)
class CentralizerFactor:
    interval: Interval
    kind: FactorKind
    generator: PLMap | None = None

    def __post_init__(self):
        if (self.kind is FactorKind.CYCLIC) != (self.generator is not None):
            raise ValueError("exactly the cyclic factors carry a generator")


@dataclass(frozen=True)
class CentralizerDesc:
    """Partition of the interval plus one factor per cell, encoding a
    group of the shape (full group)^m x Z^n."""

    partition: tuple[Dyadic, ...]
    factors: tuple[CentralizerFactor, ...]

    @property
    def m(self) -> int:
        return sum(1 for f in self.factors if f.kind is FactorKind.FULL)

    @property
    def n(self) -> int:
        return sum(1 for f in self.factors if f.kind is FactorKind.CYCLIC)

    @property
    def domain(self) -> Interval:
        return Interval(self.partition[0], self.partition[-1])

    def cells(self) -> tuple[Interval, ...]:
        return tuple(f.interval for f in self.factors)


def _divisors_desc(n: int) -> list[int]:
    return [d for d in range(n, 0, -1) if n % d == 0]


def _nth_root_cell(x: PLMap, n: int) -> PLMap | None:
    """Root of a nontrivial cell restriction via the prescribed-slope
    conjugacy h⁻¹xh = x, h'(lo) = the n-th root of x'(lo)."""
    u = slope_exp_right(x, x.domain.lo)
    assert u != 0, "nontrivial cell restriction cannot start with slope 1"
    if u % n:
        return None
    h = stair_pl20(x, x, StairParams.left_end(Pow2(u // n)))
    if h is None or h**n != x:
        return None
    return h


def nth_root(x: PLMap, n: int) -> PLMap | None:
    """The unique h with h**n == x, or None (n >= 1)."""
    if n <= 0:
        raise ValueError("root degree must be positive")
    if n == 1:
        return x
    cuts = fixed_set(x).interior_dyadic_boundary(x.domain)
    pieces = []
    for cell in split_at(x, cuts):
        if cell.is_identity():
            pieces.append(cell)
            continue
        root = _nth_root_cell(cell, n)
        if root is None:
            return None
        pieces.append(root)
    h = glue(pieces)
    assert h**n == x
    return h


def all_roots(x: PLMap) -> list[tuple[int, PLMap]]:
    """Every (n, h) with h**n == x; finitely many, each verified."""
    if x.is_identity():
        raise ValueError("the identity has roots of every degree")
    cuts = fixed_set(x).interior_dyadic_boundary(x.domain)
    exps = [
        abs(slope_exp_right(c, c.domain.lo))
        for c in split_at(x, cuts)
        if not c.is_identity()
    ]
    g = 0
    for e in exps:
        g = e if g == 0 else gcd(g, e)
    roots = []
    for n in range(1, g + 1):
        if g % n:
            continue
        h = nth_root(x, n)
        if h is not None:
            assert h**n == x
            roots.append((n, h))
    return roots


def _cell_factor(x_cell: PLMap) -> CentralizerFactor:
    """Centralizer factor of one cell restriction."""
    cell = x_cell.domain
    if x_cell.is_identity():
        return CentralizerFactor(cell, FactorKind.FULL)
    u = slope_exp_right(x_cell, cell.lo)
    for d in _divisors_desc(abs(u)):
        gen = _nth_root_cell(x_cell, d)
        if gen is not None:
            if slope_exp_right(gen, cell.lo) > 0:
                gen = gen.inverse()  # canonical direction: shrink at the left end
            return CentralizerFactor(cell, FactorKind.CYCLIC, gen)
    raise AssertionError("every nontrivial restriction is its own 1st root")


def centralizer(x: PLMap) -> CentralizerDesc:
    """Structure of everything commuting with x."""
    cuts = fixed_set(x).interior_dyadic_boundary(x.domain)
    partition = (x.domain.lo, *cuts, x.domain.hi)
    factors = tuple(_cell_factor(c) for c in split_at(x, cuts))
    return CentralizerDesc(partition, factors)


def _cyclic_meet(a: CentralizerFactor, b: CentralizerFactor) -> CentralizerFactor:
    """Intersection of two cyclic factors on the same cell via the slope
    exponent lattice: the candidate common generators are the powers with
    exponent lcm of the two generator exponents, equal or nothing."""
    cell = a.interval
    ea = slope_exp_right(a.generator, cell.lo)
    eb = slope_exp_right(b.generator, cell.lo)
    lcm = abs(ea * eb) // gcd(abs(ea), abs(eb))
    ca = a.generator ** (-lcm // ea)
    cb = b.generator ** (-lcm // eb)
    if ca == cb:
        return CentralizerFactor(cell, FactorKind.CYCLIC, ca)
    return CentralizerFactor(cell, FactorKind.TRIVIAL)


def _meet(a: CentralizerFactor, b: CentralizerFactor) -> CentralizerFactor:
    if a.kind is FactorKind.TRIVIAL or b.kind is FactorKind.TRIVIAL:
        return CentralizerFactor(a.interval, FactorKind.TRIVIAL)
    if a.kind is FactorKind.FULL:
        return b
    if b.kind is FactorKind.FULL:
        return a
    return _cyclic_meet(a, b)


def intersect_centralizers(xs) -> CentralizerDesc:
    """Structure of the common centralizer of a nonempty list of maps."""
    xs = list(xs)
    if not xs:
        raise ValueError("need at least one map")
    domain = xs[0].domain
    if any(x.domain != domain for x in xs):
        raise ValueError("domain mismatch")
    cuts = sorted(
        {p for x in xs for p in fixed_set(x).interior_dyadic_boundary(domain)},
        key=lambda d: d.as_fraction(),
    )
    partition = (domain.lo, *cuts, domain.hi)
    factors = []
    for lo, hi in zip(partition, partition[1:]):
        cell = Interval(lo, hi)
        if any(x(lo) != lo or x(hi) != hi for x in xs):
            # some constraint moves this cell: only the identity survives
            factors.append(CentralizerFactor(cell, FactorKind.TRIVIAL))
            continue
        acc = CentralizerFactor(cell, FactorKind.FULL)
        for x in xs:
            acc = _meet(acc, _cell_factor(restrict(x, cell)))
            if acc.kind is FactorKind.TRIVIAL:
                break
        factors.append(acc)
    return CentralizerDesc(partition, tuple(factors))


def membership(desc: CentralizerDesc, g: PLMap) -> bool:
    """Decide whether g lies in the described group."""
    if g.domain != desc.domain:
        raise ValueError("domain mismatch")
    for p in desc.partition[1:-1]:
        if g(p) != p:
            return False
    for f in desc.factors:
        gc = restrict(g, f.interval)
        if f.kind is FactorKind.FULL:
            continue
        if f.kind is FactorKind.TRIVIAL:
            if not gc.is_identity():
                return False
            continue
        if gc.is_identity():
            continue
        eg = slope_exp_right(gc, f.interval.lo)
        ec = slope_exp_right(f.generator, f.interval.lo)
        if eg % ec:
            return False
        if f.generator ** (eg // ec) != gc:
            return False
    return True


# fixture pair for trivial cells of reduce_to_two: two maps below the
# diagonal, neither a power of a common root (distinct slope data)
_TRIVIAL_SEED_A = [(0, 0), ("1/2", "1/4"), ("3/4", "1/2"), (1, 1)]
_TRIVIAL_SEED_B = [(0, 0), ("1/2", "1/8"), ("5/8", "1/4"), (1, 1)]


def reduce_to_two(desc: CentralizerDesc) -> tuple[PLMap, PLMap]:
    """Two maps whose centralizers intersect in the described group."""
    def seed(nodes):
        return PLMap([(Dyadic.parse(str(a)), Dyadic.parse(str(b))) for a, b in nodes])

    w1_pieces, w2_pieces = [], []
    for f in desc.factors:
        if f.kind is FactorKind.FULL:
            w1_pieces.append(PLMap.identity(f.interval))
            w2_pieces.append(PLMap.identity(f.interval))
        elif f.kind is FactorKind.CYCLIC:
            w1_pieces.append(f.generator)
            w2_pieces.append(f.generator)
        else:
            w1_pieces.append(transport_to(seed(_TRIVIAL_SEED_A), f.interval))
            w2_pieces.append(transport_to(seed(_TRIVIAL_SEED_B), f.interval))
    return glue(w1_pieces), glue(w2_pieces)
