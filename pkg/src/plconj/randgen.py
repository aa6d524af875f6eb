"""Seeded random generation of group elements and solver test vectors."""

from __future__ import annotations

import random
from fractions import Fraction

from .plmap import PLMap, classify, Classification, conjugate_by, from_partition


def random_partition(rng: random.Random, cells: int, denom_exp: int) -> list[Fraction]:
    """0 = p0 < ... < p_cells = 1 on the grid of step 2**-denom_exp."""
    if cells >= (1 << denom_exp):
        raise ValueError("grid too coarse for that many cells")
    ticks = rng.sample(range(1, 1 << denom_exp), cells - 1)
    return [Fraction(0), *sorted(Fraction(t, 1 << denom_exp) for t in ticks), Fraction(1)]


def random_element(
    rng: random.Random, max_cells: int = 4, denom_exp: int = 8, max_nodes: int | None = None
) -> PLMap:
    """A random group element built from a pair of random partitions."""
    while True:
        cells = rng.randint(2, max_cells)
        f = from_partition(
            random_partition(rng, cells, denom_exp), random_partition(rng, cells, denom_exp)
        )
        if max_nodes is None or f.node_count <= max_nodes:
            return f


def random_below(
    rng: random.Random, max_cells: int = 4, denom_exp: int = 8, max_nodes: int | None = None
) -> PLMap:
    """A random element strictly below the diagonal (shift construction:
    each partition point is sent to its predecessor)."""
    while True:
        cells = rng.randint(2, max_cells)
        pts = random_partition(rng, cells + 1, denom_exp)
        f = from_partition([pts[0], *pts[2:]], [*pts[:-2], pts[-1]])
        if classify(f) is not Classification.BELOW:
            continue
        if max_nodes is None or f.node_count <= max_nodes:
            return f


def random_conjugate_pair(
    rng: random.Random, max_cells: int = 4, denom_exp: int = 8, max_nodes: int | None = None
) -> tuple[PLMap, PLMap, PLMap]:
    """(y, z, g) with z the conjugate of y by g."""
    y = random_element(rng, max_cells, denom_exp, max_nodes)
    g = random_element(rng, max_cells, denom_exp, max_nodes)
    return y, conjugate_by(y, g), g


def random_below_pair(
    rng: random.Random, max_cells: int = 4, denom_exp: int = 8
) -> tuple[PLMap, PLMap, PLMap]:
    """(y, z, g) with y strictly below the diagonal and z its conjugate."""
    y = random_below(rng, max_cells, denom_exp)
    g = random_element(rng, max_cells, denom_exp)
    return y, conjugate_by(y, g), g


def random_tuple_instance(
    rng: random.Random, k: int, max_cells: int = 3, denom_exp: int = 6
) -> tuple[list[PLMap], list[PLMap], PLMap]:
    """(xs, ys, g) with ys the coordinatewise conjugates of xs by one g."""
    xs = [random_element(rng, max_cells, denom_exp) for _ in range(k)]
    g = random_element(rng, max_cells, denom_exp)
    return xs, [conjugate_by(x, g) for x in xs], g
