import random
from fractions import Fraction as F

import pytest

from plconj.plmap import (
    Interval,
    PLMap,
    classify,
    Classification,
    conjugate_by,
    evaluate,
    fixed_set,
    from_partition,
    glue,
    invert,
    power,
    restrict,
    transport_to,
)
from plconj.exactnum import Dyadic
from plconj.randgen import random_element
from plconj.reach import (
    OrbitBounds,
    build_tuple_map,
    can_map,
    match_fixed_sets,
    orbit_bounds,
    orbit_search,
)


class TestCanMap:
    def test_paper_example(self):
        assert can_map(F(1, 17), F(13, 17)) is True
        assert can_map(F(1, 17), F(3, 17)) is False

    def test_dyadic_pairs(self):
        assert can_map(F(1, 2), F(3, 4)) is True
        assert can_map(F(1, 2), F(1, 3)) is False

    def test_reflexive_symmetric(self):
        rng = random.Random(13)
        pts = [F(rng.randrange(1, 60), rng.randrange(2, 64)) for _ in range(60)]
        pts = [p for p in pts if 0 < p < 1]
        for a in pts[:20]:
            assert can_map(a, a)
        for a, b in zip(pts, pts[1:]):
            assert can_map(a, b) == can_map(b, a)

    def test_boundary_rejected(self):
        with pytest.raises(ValueError):
            can_map(F(0), F(1, 2))


class TestBuildTupleMap:
    def test_identity_constraints(self):
        g = build_tuple_map([F(1, 3), F(1, 2)], [F(1, 3), F(1, 2)])
        assert evaluate(g, F(1, 3)) == F(1, 3)
        assert evaluate(g, F(1, 2)) == F(1, 2)

    def test_paper_point(self):
        g = build_tuple_map([F(1, 17)], [F(13, 17)])
        assert g is not None and evaluate(g, F(1, 17)) == F(13, 17)

    def test_congruence_pair(self):
        g = build_tuple_map([F(1, 3), F(1, 2)], [F(2, 3), F(3, 4)])
        assert g is not None
        assert evaluate(g, F(1, 3)) == F(2, 3)
        assert evaluate(g, F(1, 2)) == F(3, 4)

    def test_infeasible(self):
        assert build_tuple_map([F(1, 17)], [F(3, 17)]) is None
        assert build_tuple_map([F(1, 2)], [F(1, 3)]) is None

    def test_non_monotone_rejected(self):
        with pytest.raises(ValueError):
            build_tuple_map([F(1, 2), F(1, 3)], [F(1, 2), F(2, 3)])

    def test_random_witnesses_verify(self):
        rng = random.Random(14)
        done = 0
        while done < 30:
            k = rng.randint(1, 4)
            pts = sorted({F(rng.randrange(1, 48), 48) for _ in range(2 * k)})
            if len(pts) < 2 * k:
                continue
            src, dst = pts[:k], pts[k:]
            if not all(can_map(a, b) for a, b in zip(src, dst)):
                continue
            g = build_tuple_map(src, dst)
            assert g is not None
            for a, b in zip(src, dst):
                assert evaluate(g, a) == b
            done += 1

    def test_other_interval(self):
        cell = Interval(Dyadic(1, 2), Dyadic(3, 2))
        g = build_tuple_map([F(1, 3)], [F(5, 12)], cell)
        assert g.domain == cell and evaluate(g, F(1, 3)) == F(5, 12)


def _with_fixed_interval(lo, hi, left, right):
    """identity on [lo, hi], the given maps transported on both sides."""
    pieces = [
        transport_to(left, Interval(Dyadic(0), Dyadic.from_fraction(lo))),
        PLMap.identity(Interval(Dyadic.from_fraction(lo), Dyadic.from_fraction(hi))),
        transport_to(right, Interval(Dyadic.from_fraction(hi), Dyadic(1))),
    ]
    return glue(pieces)


class TestMatchFixedSets:
    def test_same_map(self, x0):
        assert match_fixed_sets(x0, x0).is_identity()

    def test_interval_translation(self, x0):
        y = _with_fixed_interval(F(1, 4), F(1, 2), x0, x0)
        z = _with_fixed_interval(F(1, 2), F(3, 4), x0, x0)
        g = match_fixed_sets(y, z)
        assert g is not None
        assert evaluate(g, F(1, 4)) == F(1, 2)
        assert evaluate(g, F(1, 2)) == F(3, 4)

    def test_cardinality_obstruction(self, x0, x1):
        assert match_fixed_sets(x0, x1) is None

    def test_kind_obstruction(self, x0):
        y = _with_fixed_interval(F(1, 4), F(1, 2), x0, x0)
        z = conjugate_by(x0, x0)  # same boundary size would still differ in kind
        assert fixed_set(z).kinds() != fixed_set(y).kinds()
        assert match_fixed_sets(y, z) is None

    def test_random_conjugates_match(self):
        rng = random.Random(15)
        for _ in range(25):
            y = random_element(rng)
            g = random_element(rng)
            z = conjugate_by(y, g)
            w = match_fixed_sets(y, z)
            assert w is not None
            for c, d in zip(fixed_set(y).components, fixed_set(z).components):
                assert evaluate(w, F(c.lo)) == F(d.lo)
                assert evaluate(w, F(c.hi)) == F(d.hi)


class TestOrbitSearch:
    @pytest.mark.parametrize(
        "tau,mu,expected",
        [
            (F(1, 2), F(1, 16), 3),
            (F(1, 2), F(3, 4), -1),
            (F(1, 2), F(1, 3), None),
            (F(1, 2), F(1, 2), 0),
        ],
    )
    def test_known_values(self, x0, tau, mu, expected):
        assert orbit_search(x0, tau, mu) == expected

    def test_fixed_seed(self, x1):
        assert orbit_search(x1, F(1, 4), F(1, 4)) == 0
        assert orbit_search(x1, F(1, 4), F(3, 8)) is None

    def test_found_power_verifies(self, x0, x1):
        rng = random.Random(16)
        for _ in range(40):
            h = random_element(rng)
            tau = F(rng.randrange(1, 32), 32)
            n = rng.randrange(-6, 7)
            mu = evaluate(power(h, n), tau)
            if not 0 < mu < 1:
                continue
            got = orbit_search(h, tau, mu)
            assert got is not None
            assert evaluate(power(h, got), tau) == mu

    def test_none_is_certified(self, x0):
        # brute bracketing: 1/3 never appears among the first orbit points
        # of 1/2 and lies strictly between two consecutive ones
        pts = [evaluate(power(x0, n), F(1, 2)) for n in range(-8, 9)]
        assert F(1, 3) not in pts
        below = max(p for p in pts if p < F(1, 3))
        above = min(p for p in pts if p > F(1, 3))
        assert below < F(1, 3) < above


def test_orbit_bounds(x0, x1):
    b = orbit_bounds(x0, F(1, 2))
    assert (b.phi_minus, b.phi_plus) == (0, 1)
    b2 = orbit_bounds(x1, F(3, 4))
    assert (b2.phi_minus, b2.phi_plus) == (F(1, 2), 1)
    assert isinstance(b2, OrbitBounds)
    with pytest.raises(ValueError):
        orbit_bounds(x1, F(1, 4))  # fixed seed
