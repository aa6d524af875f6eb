import random
from fractions import Fraction as F

import pytest

from plconj.conj import (
    ConjWitness,
    Obstruction,
    ObstructionKind,
    conjugate,
    conjugate_decide,
    conjugate_pl20,
    conjugate_pl20_decide,
    verify,
)
from plconj.plmap import PLMap, conjugate_by, from_partition, invert, power
from plconj.randgen import random_below, random_conjugate_pair, random_element


class TestVerify:
    def test_known_values(self, x0, x1):
        assert verify(x0, x0, PLMap.identity())
        assert verify(x0, x0, x0)
        assert not verify(x0, x1, PLMap.identity())

    def test_domain_mismatch(self, x0):
        from plconj.exactnum import Dyadic
        from plconj.plmap import Interval

        with pytest.raises(ValueError):
            verify(x0, x0, PLMap.identity(Interval(Dyadic(0), Dyadic(1, 1))))


class TestConjugatePL20:
    def test_same_map(self, x0):
        w = conjugate_pl20(x0, x0)
        assert w is not None and verify(x0, x0, w.conjugator)

    def test_round_trips(self):
        rng = random.Random(26)
        for _ in range(40):
            y = random_below(rng)
            g = random_element(rng)
            z = conjugate_by(y, g)
            w = conjugate_pl20(y, z)
            assert w is not None and verify(y, z, w.conjugator)

    def test_crossing_round_trip(self, crossing_map):
        from plconj.reach import build_tuple_map

        g = build_tuple_map([F(1, 3), F(1, 2)], [F(1, 3), F(5, 8)])
        z = conjugate_by(crossing_map, g)
        w = conjugate_pl20(crossing_map, z)
        assert w is not None and verify(crossing_map, z, w.conjugator)

    def test_slope_obstruction(self, x0):
        w, ob = conjugate_pl20_decide(x0, power(x0, 2))
        assert w is None and ob.kind is ObstructionKind.SLOPE


class TestConjugate:
    def test_self(self, x0):
        w = conjugate(x0, x0)
        assert w is not None and verify(x0, x0, w.conjugator)

    def test_fixed_set_obstruction(self, x0, x1):
        w, ob = conjugate_decide(x0, x1)
        assert w is None and ob.kind is ObstructionKind.FIXED_SET

    def test_slope_obstruction(self, x0):
        w, ob = conjugate_decide(x0, power(x0, 2))
        assert w is None and ob.kind is ObstructionKind.SLOPE

    def test_round_trips(self):
        rng = random.Random(27)
        for _ in range(150):
            y, z, _ = random_conjugate_pair(rng)
            w = conjugate(y, z)
            assert w is not None
            assert verify(y, z, w.conjugator)

    def test_mixed_identity_cells(self, x1):
        rng = random.Random(28)
        for _ in range(30):
            g = random_element(rng)
            z = conjugate_by(x1, g)
            w = conjugate(x1, z)
            assert w is not None and verify(x1, z, w.conjugator)

    def test_symmetry(self):
        rng = random.Random(29)
        for _ in range(20):
            y, z, _ = random_conjugate_pair(rng)
            wf = conjugate(y, z)
            wb = conjugate(z, y)
            assert wf is not None and wb is not None
            assert verify(z, y, invert(wf.conjugator))
            assert verify(y, z, invert(wb.conjugator))

    def test_non_conjugate_pairs(self, x0, crossing_map):
        # same initial slope, different interior fixed structure
        assert conjugate(x0, crossing_map) is None
        # off-lattice conjugating slope cannot be fixed by any power shift
        b = PLMap([(0, 0), (F(1, 2), F(1, 8)), (F(5, 8), F(1, 4)), (1, 1)])
        assert conjugate(b, x0) is None

    def test_witness_type(self, x0):
        w = conjugate(x0, x0)
        assert isinstance(w, ConjWitness)
        _, ob = conjugate_decide(x0, power(x0, 2))
        assert isinstance(ob, Obstruction) and str(ob)
