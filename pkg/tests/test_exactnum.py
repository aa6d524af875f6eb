import random
from fractions import Fraction as F
from math import gcd

import pytest

from plconj.exactnum import (
    Dyadic,
    Pow2,
    decompose,
    is_dyadic,
    is_pow2,
    order2mod,
    solve_exponent,
)


class TestDyadic:
    def test_canonical_form(self):
        assert Dyadic(4, 2).as_pair() == (1, 0)
        assert Dyadic(0, 7).as_pair() == (0, 0)
        assert Dyadic(6, 1).as_pair() == (3, 0)
        assert Dyadic(1, -2).as_fraction() == 4

    def test_arithmetic_matches_fractions(self):
        rng = random.Random(1)
        for _ in range(300):
            a = Dyadic(rng.randrange(-999, 1000), rng.randrange(0, 12))
            b = Dyadic(rng.randrange(-999, 1000), rng.randrange(0, 12))
            assert (a + b).as_fraction() == a.as_fraction() + b.as_fraction()
            assert (a - b).as_fraction() == a.as_fraction() - b.as_fraction()
            assert (a * b).as_fraction() == a.as_fraction() * b.as_fraction()
            assert (a < b) == (a.as_fraction() < b.as_fraction())
            assert (a + b) - b == a

    def test_parse_print_round_trip(self):
        rng = random.Random(2)
        for _ in range(200):
            d = Dyadic(rng.randrange(-999, 1000), rng.randrange(0, 12))
            assert Dyadic.parse(str(d)) == d
        assert str(Dyadic(3, 2)) == "3/4"
        assert str(Dyadic(5, 0)) == "5"

    def test_rejects_non_dyadic(self):
        with pytest.raises(ValueError):
            Dyadic.from_fraction(F(1, 3))

    def test_mul_pow2(self):
        assert Dyadic(3, 2).mul_pow2(3).as_fraction() == F(3, 4) * 8


class TestPow2:
    def test_ops(self):
        assert (Pow2(3) * Pow2(-1)).exp == 2
        assert (Pow2(3) / Pow2(5)).exp == -2
        assert (Pow2(-2) ** 3).exp == -6
        assert Pow2(-1).as_fraction() == F(1, 2)
        assert Pow2(0).is_one()

    def test_predicates(self):
        assert is_pow2(F(1, 8)) and is_pow2(16)
        assert not is_pow2(F(3, 4)) and not is_pow2(0)
        assert is_dyadic(F(5, 8)) and not is_dyadic(F(1, 6))


class TestDecompose:
    @pytest.mark.parametrize(
        "value,expected",
        [
            (F(3, 17), (0, 3, 17)),
            (F(12, 17), (2, 3, 17)),
            (F(5, 8), (-3, 5, 1)),
        ],
    )
    def test_known_values(self, value, expected):
        assert decompose(value) == expected

    def test_round_trip(self):
        rng = random.Random(3)
        for _ in range(400):
            a = F(rng.randrange(1, 500), rng.randrange(1, 500))
            if not 0 < a < 1:
                continue
            t, m, n = decompose(a)
            assert m % 2 == 1 and n % 2 == 1 and gcd(m, n) == 1
            assert F(m, n) * (F(2) ** t) == a

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            decompose(F(3, 2))
        with pytest.raises(ValueError):
            decompose(F(0))


class TestOrder2Mod:
    @pytest.mark.parametrize("n,expected", [(1, 1), (7, 3), (17, 8)])
    def test_known_values(self, n, expected):
        assert order2mod(n) == expected

    def test_brute_force_all_small_odd(self):
        for n in range(1, 100, 2):
            k = order2mod(n)
            assert pow(2, k, n) == 1 % n
            assert all(pow(2, j, n) != 1 % n for j in range(1, k))

    def test_rejects_even(self):
        with pytest.raises(ValueError):
            order2mod(6)


class TestSolveExponent:
    @pytest.mark.parametrize(
        "m,u,n,expected", [(1, 13, 17, 6), (1, 3, 17, None), (5, 5, 9, 0)]
    )
    def test_known_values(self, m, u, n, expected):
        assert solve_exponent(m, u, n) == expected

    def test_against_brute_force(self):
        # exhaustive comparison with a direct search over the full period
        rng = random.Random(4)
        for n in range(1, 100, 2):
            for _ in range(6):
                m = rng.randrange(1, 2 * n, 2)
                u = rng.randrange(1, 2 * n, 2)
                if gcd(m, n) != 1 or gcd(u, n) != 1:
                    continue
                brute = None
                for r in range(order2mod(n)):
                    if (u - (1 << r) * m) % n == 0:
                        brute = r
                        break
                assert solve_exponent(m, u, n) == brute

    def test_rejects_common_factor(self):
        with pytest.raises(ValueError):
            solve_exponent(3, 5, 9)
