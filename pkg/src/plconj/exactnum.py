"""Exact arithmetic over the dyadic rationals and Q, plus the
number-theoretic test deciding when one rational can be carried to
another by a dyadic PL homeomorphism.

``Rat`` is the standard-library ``fractions.Fraction`` (exact, lowest
terms, positive denominator).  ``Dyadic`` is a lighter representation
num / 2**exp used for breakpoints and map values, where normalisation is
a bit-shift instead of a gcd.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from . import kernel

Rat = Fraction


class Dyadic:
    """An element of Z[1/2] stored as num / 2**exp with num odd (or 0).

    Canonical form is enforced on construction, so structural equality
    coincides with numeric equality.  Values are immutable.
    """

    __slots__ = ("num", "exp")

    def __init__(self, num: int, exp: int = 0):
        num, exp = kernel.dy_canon(num, exp)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    @classmethod
    def _raw(cls, num: int, exp: int) -> "Dyadic":
        # trusted constructor: (num, exp) already canonical
        self = object.__new__(cls)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)
        return self

    @classmethod
    def from_fraction(cls, value) -> "Dyadic":
        f = Fraction(value)
        den = f.denominator
        e = den.bit_length() - 1
        if den != 1 << e:
            raise ValueError(f"{f} is not a dyadic rational")
        return cls(f.numerator, e)

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        """Parse "p/q" (q a power of two) or an integer string."""
        return cls.from_fraction(Fraction(text.strip()))

    def as_fraction(self) -> Fraction:
        if self.exp >= 0:
            return Fraction(self.num, 1 << self.exp)
        return Fraction(self.num << -self.exp)

    def as_pair(self) -> tuple[int, int]:
        return self.num, self.exp

    def is_integer(self) -> bool:
        return self.exp <= 0

    def _coerce(self, other):
        if isinstance(other, Dyadic):
            return other
        if isinstance(other, int):
            return Dyadic(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return self.as_fraction() + other
        return Dyadic._raw(*kernel.dy_add(self.num, self.exp, o.num, o.exp))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return self.as_fraction() - other
        return Dyadic._raw(*kernel.dy_sub(self.num, self.exp, o.num, o.exp))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return self.as_fraction() * other
        return Dyadic._raw(*kernel.dy_mul(self.num, self.exp, o.num, o.exp))

    __rmul__ = __mul__

    def __neg__(self):
        return Dyadic._raw(-self.num, self.exp)

    def mul_pow2(self, k: int) -> "Dyadic":
        """Exact product with 2**k."""
        return Dyadic._raw(*kernel.dy_shift(self.num, self.exp, k))

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            a, b = self.as_fraction(), Fraction(other)
            return (a > b) - (a < b)
        return kernel.dy_cmp(self.num, self.exp, o.num, o.exp)

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.num == other.num and self.exp == other.exp
        if isinstance(other, (int, Fraction)):
            return self.as_fraction() == other
        return NotImplemented

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __hash__(self):
        return hash(self.as_fraction())

    def __str__(self):
        if self.exp <= 0:
            return str(self.num << -self.exp)
        return f"{self.num}/{1 << self.exp}"

    def __repr__(self):
        return f"Dyadic({self})"


DY_ZERO = Dyadic(0)
DY_ONE = Dyadic(1)


class Pow2:
    """A positive power of two; the only slopes a map in the group takes."""

    __slots__ = ("exp",)

    def __init__(self, exp: int):
        object.__setattr__(self, "exp", exp)

    def __setattr__(self, name, value):
        raise AttributeError("Pow2 is immutable")

    @classmethod
    def from_fraction(cls, value) -> "Pow2":
        f = Fraction(value)
        e = _pow2_exponent(f)
        if e is None:
            raise ValueError(f"{f} is not a power of two")
        return cls(e)

    def as_fraction(self) -> Fraction:
        return Fraction(1 << self.exp) if self.exp >= 0 else Fraction(1, 1 << -self.exp)

    def __mul__(self, other):
        if isinstance(other, Pow2):
            return Pow2(self.exp + other.exp)
        if isinstance(other, Dyadic):
            return other.mul_pow2(self.exp)
        return self.as_fraction() * other

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Pow2):
            return Pow2(self.exp - other.exp)
        return self.as_fraction() / other

    def __pow__(self, k: int):
        return Pow2(self.exp * k)

    def inverse(self) -> "Pow2":
        return Pow2(-self.exp)

    def is_one(self) -> bool:
        return self.exp == 0

    def __eq__(self, other):
        if isinstance(other, Pow2):
            return self.exp == other.exp
        if isinstance(other, (int, Fraction)):
            return self.as_fraction() == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, Pow2):
            return self.exp < other.exp
        return self.as_fraction() < other

    def __hash__(self):
        return hash(self.as_fraction())

    def __str__(self):
        return str(self.as_fraction())

    def __repr__(self):
        return f"Pow2(2**{self.exp})"


def _pow2_exponent(f: Fraction) -> int | None:
    """Exponent k with f == 2**k, or None."""
    if f <= 0:
        return None
    p, q = f.numerator, f.denominator
    if p == 1:
        return -(q.bit_length() - 1) if q == 1 << (q.bit_length() - 1) else None
    if q == 1:
        return p.bit_length() - 1 if p == 1 << (p.bit_length() - 1) else None
    return None


def is_pow2(f) -> bool:
    return _pow2_exponent(Fraction(f)) is not None


def is_dyadic(f) -> bool:
    """True when the rational lies in Z[1/2]."""
    d = Fraction(f).denominator
    return d == 1 << (d.bit_length() - 1)


def two_adic_valuation(n: int) -> int:
    """Largest v with 2**v dividing n (n nonzero)."""
    return (n & -n).bit_length() - 1


def decompose(a: Rat) -> tuple[int, int, int]:
    """Write a in (0,1) uniquely as 2**t * m / n with m, n odd, gcd(m,n)=1.

    >>> decompose(Fraction(12, 17))
    (2, 3, 17)
    """
    a = Fraction(a)
    if not 0 < a < 1:
        raise ValueError("point must lie strictly inside the unit interval")
    p, q = a.numerator, a.denominator
    vp = two_adic_valuation(p)
    vq = two_adic_valuation(q)
    return vp - vq, p >> vp, q >> vq


def order2mod(n: int) -> int:
    """Least k >= 1 with 2**k congruent to 1 mod n (n odd, positive)."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("modulus must be odd and positive")
    target = 1 % n
    r = 2 % n
    k = 1
    while r != target:
        r = (r * 2) % n
        k += 1
    return k


def solve_exponent(m: int, u: int, n: int) -> int | None:
    """Least R in [0, order2mod(n)) with u == 2**R * m (mod n), or None.

    Residues of 2**R repeat with period order2mod(n), so the search space
    is exhaustive.
    """
    if n <= 0 or n % 2 == 0:
        raise ValueError("modulus must be odd and positive")
    if gcd(m, n) != 1 or gcd(u, n) != 1:
        raise ValueError("m and u must be coprime to n")
    order = order2mod(n)
    r = m % n
    target = u % n
    for k in range(order):
        if r == target:
            return k
        r = (r * 2) % n
    return None
