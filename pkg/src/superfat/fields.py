"""Exact base fields: rationals, Gaussian rationals and prime fields.

Elements are plain Python values that support the arithmetic operators:
``Fraction`` for Q, :class:`Gaussian` for Q(i) and :class:`ModP` for GF(p).
A field descriptor (``QQ``, ``QQI`` or ``GF(p)``) converts, tests membership,
draws random elements and extracts square roots.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from sympy import isprime
from sympy.ntheory import sqrt_mod

DEFAULT_PRIME = 32003


class FieldError(ValueError):
    """Raised on invalid field construction or mixing elements of two fields."""


class FieldMismatch(FieldError):
    pass


# ---------------------------------------------------------------------------
# element types

class Gaussian:
    """Element re + im*i of Q(i); both parts are reduced Fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(other):
        if isinstance(other, Gaussian):
            return other
        if isinstance(other, (int, Fraction)):
            return Gaussian(other, 0)
        if isinstance(other, ModP):
            raise FieldMismatch("cannot mix Q(i) and GF(p) elements")
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Gaussian(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Gaussian(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Gaussian(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return Gaussian(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __pos__(self):
        return self

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "Gaussian":
        return Gaussian(self.re, -self.im)

    def inverse(self) -> "Gaussian":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return Gaussian(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Gaussian(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Gaussian):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"Gaussian({self.re}, {self.im})"


class ModP:
    """Residue class modulo a prime; arithmetic refuses to mix moduli."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.p = p
        self.v = v % p

    def _lift(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        if isinstance(other, Gaussian):
            raise FieldMismatch("cannot mix GF(p) and Q(i) elements")
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "ModP":
        if self.v == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return ModP(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        o %= self.p
        if o == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return ModP(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"


# ---------------------------------------------------------------------------
# field descriptors

class Field:
    name: str = ""
    characteristic: int = 0

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def random(self, rng: random.Random, bound: int = 50):
        """Uniform integer in [-bound, bound] (characteristic 0) or uniform residue."""
        return self(rng.randint(-bound, bound))

    def sqrt(self, a):
        """Return r with r*r == a, or None when a has no square root in the field."""
        raise NotImplementedError

    def __repr__(self):
        return self.name

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


def _rational_sqrt(q: Fraction):
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class RationalField(Field):
    name = "Q"
    characteristic = 0

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, str)):
            return Fraction(x)
        if isinstance(x, Gaussian):
            if x.im:
                raise FieldMismatch(f"{x!r} is not rational")
            return x.re
        if isinstance(x, ModP):
            raise FieldMismatch("GF(p) element in Q")
        raise TypeError(f"cannot convert {x!r} to Q")

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction)) and not isinstance(x, bool)

    def sqrt(self, a):
        return _rational_sqrt(Fraction(a))


class GaussianField(Field):
    name = "Qi"
    characteristic = 0

    @property
    def i(self) -> Gaussian:
        return Gaussian(0, 1)

    def __call__(self, x):
        if isinstance(x, Gaussian):
            return x
        if isinstance(x, (int, Fraction, str)):
            return Gaussian(Fraction(x), 0)
        if isinstance(x, ModP):
            raise FieldMismatch("GF(p) element in Q(i)")
        raise TypeError(f"cannot convert {x!r} to Q(i)")

    def contains(self, x) -> bool:
        return isinstance(x, Gaussian)

    def random(self, rng: random.Random, bound: int = 50):
        return Gaussian(rng.randint(-bound, bound), rng.randint(-bound, bound))

    def sqrt(self, a):
        a = self(a)
        if not a:
            return Gaussian(0)
        # sqrt(re + im i) = x + y i with x^2 = (|a| + re)/2, y^2 = (|a| - re)/2
        modulus = _rational_sqrt(a.norm())
        if modulus is None:
            return None
        x = _rational_sqrt((modulus + a.re) / 2)
        y = _rational_sqrt((modulus - a.re) / 2)
        if x is None or y is None:
            return None
        if a.im < 0:
            y = -y
        r = Gaussian(x, y)
        return r if r * r == a else None


class PrimeField(Field):
    def __init__(self, p: int):
        if not isinstance(p, int) or p < 2 or not isprime(p):
            raise FieldError(f"GF(p) needs a prime modulus, got {p!r}")
        self.p = p
        self.characteristic = p
        self.name = f"Fp:{p}"

    def __call__(self, x):
        if isinstance(x, ModP):
            if x.p != self.p:
                raise FieldMismatch(f"GF({x.p}) element in GF({self.p})")
            return x
        if isinstance(x, int):
            return ModP(x, self.p)
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return ModP(x.numerator * pow(x.denominator, -1, self.p), self.p)
        if isinstance(x, Gaussian):
            raise FieldMismatch("Q(i) element in GF(p)")
        raise TypeError(f"cannot convert {x!r} to GF({self.p})")

    def contains(self, x) -> bool:
        return isinstance(x, ModP) and x.p == self.p

    def random(self, rng: random.Random, bound: int = 50):
        return ModP(rng.randrange(self.p), self.p)

    def sqrt(self, a):
        a = self(a)
        if self.p == 2:
            return a
        r = sqrt_mod(a.v, self.p)
        return None if r is None else ModP(r, self.p)


QQ = RationalField()
QQI = GaussianField()


@lru_cache(maxsize=None)
def GF(p: int = DEFAULT_PRIME) -> PrimeField:
    return PrimeField(p)


def sqrt_mod_p(a: ModP):
    """Square root of ``a`` in GF(p) for odd p, or ``None`` for a non-residue."""
    if a.p == 2:
        raise FieldError("sqrt_mod_p needs an odd prime")
    return GF(a.p).sqrt(a)


def field_from_tag(tag: str) -> Field:
    """Parse a field tag: ``Q``, ``Qi`` or ``Fp:<prime>``."""
    tag = tag.strip()
    if tag == "Q":
        return QQ
    if tag in ("Qi", "Q(i)"):
        return QQI
    if tag.startswith("Fp:") or tag.startswith("GF:"):
        try:
            p = int(tag[3:])
        except ValueError:
            raise FieldError(f"bad prime in field tag {tag!r}") from None
        return GF(p)
    raise FieldError(f"unknown field tag {tag!r} (expected Q, Qi or Fp:<prime>)")


def field_of(x) -> Field:
    if isinstance(x, ModP):
        return GF(x.p)
    if isinstance(x, Gaussian):
        return QQI
    if isinstance(x, (int, Fraction)):
        return QQ
    raise TypeError(f"{x!r} is not a field element")
