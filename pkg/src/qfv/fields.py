"""Exact coefficient fields: the rationals and prime fields F_p.

Rational values are plain :class:`fractions.Fraction`.  Prime-field values
are :class:`Fp`; combining elements of different fields raises
:class:`~qfv.errors.FieldError`.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .errors import FieldError


class Fp:
    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldError(f"mixed-field arithmetic: F{self.p} and F{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        raise FieldError(f"mixed-field arithmetic: F{self.p} and {type(other).__name__}")

    def __add__(self, other):
        return Fp(self.v + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Fp(self.v - self._coerce(other), self.p)

    def __rsub__(self, other):
        return Fp(self._coerce(other) - self.v, self.p)

    def __mul__(self, other):
        return Fp(self.v * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def inverse(self):
        if not self.v:
            raise ZeroDivisionError(f"0 has no inverse in F{self.p}")
        return Fp(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other) % self.p
        if not o:
            raise ZeroDivisionError(f"division by zero in F{self.p}")
        return Fp(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return Fp(self._coerce(other), self.p) / self

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** -e
        return Fp(pow(self.v, e, self.p), self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash(self.v)

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class RationalField:
    name = "Q"
    characteristic = 0

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fp):
            raise FieldError("mixed-field value: prime-field element given to Q")
        try:
            return Fraction(x)
        except (ValueError, TypeError) as exc:
            raise FieldError(f"not a rational number: {x!r}") from exc

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def contains(self, x) -> bool:
        return isinstance(x, (Fraction, int)) and not isinstance(x, bool)

    def fmt(self, x) -> str:
        return str(Fraction(x))

    def random(self, rng: random.Random, nonzero: bool = False, height: int = 9) -> Fraction:
        while True:
            x = Fraction(rng.randint(-height, height), rng.randint(1, height))
            if x or not nonzero:
                return x

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "RationalField()"


class PrimeField:
    def __init__(self, p: int):
        if not (isinstance(p, int) and p < 2**31 and _is_prime(p)):
            raise FieldError(f"F_p requires a prime p < 2^31, got {p!r}")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"

    def __call__(self, x) -> Fp:
        if isinstance(x, Fp):
            if x.p != self.p:
                raise FieldError(f"mixed-field value: F{x.p} element given to F{self.p}")
            return x
        if isinstance(x, bool):
            raise FieldError(f"not a field value: {x!r}")
        if isinstance(x, int):
            return Fp(x, self.p)
        try:
            q = Fraction(x)
        except (ValueError, TypeError) as exc:
            raise FieldError(f"not an element of F{self.p}: {x!r}") from exc
        if q.denominator % self.p == 0:
            raise FieldError(f"{x!r} has no image in F{self.p}")
        return Fp(q.numerator, self.p) / q.denominator

    @property
    def zero(self):
        return Fp(0, self.p)

    @property
    def one(self):
        return Fp(1, self.p)

    def contains(self, x) -> bool:
        return isinstance(x, Fp) and x.p == self.p

    def elements(self) -> list[Fp]:
        return [Fp(v, self.p) for v in range(self.p)]

    def fmt(self, x) -> str:
        return str(self(x).v)

    def random(self, rng: random.Random, nonzero: bool = False) -> Fp:
        lo = 1 if nonzero else 0
        return Fp(rng.randrange(lo, self.p), self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


QQ = RationalField()


def parse_field(text) -> RationalField | PrimeField:
    """Accept ``"Q"``, ``"F5"``, ``"5"`` or the integer ``5``."""
    if isinstance(text, int):
        return PrimeField(text)
    t = str(text).strip()
    if t in ("Q", "QQ"):
        return QQ
    if t[:1] in ("F", "f"):
        t = t[1:]
    try:
        return PrimeField(int(t))
    except ValueError as exc:
        raise FieldError(f"unknown field {text!r}") from exc
