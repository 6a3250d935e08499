"""Exact arithmetic in Q(q), q a primitive cube root of unity.

Elements are stored as a + b*q with rational a, b; q**2 is always rewritten
as -1 - q, so two values are equal iff their (a, b) pairs are equal.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = ["CycQ", "q_pow", "ZERO", "ONE", "Q"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as a rational")


class CycQ:
    """Immutable element a + b*q of the cyclotomic field Q(q)."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))

    def __setattr__(self, name, value):
        raise AttributeError("CycQ is immutable")

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction) -> "CycQ":
        # trusted constructor for arithmetic results (both already Fraction)
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        return obj

    @classmethod
    def coerce(cls, x) -> "CycQ":
        if isinstance(x, CycQ):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        return cls(x)

    # arithmetic

    def __add__(self, other):
        if isinstance(other, CycQ):
            return CycQ._raw(self.a + other.a, self.b + other.b)
        if isinstance(other, (int, Fraction)):
            return CycQ._raw(self.a + other, self.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return CycQ._raw(-self.a, -self.b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, CycQ):
            return CycQ._raw(self.a - other.a, self.b - other.b)
        if isinstance(other, (int, Fraction)):
            return CycQ._raw(self.a - other, self.b)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycQ._raw(other - self.a, -self.b)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, CycQ):
            a, b, c, d = self.a, self.b, other.a, other.b
            bd = b * d
            # (a + bq)(c + dq) = ac + (ad + bc)q + bd q^2,  q^2 = -1 - q
            return CycQ._raw(a * c - bd, a * d + b * c - bd)
        if isinstance(other, (int, Fraction)):
            return CycQ._raw(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm (a + bq)(a + bq^2) = a^2 - ab + b^2; zero only at 0."""
        return self.a * self.a - self.a * self.b + self.b * self.b

    def conjugate(self) -> "CycQ":
        # q -> q^2 = -1 - q
        return CycQ(self.a - self.b, -self.b)

    def inv(self) -> "CycQ":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        c = self.conjugate()
        return CycQ._raw(c.a / n, c.b / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(q)")
            return CycQ(self.a / other, self.b / other)
        if isinstance(other, CycQ):
            return self * other.inv()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycQ(other) * self.inv()
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison / hashing

    def __eq__(self, other):
        if isinstance(other, CycQ):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    # text

    def __repr__(self):
        return f"CycQ({self})"

    def __str__(self):
        return self.render()

    def render(self) -> str:
        a, b = self.a, self.b
        if b == 0:
            return _rat(a)
        if b == 1:
            qpart = "q"
        elif b == -1:
            qpart = "-q"
        else:
            qpart = f"{_rat(b)}*q"
        if a == 0:
            return qpart
        if qpart.startswith("-"):
            return f"{_rat(a)}{qpart}"
        return f"{_rat(a)}+{qpart}"

    def is_simple(self) -> bool:
        """True when the rendering is a single signed token (no inner +/-)."""
        return self.a == 0 or self.b == 0

    @classmethod
    def parse(cls, text: str) -> "CycQ":
        """Parse "a", "a+b*q", "b*q", "q", "-1/2-3*q" and friends."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty coefficient")
        if not _CYC_RE.fullmatch(s):
            raise ValueError(f"malformed coefficient {text!r}")
        total = ZERO
        for term in re.findall(r"[+-]?[^+-]+", s):
            sign = -1 if term[0] == "-" else 1
            body = term.lstrip("+-")
            if body == "q":
                total = total + CycQ(0, sign)
            elif body.endswith("*q"):
                total = total + CycQ(0, sign * Fraction(body[:-2]))
            else:
                total = total + CycQ(sign * Fraction(body))
        return total


_NUM = r"\d+(?:/\d+)?"
_CYC_RE = re.compile(rf"(?:[+-]?(?:{_NUM}(?:\*q)?|q))(?:[+-](?:{_NUM}(?:\*q)?|q))*")


def _rat(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


ZERO = CycQ(0)
ONE = CycQ(1)
Q = CycQ(0, 1)
_QQ = CycQ(-1, -1)
_POWERS = (ONE, Q, _QQ)


def q_pow(k: int) -> CycQ:
    """q**k for any integer k (q**3 == 1)."""
    return _POWERS[k % 3]
