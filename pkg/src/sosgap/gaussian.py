"""Exact Gaussian rationals: complex numbers with rational real and imaginary parts."""

from __future__ import annotations

import re

from gmpy2 import mpq

_MPQ = type(mpq(0))
_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_GAUSSIAN = re.compile(
    r"^(?:(?P<re>[+-]?\d+(?:/\d+)?)(?=$|[+-]))?"
    r"(?:(?P<im>[+-]?(?:\d+(?:/\d+)?)?)\*?i)?$"
)


def parse_rational(text: str) -> mpq:
    """Parse ``"p"`` or ``"p/q"``; decimals, exponents and zero denominators are rejected."""
    if not isinstance(text, str):
        raise ValueError(f"expected a rational string, got {type(text).__name__}")
    s = text.strip()
    if not _RATIONAL.match(s):
        raise ValueError(f"malformed rational {text!r}")
    if "/" in s:
        num, den = s.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return mpq(int(num), int(den))
    return mpq(int(s))


def rational_str(x) -> str:
    x = mpq(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class GaussianRational:
    """Immutable ``re + im*i`` with both parts exact rationals (always reduced)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re if type(re) is _MPQ else mpq(re))
        object.__setattr__(self, "im", im if type(im) is _MPQ else mpq(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    @staticmethod
    def coerce(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        if isinstance(x, float):
            raise TypeError("floats are not exact; pass a Fraction or string")
        return GaussianRational(x, 0)

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse forms like ``3``, ``-1/2``, ``i``, ``-i``, ``2/3i``, ``1-2i``, ``1/2+3/4*i``."""
        s = text.replace(" ", "")
        m = _GAUSSIAN.match(s)
        if not s or m is None or (m.group("re") is None and m.group("im") is None):
            raise ValueError(f"malformed Gaussian rational {text!r}")
        re_part = parse_rational(m.group("re")) if m.group("re") else mpq(0)
        im_txt = m.group("im")
        if im_txt is None:
            im_part = mpq(0)
        elif im_txt in ("", "+"):
            im_part = mpq(1)
        elif im_txt == "-":
            im_part = mpq(-1)
        else:
            im_part = parse_rational(im_txt)
        return cls(re_part, im_part)

    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        den = other.re * other.re + other.im * other.im
        if den == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> mpq:
        """Squared modulus, an exact rational."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def is_real(self) -> bool:
        return self.im == 0

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        r, i = rational_str(self.re), rational_str(self.im)
        if self.im == 0:
            return r
        imag = "i" if self.im == 1 else "-i" if self.im == -1 else f"{i}i"
        if self.re == 0:
            return imag
        return f"{r}{imag}" if imag.startswith("-") else f"{r}+{imag}"


ZERO = GaussianRational(0, 0)
ONE = GaussianRational(1, 0)
I = GaussianRational(0, 1)
