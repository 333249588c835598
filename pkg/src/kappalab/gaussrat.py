"""Exact Gaussian rationals re + i*im."""

from fractions import Fraction

from gmpy2 import mpq

__all__ = ["GaussRat", "to_mpq", "format_rational"]


def to_mpq(value):
    """Coerce int, Fraction, mpq or a rational literal string to mpq."""
    if isinstance(value, str):
        text = value.strip().replace("−", "-")
        if not text:
            raise ValueError("empty rational literal")
        if any(ch in text for ch in ".eE"):
            raise ValueError(f"not an exact rational literal: {value!r}")
        return mpq(Fraction(text))
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted")
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    return mpq(value)


def format_rational(q):
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class GaussRat:
    """An exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = to_mpq(re)
        self.im = to_mpq(im)

    @classmethod
    def coerce(cls, value):
        if isinstance(value, GaussRat):
            return value
        if isinstance(value, complex):
            raise TypeError("floating point values are not accepted")
        return cls(value)

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def conjugate(self):
        return GaussRat(self.re, -self.im)

    def __add__(self, other):
        other = GaussRat.coerce(other)
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussRat.coerce(other))

    def __rsub__(self, other):
        return GaussRat.coerce(other) - self

    def __mul__(self, other):
        o = GaussRat.coerce(other)
        return GaussRat(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussRat.coerce(other)
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conjugate()
        return GaussRat(num.re / norm, num.im / norm)

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) / self

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("only integer powers")
        if k < 0:
            return GaussRat(1) / self ** (-k)
        out = GaussRat(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            o = GaussRat.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRat({format_rational(self.re)}, {format_rational(self.im)})"

    def __str__(self):
        re, im = self.re, self.im
        if im == 0:
            return format_rational(re)
        if im == 1:
            ims = "i"
        elif im == -1:
            ims = "-i"
        else:
            ims = f"{format_rational(im)}*i"
        if re == 0:
            return ims
        sign = "-" if ims.startswith("-") else "+"
        return f"{format_rational(re)} {sign} {ims.lstrip('-')}"
