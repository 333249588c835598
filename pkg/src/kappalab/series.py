"""Truncated Taylor tables of scalar functions of the invariants A and B.

A monomial A^m B^j carries a-degree m + 2j; a table of order N keeps every
coefficient of weight at most N, which is exactly what substituting
A = i(a.d), B = a^2 d^2 needs to be exact to a-degree N.
"""

from math import factorial

from gmpy2 import mpq

from .gaussrat import GaussRat

__all__ = ["ScalarSeries2", "series_reciprocal", "series_sqrt", "series_integrate_B", "SeriesError"]


class SeriesError(ValueError):
    """Raised when a series operation's precondition fails."""


class ScalarSeries2:
    """Coefficients c[m, j] of sum c[m, j] A^m B^j with m + 2j <= order."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs=None):
        self.order = order
        self.coeffs = {}
        for (m, j), c in (coeffs or {}).items():
            c = GaussRat.coerce(c)
            if m + 2 * j <= order and not c.is_zero():
                self.coeffs[(m, j)] = c

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, order, value=1):
        return cls(order, {(0, 0): value})

    @classmethod
    def A(cls, order):
        return cls(order, {(1, 0): 1})

    @classmethod
    def B(cls, order):
        return cls(order, {(0, 1): 1})

    @classmethod
    def exp_A(cls, order, scale=1):
        s = mpq(scale)
        return cls(order, {(m, 0): s ** m / factorial(m) for m in range(order + 1)})

    @classmethod
    def in_B(cls, order, coeffs):
        """Function of B alone from a list of Taylor coefficients."""
        return cls(order, {(0, j): c for j, c in enumerate(coeffs)})

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, ScalarSeries2):
            return other
        return ScalarSeries2.const(self.order, other)

    def __add__(self, other):
        other = self._coerce(other)
        order = min(self.order, other.order)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, GaussRat(0)) + c
        return ScalarSeries2(order, out)

    __radd__ = __add__

    def __neg__(self):
        return ScalarSeries2(self.order, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, ScalarSeries2):
            c = GaussRat.coerce(other)
            return ScalarSeries2(self.order, {k: v * c for k, v in self.coeffs.items()})
        order = min(self.order, other.order)
        out = {}
        for (m1, j1), c1 in self.coeffs.items():
            for (m2, j2), c2 in other.coeffs.items():
                m, j = m1 + m2, j1 + j2
                if m + 2 * j <= order:
                    out[(m, j)] = out.get((m, j), GaussRat(0)) + c1 * c2
        return ScalarSeries2(order, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ScalarSeries2):
            return self * series_reciprocal(other)
        return self * (GaussRat(1) / GaussRat.coerce(other))

    def __rtruediv__(self, other):
        return self._coerce(other) * series_reciprocal(self)

    def __pow__(self, k):
        out = ScalarSeries2.const(self.order, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, ScalarSeries2):
            other = self._coerce(other)
        order = min(self.order, other.order)
        a = {k: v for k, v in self.coeffs.items() if k[0] + 2 * k[1] <= order}
        b = {k: v for k, v in other.coeffs.items() if k[0] + 2 * k[1] <= order}
        return a == b

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __getitem__(self, key):
        return self.coeffs.get(key, GaussRat(0))

    def constant(self):
        return self[(0, 0)]

    def is_zero(self):
        return not self.coeffs

    def depends_on_A(self):
        return any(m for (m, _) in self.coeffs)

    def truncate(self, order):
        return ScalarSeries2(order, self.coeffs)

    # -- calculus -----------------------------------------------------
    def dA(self):
        return ScalarSeries2(self.order, {(m - 1, j): c * m for (m, j), c in self.coeffs.items() if m})

    def dB(self):
        return ScalarSeries2(self.order, {(m, j - 1): c * j for (m, j), c in self.coeffs.items() if j})

    def evaluate(self, A, B):
        """Substitute Polys A (a-degree 1) and B (a-degree 2)."""
        from .poly import Poly

        out = Poly.zero(A.layout, A.order)
        apow = [Poly.one(A.layout, A.order)]
        bpow = [Poly.one(A.layout, A.order)]
        for (m, j), c in sorted(self.coeffs.items()):
            while len(apow) <= m:
                apow.append(apow[-1] * A)
            while len(bpow) <= j:
                bpow.append(bpow[-1] * B)
            out = out + (apow[m] * bpow[j]).scale(c)
        return out

    def __repr__(self):
        body = ", ".join(f"A^{m}B^{j}: {c}" for (m, j), c in sorted(self.coeffs.items()))
        return f"ScalarSeries2(order={self.order}, {{{body}}})"


def _binomial_series(s, exponent):
    """(c0 + u)^exponent for u of positive weight, c0 = 1."""
    u = s - 1
    out = ScalarSeries2.const(s.order, 1)
    term = ScalarSeries2.const(s.order, 1)
    coeff = mpq(1)
    for j in range(1, s.order + 1):
        coeff = coeff * (exponent - (j - 1)) / j
        term = term * u
        if term.is_zero():
            break
        out = out + term * coeff
    return out


def series_reciprocal(s):
    """1/s for a series with nonzero constant term."""
    c0 = s.constant()
    if c0.is_zero():
        raise SeriesError("reciprocal needs a nonzero constant term")
    inv0 = GaussRat(1) / c0
    return _binomial_series(s * inv0, mpq(-1)) * inv0


def series_sqrt(s):
    """Principal square root of a series with constant term 1."""
    if s.constant() != 1:
        raise SeriesError("square root needs constant term 1")
    return _binomial_series(s, mpq(1, 2))


def series_integrate_B(s):
    """Antiderivative in B with zero constant term, for a function of B alone."""
    if s.depends_on_A():
        raise SeriesError("integrand depends on A")
    return ScalarSeries2(s.order + 2, {(0, j + 1): c / (j + 1) for (_, j), c in s.coeffs.items()})
