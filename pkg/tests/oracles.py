"""Closed forms written out directly in Poly arithmetic, for comparison."""

from gmpy2 import mpq

from kappalab.poly import Poly, dot, layout_for


def vectors(n, order, *groups):
    L = layout_for(n)
    return [Poly.vector(L, order, g) for g in groups]


def one_over_one_plus(u, order):
    """1/(1 + u) for u of positive a-degree."""
    out = Poly.one(u.layout, u.order)
    term = Poly.one(u.layout, u.order)
    for _ in range(order):
        term = -(term * u)
        out = out + term
    return out


def binomial(u, exponent, order):
    """(1 + u)^exponent for u of positive a-degree."""
    out = Poly.one(u.layout, u.order)
    term = Poly.one(u.layout, u.order)
    coeff = mpq(1)
    for j in range(1, order + 1):
        coeff = coeff * (exponent - (j - 1)) / j
        term = term * u
        out = out + term.scale(coeff)
    return out


def exp_series(u, order):
    out = Poly.one(u.layout, u.order)
    term = Poly.one(u.layout, u.order)
    for j in range(1, order + 1):
        term = term * u / j
        out = out + term
    return out


def left_D(n, order):
    """D(k, q) = q + k (1 + (a q))."""
    a, k, q = vectors(n, order, "a", "k", "q")
    aq = dot(a, q)
    return [q[mu] + k[mu] * (1 + aq) for mu in range(n)]


def right_D(n, order):
    """D(k, q) = k + q (1 - (a k))."""
    a, k, q = vectors(n, order, "a", "k", "q")
    ak = dot(a, k)
    return [k[mu] + q[mu] * (1 - ak) for mu in range(n)]


def left_S(n, order):
    """S(k) = -k / (1 + (a k))."""
    a, k = vectors(n, order, "a", "k")
    inv = one_over_one_plus(dot(a, k), order)
    return [-k[mu] * inv for mu in range(n)]


def right_S(n, order):
    """S(k) = -k / (1 - (a k))."""
    a, k = vectors(n, order, "a", "k")
    inv = one_over_one_plus(-dot(a, k), order)
    return [-k[mu] * inv for mu in range(n)]


def natural_Zinv(n, order):
    """Z^-1 = -i (a d) + sqrt(1 - a^2 d^2)."""
    a, d = vectors(n, order, "a", "d")
    root = binomial(-dot(a, a) * dot(d, d), mpq(1, 2), order)
    return root - dot(a, d).times_i()


def natural_box(n, order):
    """box = 2 (1 - sqrt(1 - a^2 d^2)) / a^2, expanded in powers of a^2 d^2."""
    a, d = vectors(n, order, "a", "d")
    u = dot(a, a) * dot(d, d)
    out = Poly.zero(u.layout, order)
    coeff = mpq(1)
    term = dot(d, d)
    # sqrt(1 - u) = sum_j binom(1/2, j) (-u)^j
    for j in range(1, order + 2):
        coeff = coeff * (mpq(1, 2) - (j - 1)) / j
        out = out + term.scale(-2 * coeff * (-1) ** j)
        term = term * u
    return out


def natural_jacobian(n, order):
    """1 / sqrt(1 + a^2 k^2)."""
    a, k = vectors(n, order, "a", "k")
    return binomial(dot(a, a) * dot(k, k), mpq(-1, 2), order)


def symmetric_jacobian(n, order, with_exponential):
    """((e^(ak) - 1)/(ak))^(n-1), times e^(ak) when asked."""
    a, k = vectors(n, order, "a", "k")
    s = dot(a, k)
    quotient = Poly.zero(s.layout, order)
    term = Poly.one(s.layout, order)
    fact = 1
    for j in range(order + 1):
        fact *= j + 1
        quotient = quotient + term / fact
        term = term * s
    out = quotient ** (n - 1)
    if with_exponential:
        out = out * exp_series(s, order)
    return out
