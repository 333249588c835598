"""Sparse polynomials over Gaussian rationals, graded and truncated by a-degree.

A monomial is packed into one Python int.  Bits 0-1 hold the power of the
imaginary unit (reduced with i^2 = -1), each variable owns an 8-bit exponent
field, and the total a-degree sits above all fields so that ``m >> ashift`` is
the grading used for truncation.
"""

from itertools import combinations_with_replacement

from gmpy2 import mpq

from .gaussrat import GaussRat, format_rational, to_mpq

__all__ = ["Layout", "Poly", "Metric", "GROUPS", "layout_for", "dot", "eta", "subs_many", "monomials"]

# Variable groups: deformation vector, coordinates, derivatives, three tensor
# slots (coordinates and derivatives each), three momentum slots, translations.
GROUPS = ("a", "x", "d", "x1", "d1", "x2", "d2", "x3", "d3", "k", "q", "w", "v")
MOMENTUM_GROUPS = ("k", "q", "w")
_FIELD = 8
_MASK = (1 << _FIELD) - 1
_ZERO = mpq(0)
_ONE = mpq(1)


def eta(mu):
    """Diagonal metric entry eta_{mu mu} = eta^{mu mu}."""
    return -1 if mu == 0 else 1


class Metric:
    """The diagonal metric diag(-1, 1, ..., 1)."""

    def __init__(self, n):
        self.n = n
        self.diagonal = tuple(eta(mu) for mu in range(n))

    def __getitem__(self, idx):
        mu, nu = idx
        return self.diagonal[mu] if mu == nu else 0

    def raise_index(self, vec):
        return [self.diagonal[mu] * vec[mu] for mu in range(self.n)]

    lower_index = raise_index


class Layout:
    """Symbol table for dimension n: variable names, bit positions and masks."""

    def __init__(self, n):
        if n < 1:
            raise ValueError("dimension must be positive")
        self.n = n
        self.groups = GROUPS
        self.nvars = len(GROUPS) * n
        self.ashift = 2 + _FIELD * self.nvars
        self.names = []
        for g in GROUPS:
            for mu in range(n):
                self.names.append(_var_name(g, mu))
        self.index = {name: v for v, name in enumerate(self.names)}
        self.group_mask = {}
        for gi, g in enumerate(GROUPS):
            mask = 0
            for mu in range(n):
                mask |= _MASK << self.shift(gi * n + mu)
            self.group_mask[g] = mask

    def var(self, group, mu):
        if not 0 <= mu < self.n:
            raise IndexError(f"index {mu} out of range for dimension {self.n}")
        return GROUPS.index(group) * self.n + mu

    @staticmethod
    def shift(v):
        return 2 + _FIELD * v

    def unit(self, v, e=1):
        """Packed monomial for variable v to the power e."""
        m = e << self.shift(v)
        if v < self.n:
            m += e << self.ashift
        return m

    def exponents(self, m):
        """List of (variable, exponent) pairs of a packed monomial."""
        out = []
        m >>= 2
        v = 0
        nv = self.nvars
        while m and v < nv:
            e = m & _MASK
            if e:
                out.append((v, e))
            m >>= _FIELD
            v += 1
        return out

    def group_degree(self, m, group):
        gi = GROUPS.index(group)
        total = 0
        for mu in range(self.n):
            total += (m >> self.shift(gi * self.n + mu)) & _MASK
        return total

    def group_exponents(self, m, group):
        gi = GROUPS.index(group)
        return tuple((m >> self.shift(gi * self.n + mu)) & _MASK for mu in range(self.n))

    def __eq__(self, other):
        return isinstance(other, Layout) and other.n == self.n

    def __hash__(self):
        return hash(("Layout", self.n))


def _var_name(group, mu):
    if len(group) == 2:
        return f"{group[0]}{mu}|{group[1]}"
    return f"{group}{mu}"


_LAYOUTS = {}


def layout_for(n):
    if n not in _LAYOUTS:
        _LAYOUTS[n] = Layout(n)
    return _LAYOUTS[n]


def _reduce(m, c):
    if m & 2:
        return m - 2, -c
    return m, c


def _mul_terms(t1, t2, order, ashift):
    if not t1 or not t2:
        return {}
    if len(t1) < len(t2):
        t1, t2 = t2, t1
    buckets = [[] for _ in range(order + 1)]
    for m, c in t2.items():
        d = m >> ashift
        if d <= order:
            buckets[d].append((m, c))
    top = max((d for d in range(order + 1) if buckets[d]), default=-1)
    if top < 0:
        return {}
    out = {}
    get = out.get
    for m1, c1 in t1.items():
        lim = order - (m1 >> ashift)
        if lim < 0:
            continue
        if lim > top:
            lim = top
        for d in range(lim + 1):
            for m2, c2 in buckets[d]:
                m = m1 + m2
                if m & 2:
                    m -= 2
                    out[m] = get(m, _ZERO) - c1 * c2
                else:
                    out[m] = get(m, _ZERO) + c1 * c2
    return {m: c for m, c in out.items() if c}


class Poly:
    """Exact sparse polynomial with Gaussian-rational coefficients.

    Every stored term has total a-degree at most ``order``; products and sums
    are re-truncated.  Instances are treated as immutable values.
    """

    __slots__ = ("layout", "order", "terms")

    def __init__(self, layout, order, terms=None):
        self.layout = layout
        self.order = order
        self.terms = terms if terms is not None else {}

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, layout, order):
        return cls(layout, order, {})

    @classmethod
    def const(cls, layout, order, value=1):
        value = GaussRat.coerce(value)
        terms = {}
        if value.re:
            terms[0] = value.re
        if value.im:
            terms[1] = value.im
        return cls(layout, order, terms)

    @classmethod
    def one(cls, layout, order):
        return cls(layout, order, {0: _ONE})

    @classmethod
    def imag(cls, layout, order):
        return cls(layout, order, {1: _ONE})

    @classmethod
    def var(cls, layout, order, group, mu, power=1):
        v = layout.var(group, mu)
        m = layout.unit(v, power)
        if m >> layout.ashift > order:
            return cls(layout, order, {})
        return cls(layout, order, {m: _ONE})

    @classmethod
    def vector(cls, layout, order, group):
        return [cls.var(layout, order, group, mu) for mu in range(layout.n)]

    def _new(self, terms, order=None):
        return Poly(self.layout, self.order if order is None else order, terms)

    # -- coercion -----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.layout.n != self.layout.n:
                raise ValueError("symbol table mismatch: different dimensions")
            return other
        return Poly.const(self.layout, self.order, other)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        order = min(self.order, other.order)
        out = dict(self.terms) if order >= self.order else _trunc(self.terms, order, self.layout.ashift)
        sh = self.layout.ashift
        get = out.get
        for m, c in other.terms.items():
            if m >> sh > order:
                continue
            s = get(m, _ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(self.layout, order, out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        if other.layout.n != self.layout.n:
            raise ValueError("symbol table mismatch: different dimensions")
        order = min(self.order, other.order)
        return Poly(self.layout, order, _mul_terms(self.terms, other.terms, order, self.layout.ashift))

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, value):
        if isinstance(value, GaussRat):
            if value.im == 0:
                value = value.re
            else:
                re = self.scale(value.re) if value.re else Poly.zero(self.layout, self.order)
                return re + self.times_i().scale(value.im)
        value = to_mpq(value)
        if value == 0:
            return self._new({})
        if value == 1:
            return self
        return self._new({m: c * value for m, c in self.terms.items()})

    def times_i(self):
        out = {}
        for m, c in self.terms.items():
            if m & 1:
                out[m - 1] = -c
            else:
                out[m + 1] = c
        return self._new(out)

    def __truediv__(self, value):
        value = GaussRat.coerce(value)
        return self.scale(GaussRat(1) / value)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        out = Poly.one(self.layout, self.order)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def mul_monomial(self, mono, coeff=_ONE):
        """Multiply by a packed monomial (which may carry an i-bit) and a rational."""
        sh = self.layout.ashift
        out = {}
        for m, c in self.terms.items():
            mm = m + mono
            if mm >> sh > self.order:
                continue
            if mm & 2:
                mm -= 2
                c = -c
            out[mm] = c * coeff
        return self._new(out)

    # -- comparison ---------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Poly):
            try:
                other = self._coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        order = min(self.order, other.order)
        sh = self.layout.ashift
        return _trunc(self.terms, order, sh) == _trunc(other.terms, order, sh)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- structure ----------------------------------------------------
    def truncate(self, order):
        return Poly(self.layout, order, _trunc(self.terms, order, self.layout.ashift))

    def with_order(self, order):
        """Same terms, declared order lowered or raised (terms above are dropped)."""
        return self.truncate(order)

    def adeg(self):
        sh = self.layout.ashift
        return max((m >> sh for m in self.terms), default=-1)

    def adeg_part(self, d):
        sh = self.layout.ashift
        return self._new({m: c for m, c in self.terms.items() if m >> sh == d})

    def filter(self, pred):
        return self._new({m: c for m, c in self.terms.items() if pred(m)})

    def degree(self, group):
        L = self.layout
        return max((L.group_degree(m, group) for m in self.terms), default=-1)

    def constant_term(self):
        return GaussRat(self.terms.get(0, 0), self.terms.get(1, 0))

    def gauss_items(self):
        """Yield (monomial without i-bit, GaussRat coefficient)."""
        merged = {}
        for m, c in self.terms.items():
            base = m & ~3
            re, im = merged.get(base, (_ZERO, _ZERO))
            if m & 1:
                merged[base] = (re, im + c)
            else:
                merged[base] = (re + c, im)
        for m, (re, im) in merged.items():
            yield m, GaussRat(re, im)

    def conj(self):
        """Complex conjugation of the coefficients."""
        return self._new({m: (-c if m & 1 else c) for m, c in self.terms.items()})

    def flip_a(self):
        """Substitute a -> -a."""
        sh = self.layout.ashift
        return self._new({m: (-c if (m >> sh) & 1 else c) for m, c in self.terms.items()})

    def diff(self, group, mu):
        L = self.layout
        v = L.var(group, mu)
        sh = L.shift(v)
        unit = L.unit(v)
        out = {}
        for m, c in self.terms.items():
            e = (m >> sh) & _MASK
            if e:
                out[m - unit] = c * e
        return self._new(out)

    def set_zero(self, *groups):
        mask = 0
        for g in groups:
            mask |= self.layout.group_mask[g]
        return self._new({m: c for m, c in self.terms.items() if not m & mask})

    def has_group(self, group):
        mask = self.layout.group_mask[group]
        return any(m & mask for m in self.terms)

    def rename(self, mapping):
        """Move variables between groups, e.g. {'d': 'd1'}; coefficients unchanged."""
        L = self.layout
        n = L.n
        moves = []
        for src, dst in mapping.items():
            si, di = GROUPS.index(src), GROUPS.index(dst)
            if (src == "a") != (dst == "a"):
                raise ValueError("the a group cannot be renamed")
            moves.append((L.group_mask[src], L.shift(si * n), L.shift(di * n)))
        out = {}
        for m, c in self.terms.items():
            mm = m
            for mask, s_from, s_to in moves:
                part = m & mask
                if part:
                    mm -= part
                    mm += (part >> s_from) << s_to
            out[mm] = out.get(mm, _ZERO) + c
        return self._new({m: c for m, c in out.items() if c})

    def scale_group(self, group, factor):
        """Substitute y_mu -> factor * y_mu for every variable of a group."""
        L = self.layout
        factor = GaussRat.coerce(factor)
        if factor.im == 0 and factor.re in (1, -1):
            if factor.re == 1:
                return self
            return self._new({m: (-c if L.group_degree(m, group) & 1 else c) for m, c in self.terms.items()})
        if factor.re == 0 and factor.im in (1, -1):
            # multiply each term by (+-i)^deg
            out = {}
            for m, c in self.terms.items():
                e = L.group_degree(m, group) & 3
                if factor.im == -1:
                    e = (-e) & 3
                if e & 2:
                    c = -c
                if e & 1:
                    if m & 1:
                        out[m - 1] = -c
                    else:
                        out[m + 1] = c
                else:
                    out[m] = c
            return self._new(out)
        out = Poly.zero(L, self.order)
        for m, c in self.terms.items():
            out = out + Poly(L, self.order, {m: c}).scale(factor ** L.group_degree(m, group))
        return out

    def split(self, groups):
        """Map monomial-in-groups -> Poly of the remaining factors."""
        mask = 0
        for g in groups:
            mask |= self.layout.group_mask[g]
        parts = {}
        for m, c in self.terms.items():
            key = m & mask
            parts.setdefault(key, {})[m - key] = c
        return {k: self._new(v) for k, v in parts.items()}

    def subs(self, values):
        """Simultaneous substitution {(group, mu): Poly}; truncated to order."""
        L = self.layout
        if any(g == "a" for g, _ in values):
            raise ValueError("the a group cannot be substituted")
        items = sorted(((L.var(g, mu), p) for (g, mu), p in values.items()), key=lambda t: t[0])
        mask = 0
        for v, _ in items:
            mask |= _MASK << L.shift(v)
        if not mask:
            return self
        parts = self.split_mask(mask)
        cache = {0: Poly.one(L, self.order)}
        vals = [(v, L.shift(v), L.unit(v), p) for v, p in items]
        out = {}
        sh = L.ashift
        order = self.order
        for key, rest in parts.items():
            prod = _power_product(key, vals, cache, L)
            if not prod.terms:
                continue
            terms = _mul_terms(rest, prod.terms, order, sh)
            for m, c in terms.items():
                s = out.get(m, _ZERO) + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return self._new(out)

    def split_mask(self, mask):
        parts = {}
        for m, c in self.terms.items():
            key = m & mask
            parts.setdefault(key, {})[m - key] = c
        return parts

    # -- printing -----------------------------------------------------
    def __repr__(self):
        return f"Poly({format_poly(self)!r}, order={self.order})"

    def __str__(self):
        return format_poly(self)


def subs_many(polys, values):
    """Substitute {(group, mu): Poly} into several Polys sharing one power cache."""
    if not polys:
        return []
    L = polys[0].layout
    if any(g == "a" for g, _ in values):
        raise ValueError("the a group cannot be substituted")
    items = sorted(((L.var(g, mu), p) for (g, mu), p in values.items()), key=lambda t: t[0])
    mask = 0
    for v, _ in items:
        mask |= _MASK << L.shift(v)
    order = max(p.order for p in polys)
    cache = {0: Poly.one(L, order)}
    vals = [(v, L.shift(v), L.unit(v), p) for v, p in items]
    sh = L.ashift
    out = []
    for poly in polys:
        acc = {}
        for key, rest in poly.split_mask(mask).items():
            prod = _power_product(key, vals, cache, L)
            if not prod.terms:
                continue
            for m, c in _mul_terms(rest, prod.terms, poly.order, sh).items():
                s = acc.get(m, _ZERO) + c
                if s:
                    acc[m] = s
                else:
                    del acc[m]
        out.append(Poly(L, poly.order, acc))
    return out


def _trunc(terms, order, ashift):
    return {m: c for m, c in terms.items() if m >> ashift <= order}


def _power_product(key, vals, cache, L):
    """Product of substituted values for the exponent pattern encoded in key."""
    if key in cache:
        return cache[key]
    for v, sh, unit, p in vals:
        if (key >> sh) & _MASK:
            prev = key - (1 << sh)
            base = _power_product(prev, vals, cache, L)
            res = base * p
            cache[key] = res
            return res
    raise AssertionError("unreachable")


def dot(u, v):
    """Metric contraction sum_mu eta^{mu mu} u_mu v_mu of two vectors of Polys."""
    total = None
    for mu, (x, y) in enumerate(zip(u, v)):
        term = x * y
        if eta(mu) < 0:
            term = -term
        total = term if total is None else total + term
    return total


def _term_sort_key(layout, m):
    exps = [0] * layout.nvars
    for v, e in layout.exponents(m):
        exps[v] = e
    return (m >> layout.ashift, -sum(exps), [-e for e in exps])


def format_monomial(layout, m):
    parts = []
    for v, e in layout.exponents(m):
        name = layout.names[v]
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def format_coefficient(c):
    """Return (sign, text) with text empty for unit magnitude."""
    if c.im == 0:
        r = c.re
        sign = "-" if r < 0 else "+"
        r = abs(r)
        return sign, ("" if r == 1 else format_rational(r))
    if c.re == 0:
        r = c.im
        sign = "-" if r < 0 else "+"
        r = abs(r)
        return sign, ("i" if r == 1 else f"{format_rational(r)}*i")
    return "+", f"({c})"


def format_poly(p):
    items = sorted(p.gauss_items(), key=lambda t: _term_sort_key(p.layout, t[0]))
    if not items:
        return "0"
    pieces = []
    for idx, (m, c) in enumerate(items):
        sign, coeff = format_coefficient(c)
        mono = format_monomial(p.layout, m)
        if mono and coeff:
            body = f"{coeff}*{mono}"
        elif mono:
            body = mono
        else:
            body = coeff or "1"
        if idx == 0:
            pieces.append(("-" if sign == "-" else "") + body)
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


def monomials(n, order, degree, group="x", min_degree=0):
    """All monomials in ``group`` of total degree min_degree..degree, graded."""
    L = layout_for(n)
    out = []
    for deg in range(min_degree, degree + 1):
        for combo in combinations_with_replacement(range(n), deg):
            m = 0
            for mu in combo:
                m += L.unit(L.var(group, mu))
            out.append(Poly(L, order, {m: mpq(1)}))
    return out
