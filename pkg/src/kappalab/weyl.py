"""Normal-ordered Weyl algebra with [d_mu, x_nu] = eta_{mu nu}.

An operator is stored through its normal-ordered symbol: a Poly in the
groups a, x and d where every x stands to the left of every d.  Products use
the symbol formula  u v = sum_k eta^k / k! (d_D^k u)(d_X^k v).
"""

from math import factorial

from .gaussrat import GaussRat
from .poly import Poly, eta, layout_for

__all__ = [
    "WeylOp",
    "weyl_mul",
    "commutator",
    "act_on_poly",
    "act_on_planewave",
    "PlaneWaveState",
    "XHatPoly",
    "hat_T",
    "unhat_T_inverse",
    "momentum_partial",
]


class WeylOp:
    """Element of the Weyl algebra in normal-ordered form."""

    __slots__ = ("sym",)

    def __init__(self, sym):
        self.sym = sym

    @classmethod
    def from_poly(cls, p):
        return cls(p)

    @classmethod
    def zero(cls, n, order):
        return cls(Poly.zero(layout_for(n), order))

    @classmethod
    def one(cls, n, order):
        return cls(Poly.one(layout_for(n), order))

    @classmethod
    def x(cls, n, order, mu):
        return cls(Poly.var(layout_for(n), order, "x", mu))

    @classmethod
    def d(cls, n, order, mu):
        return cls(Poly.var(layout_for(n), order, "d", mu))

    @property
    def n(self):
        return self.sym.layout.n

    @property
    def order(self):
        return self.sym.order

    def __add__(self, other):
        return WeylOp(self.sym + _sym(other))

    __radd__ = __add__

    def __sub__(self, other):
        return WeylOp(self.sym - _sym(other))

    def __rsub__(self, other):
        return WeylOp(_sym(other) - self.sym)

    def __neg__(self):
        return WeylOp(-self.sym)

    def __mul__(self, other):
        if isinstance(other, WeylOp):
            return weyl_mul(self, other)
        if isinstance(other, Poly):
            # a Poly operand is read as an operator symbol placed on the right
            return weyl_mul(self, WeylOp(other))
        return WeylOp(self.sym.scale(other))

    def __rmul__(self, other):
        if isinstance(other, Poly):
            return weyl_mul(WeylOp(other), self)
        return WeylOp(self.sym.scale(other))

    def __pow__(self, k):
        out = WeylOp.one(self.n, self.order)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, WeylOp):
            return NotImplemented
        return self.sym == other.sym

    def __hash__(self):
        return hash(self.sym)

    def is_zero(self):
        return self.sym.is_zero()

    def truncate(self, order):
        return WeylOp(self.sym.truncate(order))

    def x_free(self):
        return not self.sym.has_group("x")

    def __repr__(self):
        return f"WeylOp({self.sym})"

    def __str__(self):
        return str(self.sym)


def _sym(value):
    if isinstance(value, WeylOp):
        return value.sym
    return value


def weyl_mul(u, v):
    """Normal-ordered product u v."""
    if u.n != v.n:
        raise ValueError("dimension mismatch")
    return WeylOp(symbol_product(u.sym, v.sym))


def symbol_product(u, v, xg="x", dg="d"):
    """Normal-ordered product of two symbols in the groups (xg, dg)."""
    n = u.layout.n
    pairs = [(u, v)]
    for mu in range(n):
        s = eta(mu)
        new = []
        for U, V in pairs:
            new.append((U, V))
            j = 1
            du, dv = U, V
            while True:
                du = du.diff(dg, mu)
                dv = dv.diff(xg, mu)
                if du.is_zero() or dv.is_zero():
                    break
                coeff = GaussRat(s ** j) / factorial(j)
                new.append((du.scale(coeff), dv))
                j += 1
        pairs = new
    out = None
    for U, V in pairs:
        term = U * V
        out = term if out is None else out + term
    return out


def commutator(u, v):
    return weyl_mul(u, v) - weyl_mul(v, u)



def act_on_poly(u, f):
    """u |> f for a polynomial f(x) (d_mu acts as eta_{mu mu} d/dx_mu)."""
    if isinstance(u, WeylOp):
        u = u.sym
    L = u.layout
    parts = u.split(("d",))
    cache = {0: f}
    out = Poly.zero(L, min(u.order, f.order))
    for key, rest in parts.items():
        g = _iterated(key, cache, L, lambda p, mu: _dx(p, mu))
        if g.is_zero():
            continue
        out = out + rest * g
    return out


def _dx(p, mu):
    q = p.diff("x", mu)
    return -q if eta(mu) < 0 else q


def _iterated(key, cache, L, step):
    if key in cache:
        return cache[key]
    base = L.var("d", 0)
    for mu in range(L.n):
        sh = L.shift(base + mu)
        if (key >> sh) & 0xFF:
            prev = _iterated(key - (1 << sh), cache, L, step)
            res = step(prev, mu)
            cache[key] = res
            return res
    raise AssertionError("unreachable")


class PlaneWaveState:
    """prefactor(x) * exp(i label.x) with a symbolic momentum label."""

    __slots__ = ("prefactor", "label")

    def __init__(self, prefactor, label=None):
        self.prefactor = prefactor
        if label is None:
            label = Poly.vector(prefactor.layout, prefactor.order, "k")
        self.label = list(label)

    @classmethod
    def plane_wave(cls, n, order, group="k"):
        L = layout_for(n)
        return cls(Poly.one(L, order), Poly.vector(L, order, group))

    def __eq__(self, other):
        return (
            isinstance(other, PlaneWaveState)
            and self.prefactor == other.prefactor
            and all(p == q for p, q in zip(self.label, other.label))
        )

    def __repr__(self):
        return f"PlaneWaveState({self.prefactor}, [{', '.join(map(str, self.label))}])"


def act_on_planewave(u, w):
    """u |> (F e^{ikx}) = e^{ikx} sum_beta U_beta (d + ik)^beta F."""
    if isinstance(u, WeylOp):
        u = u.sym
    L = u.layout
    ik = [lab.times_i() for lab in w.label]

    def step(p, mu):
        return _dx(p, mu) + ik[mu] * p

    parts = u.split(("d",))
    cache = {0: w.prefactor}
    out = Poly.zero(L, min(u.order, w.prefactor.order))
    for key, rest in parts.items():
        g = _iterated(key, cache, L, step)
        out = out + rest * g
    return PlaneWaveState(out, w.label)


def momentum_partial(p, group, mu):
    """Formal partial derivative of a momentum polynomial."""
    return p.diff(group, mu)


class XHatPoly:
    """Formal polynomial in the noncommuting x-hats: ordered word -> coefficient."""

    __slots__ = ("n", "order", "words")

    def __init__(self, n, order, words=None):
        self.n = n
        self.order = order
        self.words = {w: c for w, c in (words or {}).items() if not c.is_zero()}

    def __eq__(self, other):
        return isinstance(other, XHatPoly) and self.words == other.words

    def to_weyl(self, r):
        """The operator f(x-hat) as a normal-ordered WeylOp."""
        xh = r.xhat()
        cache = {(): WeylOp.one(self.n, self.order)}

        def word_op(w):
            if w not in cache:
                cache[w] = weyl_mul(xh[w[0]], word_op(w[1:]))
            return cache[w]

        out = WeylOp.zero(self.n, self.order)
        for w, c in self.words.items():
            out = out + WeylOp(c) * word_op(w)
        return out

    def act(self, r, g):
        """f(x-hat) |> g computed word by word from the right."""
        xh = r.xhat()
        cache = {(): g}

        def image(w):
            if w not in cache:
                cache[w] = act_on_poly(xh[w[0]], image(w[1:]))
            return cache[w]

        out = Poly.zero(g.layout, min(self.order, g.order))
        for w, c in self.words.items():
            out = out + c * image(w)
        return out

    def __str__(self):
        if not self.words:
            return "0"
        parts = []
        for w, c in sorted(self.words.items(), key=lambda t: (-len(t[0]), t[0])):
            word = "*".join(f"xh{mu}" for mu in w) or "1"
            parts.append(f"({c})*{word}")
        return " + ".join(parts)


def hat_T(word, r):
    """T(x-hat word) = word |> 1."""
    return r.t_image(tuple(word))


def unhat_T_inverse(f, r):
    """The formal x-hat polynomial whose T-image is f."""
    L = f.layout
    order = f.order
    words = {}
    rest = f
    guard = 0
    while not rest.is_zero():
        guard += 1
        if guard > 10000:
            raise RuntimeError("T inverse did not terminate")
        top = rest.degree("x")
        parts = rest.split(("x",))
        for key, coeff in parts.items():
            if L.group_degree(key, "x") != top:
                continue
            exps = L.group_exponents(key, "x")
            word = tuple(mu for mu in range(L.n) for _ in range(exps[mu]))
            words[word] = words.get(word, Poly.zero(L, order)) + coeff
            rest = rest - coeff * r.t_image(word).truncate(order)
    return XHatPoly(L.n, order, words)
