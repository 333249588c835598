"""Realizations x-hat_mu = x^alpha phi_{alpha mu}(d), builders and derived operators."""

from functools import cached_property

from gmpy2 import mpq

from .gaussrat import GaussRat, to_mpq
from .linalg import mat_inverse_unipotent, series_inverse
from .poly import Poly, dot, eta, layout_for
from .series import ScalarSeries2, series_integrate_B, series_reciprocal, series_sqrt
from .weyl import WeylOp, act_on_poly, commutator

__all__ = [
    "Realization",
    "InconsistentRealization",
    "ConversionData",
    "DerivedOps",
    "build_linear",
    "build_typeI",
    "build_typeII",
    "build_vector_like",
    "build_explicit",
    "derive_ops",
    "g_tensor",
    "catalog",
    "catalog_names",
    "get_realization",
    "invariants",
    "solve_gradient_system",
]


class InconsistentRealization(ValueError):
    """A defining equation has no solution: the input phi is not a valid realization."""


def invariants(n, order):
    """(A, B) = (i(a.d), a^2 d^2) as Polys."""
    L = layout_for(n)
    a = Poly.vector(L, order, "a")
    d = Poly.vector(L, order, "d")
    A = dot(a, d).times_i()
    B = dot(a, a) * dot(d, d)
    return A, B


def _delta(L, order, alpha, mu):
    return Poly.const(L, order, eta(alpha)) if alpha == mu else Poly.zero(L, order)


class Realization:
    """The matrix phi_{alpha mu}(d) of polynomials in a and d, with generating data."""

    def __init__(self, n, order, phi, kind="explicit", params=None, name=None):
        self.n = n
        self.order = order
        self.layout = layout_for(n)
        self.phi = tuple(tuple(p.truncate(order) for p in row) for row in phi)
        self.kind = kind
        self.params = dict(params or {})
        self.name = name or kind
        self._t_cache = {}
        self.memo = {}
        limit = [[p.adeg_part(0) for p in row] for row in self.phi]
        for al in range(n):
            for mu in range(n):
                want = eta(al) if al == mu else 0
                if limit[al][mu] != want:
                    raise ValueError("phi must reduce to the metric at a = 0")

    def __eq__(self, other):
        return isinstance(other, Realization) and self.n == other.n and self.phi == other.phi

    def __hash__(self):
        return hash((self.n, self.phi))

    def __repr__(self):
        return f"Realization({self.name!r}, n={self.n}, order={self.order})"

    def with_order(self, order):
        """Same generating data at another truncation order (rebuilt when possible)."""
        if self.kind in _REBUILD:
            return _REBUILD[self.kind](self, order)
        return Realization(self.n, order, self.phi, self.kind, self.params, self.name)

    # -- operators ----------------------------------------------------
    def xhat(self):
        return self._xhat

    @cached_property
    def _xhat(self):
        L = self.layout
        out = []
        for mu in range(self.n):
            s = Poly.zero(L, self.order)
            for al in range(self.n):
                xa = Poly.var(L, self.order, "x", al)
                term = xa * self.phi[al][mu]
                s = s + (term if eta(al) > 0 else -term)
            out.append(WeylOp(s))
        return out

    def t_image(self, word):
        """T(x-hat_{w1} ... x-hat_{wk}) = x-hat_{w1} |> (... |> 1)."""
        word = tuple(word)
        if word in self._t_cache:
            return self._t_cache[word]
        if not word:
            res = Poly.one(self.layout, self.order)
        else:
            res = act_on_poly(self._xhat[word[0]], self.t_image(word[1:]))
        self._t_cache[word] = res
        return res

    @cached_property
    def h(self):
        """h_{alpha mu}(p) = phi_{alpha mu}(d = i p) with p written in the k group."""
        return tuple(tuple(p.rename({"d": "k"}).scale_group("k", GaussRat(0, 1)) for p in row) for row in self.phi)

    @cached_property
    def derived(self):
        return derive_ops(self)

    def validate(self):
        """Exact check of [x_mu, x_nu] = i(a_mu x_nu - a_nu x_mu)."""
        from .consistency import kappa_residuals

        return all(r.is_zero() for _, r in kappa_residuals(self))


# ---------------------------------------------------------------------------
# builders


def build_explicit(n, order, phi, name="explicit"):
    return Realization(n, order, phi, "explicit", {}, name)


def build_linear(alpha, beta, gamma, n=4, order=1, name=None):
    """x-hat = x + i(alpha x (a d) + beta (a x) d + gamma a (x d))."""
    alpha, beta, gamma = to_mpq(alpha), to_mpq(beta), to_mpq(gamma)
    if gamma - alpha != 1:
        raise ValueError("linear realization needs gamma - alpha = 1")
    L = layout_for(n)
    A, _ = invariants(n, order)
    a = Poly.vector(L, order, "a")
    d = Poly.vector(L, order, "d")
    phi = []
    for al in range(n):
        row = []
        for mu in range(n):
            p = _delta(L, order, al, mu) * (1 + A.scale(alpha))
            p = p + (a[al] * d[mu]).scale(GaussRat(0, beta)) + (d[al] * a[mu]).scale(GaussRat(0, gamma))
            row.append(p)
        phi.append(row)
    params = {"alpha": alpha, "beta": beta, "gamma": gamma}
    return Realization(n, order, phi, "linear", params, name or f"linear({alpha},{beta},{gamma})")


def _covariant_phi(n, order, phi_s, beta1, gamma1, gamma2):
    L = layout_for(n)
    A, B = invariants(n, order)
    a = Poly.vector(L, order, "a")
    d = Poly.vector(L, order, "d")
    a2 = dot(a, a)
    fphi = phi_s.evaluate(A, B)
    g1 = gamma1.evaluate(A, B)
    g2 = gamma2.evaluate(A, B)
    out = []
    for al in range(n):
        row = []
        for mu in range(n):
            p = _delta(L, order, al, mu) * fphi
            if beta1:
                p = p + (a[al] * d[mu]).times_i()
            p = p + (d[al] * a[mu] * g1).times_i() - a2 * d[al] * d[mu] * g2
            row.append(p)
        out.append(row)
    return out


def _check_unit(phi_s):
    if phi_s.constant() != 1:
        raise ValueError("phi(0, 0) must equal 1")


def _gamma_denominator(phi_s):
    A = ScalarSeries2.A(phi_s.order)
    B = ScalarSeries2.B(phi_s.order)
    return phi_s - A * phi_s.dA() - B * phi_s.dB() * 2


def type_gammas(phi_s, type_two):
    """(gamma1, gamma2) for the covariant families of type I and II."""
    den = series_reciprocal(_gamma_denominator(phi_s))
    A = ScalarSeries2.A(phi_s.order)
    g1 = (1 + phi_s.dA()) * phi_s * den
    if type_two:
        g2 = (phi_s.dA() - (phi_s + A) * phi_s.dB() * 2) * den
    else:
        g2 = -(phi_s.dB() * phi_s * 2) * den
    return g1, g2


def build_typeI(phi_s, n=4, order=3, name=None):
    _check_unit(phi_s)
    phi_s = phi_s.truncate(order)
    g1, g2 = type_gammas(phi_s, False)
    phi = _covariant_phi(n, order, phi_s, False, g1, g2)
    return Realization(n, order, phi, "typeI", {"phi": phi_s}, name or "typeI")


def build_typeII(phi_s, n=4, order=3, name=None):
    _check_unit(phi_s)
    phi_s = phi_s.truncate(order)
    g1, g2 = type_gammas(phi_s, True)
    phi = _covariant_phi(n, order, phi_s, True, g1, g2)
    return Realization(n, order, phi, "typeII", {"phi": phi_s}, name or "typeII")


def vector_like_gamma2(f):
    fp = f.dB()
    B = ScalarSeries2.B(f.order)
    den = f - B * fp * 2
    if den.constant().is_zero():
        raise ValueError("gamma2 denominator vanishes at the origin")
    return -(1 + f * fp * 2) * series_reciprocal(den)


def build_vector_like(f, n=4, order=3, name=None):
    """phi = eta(-A + f(B)) + i a_alpha d_mu - a^2 d_alpha d_mu gamma2(B)."""
    if f.depends_on_A():
        raise ValueError("f must be a function of B alone")
    if f.constant() != 1:
        raise ValueError("f(0) must equal 1")
    f = f.truncate(order)
    g2 = vector_like_gamma2(f)
    phi_s = f - ScalarSeries2.A(order)
    phi = _covariant_phi(n, order, phi_s, True, ScalarSeries2(order), g2)
    return Realization(n, order, phi, "vector_like", {"f": f, "phi": phi_s}, name or "vector_like")


def _rebuild_linear(r, order):
    p = r.params
    return build_linear(p["alpha"], p["beta"], p["gamma"], r.n, order, r.name)


def _rebuild_series(builder, key):
    def rebuild(r, order):
        s = r.params[key]
        if s.order < order and r.name in _CATALOG:
            return _CATALOG[r.name](r.n, order)
        return builder(s, r.n, order, r.name)

    return rebuild


_REBUILD = {
    "linear": _rebuild_linear,
    "typeI": _rebuild_series(build_typeI, "phi"),
    "typeII": _rebuild_series(build_typeII, "phi"),
    "vector_like": _rebuild_series(build_vector_like, "f"),
}


# ---------------------------------------------------------------------------
# catalog


def phi_left(order):
    return 1 - ScalarSeries2.A(order)


def phi_symmetric(order):
    # A / (e^A - 1) is the reciprocal of (e^A - 1) / A
    ex = ScalarSeries2.exp_A(order + 1)
    shifted = ScalarSeries2(order, {(m - 1, 0): c for (m, _), c in ex.coeffs.items() if m >= 1})
    return series_reciprocal(shifted)


def f_natural(order):
    return series_sqrt(1 - ScalarSeries2.B(order))


_CATALOG = {
    "left": lambda n, N: build_typeI(phi_left(N), n, N, "left"),
    "right": lambda n, N: build_typeI(ScalarSeries2.const(N), n, N, "right"),
    "symmetric": lambda n, N: build_typeI(phi_symmetric(N), n, N, "symmetric"),
    "natural": lambda n, N: build_vector_like(f_natural(N), n, N, "natural"),
    "ms": lambda n, N: build_typeII(ScalarSeries2.const(N), n, N, "ms"),
}

_ALIASES = {
    "magueijo-smolin": "ms",
    "magueijo_smolin": "ms",
    "left-covariant": "left",
    "right-covariant": "right",
    "totally-symmetric": "symmetric",
    "classical": "natural",
}

_BUILT = {}


def catalog_names():
    return list(_CATALOG)


def get_realization(name, n=4, order=3):
    key = _ALIASES.get(name.lower(), name.lower())
    if key not in _CATALOG:
        raise KeyError(f"unknown realization {name!r}; known: {', '.join(_CATALOG)}")
    if (key, n, order) not in _BUILT:
        _BUILT[(key, n, order)] = _CATALOG[key](n, order)
    return _BUILT[(key, n, order)]


def catalog(n=4, order=3):
    return {name: get_realization(name, n, order) for name in _CATALOG}


# ---------------------------------------------------------------------------
# derived operators


def euler_integral(grad, constant):
    """F with dF/dd_mu = grad[mu] (homogeneous termwise), plus the constant part."""
    L = constant.layout
    total = Poly.zero(L, constant.order)
    for mu, g in enumerate(grad):
        total = total + g * Poly.var(L, constant.order, "d", mu)
    out = {}
    for m, c in total.terms.items():
        deg = L.group_degree(m, "d")
        out[m] = c / deg
    return constant + Poly(L, constant.order, out)


def _comm_with_xhat(F, phi, nu):
    """[F(d), x-hat_nu] = sum_alpha dF/dd_alpha phi_{alpha nu}."""
    acc = None
    for al in range(len(phi)):
        dF = F.diff("d", al)
        if dF.is_zero():
            continue
        t = dF * phi[al][nu]
        acc = t if acc is None else acc + t
    return acc if acc is not None else F * 0


def solve_gradient_system(phi, initial, rhs, what):
    """Solve [F_i(d), x-hat_nu] = rhs(F, i, nu) for d-only F_i order by order.

    ``initial`` holds the a = 0 values; each sweep fixes one more a-order via
    the Euler integral of eta_nu (rhs - correction), and the result is checked
    exactly against the defining equation.
    """
    n = len(phi)
    order = phi[0][0].order
    L = phi[0][0].layout
    E = [[phi[al][nu] - _delta(L, order, al, nu) for nu in range(n)] for al in range(n)]
    F = list(initial)
    consts = [f.filter(lambda m: L.group_degree(m, "d") == 0) for f in initial]
    for _ in range(order + 1):
        new = []
        for i, Fi in enumerate(F):
            grad = []
            for nu in range(n):
                corr = None
                for al in range(n):
                    if E[al][nu].is_zero():
                        continue
                    dF = Fi.diff("d", al)
                    if dF.is_zero():
                        continue
                    t = dF * E[al][nu]
                    corr = t if corr is None else corr + t
                g = rhs(F, i, nu)
                if corr is not None:
                    g = g - corr
                grad.append(g if eta(nu) > 0 else -g)
            new.append(euler_integral(grad, consts[i]))
        F = new
    for i, Fi in enumerate(F):
        for nu in range(n):
            if _comm_with_xhat(Fi, phi, nu) != rhs(F, i, nu):
                raise InconsistentRealization(f"{what}: defining commutator has no solution")
    return F


class ConversionData:
    """Covariant Ansatz D = d G1 + i a d^2 G2, X = x psi and its inverse."""

    def __init__(self, G1, G2, D, psi, D_inverse, calP):
        self.G1 = G1
        self.G2 = G2
        self.D = D
        self.psi = psi
        self.D_inverse = D_inverse
        self.calP = calP


def conversion_data(r):
    """ConversionData for type I, type II and vector-like realizations."""
    if r.kind not in ("typeI", "typeII", "vector_like"):
        return None
    N = r.order
    phi_s = r.params["phi"]
    A = ScalarSeries2.A(N)
    B = ScalarSeries2.B(N)
    if r.kind == "typeI":
        G1 = series_reciprocal(phi_s + A)
        G2 = series_reciprocal(phi_s * (phi_s + A) * 2)
    else:
        G1 = series_reciprocal(series_sqrt((phi_s + A) * (phi_s + A) + B))
        G2 = ScalarSeries2(N)
    Ap, Bp = invariants(r.n, N)
    L = r.layout
    a = Poly.vector(L, N, "a")
    d = Poly.vector(L, N, "d")
    g1 = G1.evaluate(Ap, Bp)
    g2 = G2.evaluate(Ap, Bp)
    d2 = dot(d, d)
    D = [d[mu] * g1 + (a[mu] * d2 * g2).times_i() for mu in range(r.n)]
    J = [[D[mu].diff("d", al) for al in range(r.n)] for mu in range(r.n)]
    Jinv = mat_inverse_unipotent(J)
    psi = [[Jinv[al][mu] * eta(mu) for mu in range(r.n)] for al in range(r.n)]
    Dinv = reverse_map(D)
    calP = [[compose_d(J[al][mu] * eta(mu), Dinv) for mu in range(r.n)] for al in range(r.n)]
    return ConversionData(G1, G2, D, psi, Dinv, calP)


def compose_d(p, values):
    """Substitute d_mu -> values[mu] in a Poly."""
    return p.subs({("d", mu): v for mu, v in enumerate(values)})


def reverse_map(D):
    """Inverse of d -> D(d) = d + O(a) as series, by fixed-point iteration."""
    n = len(D)
    L = D[0].layout
    order = D[0].order
    d = Poly.vector(L, order, "d")
    inv = list(d)
    for _ in range(order + 1):
        comp = [compose_d(D[mu], inv) for mu in range(n)]
        inv = [inv[mu] - (comp[mu] - d[mu]) for mu in range(n)]
    return inv


class DerivedOps:
    """Shift operator, Casimir, Dirac derivatives, Lorentz generators and friends."""

    def __init__(self, r, Z, Zinv, box, dirac, psi, box_h=None):
        self.realization = r
        n, N, L = r.n, r.order, r.layout
        self.Z_poly = Z
        self.Zinv_poly = Zinv
        self.box_poly = box
        self.dirac_poly = dirac
        self.psi = psi
        self.Z = WeylOp(Z)
        self.Zinv = WeylOp(Zinv)
        self.box = WeylOp(box)
        self.box_h = WeylOp(box_h) if box_h is not None else None
        self.dirac = [WeylOp(p) for p in dirac]
        a = Poly.vector(L, N, "a")
        half_i = GaussRat(0, mpq(1, 2))
        self.partialL_poly = [dirac[mu] - (a[mu] * box).scale(half_i) for mu in range(n)]
        self.partialL = [WeylOp(p) for p in self.partialL_poly]
        self.pL = [WeylOp(p.scale(GaussRat(0, -1))) for p in self.partialL_poly]
        X = []
        for mu in range(n):
            s = Poly.zero(L, N)
            for al in range(n):
                s = s + Poly.var(L, N, "x", al) * psi[al][mu] * eta(al)
            X.append(WeylOp(s))
        self.bigX = X
        xh = r.xhat()
        self.lorentz = {}
        for mu in range(n):
            for nu in range(n):
                if mu == nu:
                    self.lorentz[(mu, nu)] = WeylOp.zero(n, N)
                elif mu < nu:
                    s = (xh[mu].sym * dirac[nu] - xh[nu].sym * dirac[mu]) * Z
                    self.lorentz[(mu, nu)] = WeylOp(s)
                else:
                    self.lorentz[(mu, nu)] = -self.lorentz[(nu, mu)]

    def M(self, mu, nu):
        return self.lorentz[(mu, nu)]


def derive_ops(r):
    n, N, L = r.n, r.order, r.layout
    phi = r.phi
    a = Poly.vector(L, N, "a")
    d = Poly.vector(L, N, "d")
    one = Poly.one(L, N)

    (Z,) = solve_gradient_system(phi, [one], lambda F, i, nu: (a[nu] * F[0]).times_i(), "shift operator Z")
    Zinv = series_inverse(Z)
    data = conversion_data(r)
    if data is not None:
        dirac = data.D
        for mu in range(n):
            for nu in range(n):
                want = _delta(L, N, mu, nu) * Zinv + (a[mu] * dirac[nu]).times_i()
                if _comm_with_xhat(dirac[mu], phi, nu) != want:
                    raise InconsistentRealization("Dirac derivative from the covariant Ansatz fails its commutator")
        psi = data.psi
    else:
        dirac = solve_gradient_system(
            phi,
            d,
            lambda F, i, nu: _delta(L, N, i, nu) * Zinv + (a[i] * F[nu]).times_i(),
            "Dirac derivative",
        )
        J = [[dirac[mu].diff("d", al) for al in range(n)] for mu in range(n)]
        Jinv = mat_inverse_unipotent(J)
        psi = [[Jinv[al][mu] * eta(mu) for mu in range(n)] for al in range(n)]
    (box,) = solve_gradient_system(phi, [dot(d, d)], lambda F, i, nu: dirac[nu] * 2, "Casimir")
    box_h = None
    if r.kind == "vector_like":
        box_h = vector_like_box(r)
    return DerivedOps(r, Z, Zinv, box, dirac, psi, box_h)


def vector_like_box(r):
    """Box_h = (1/a^2) int_0^B dt / (f(t) - t gamma2(t)) for vector-like realizations."""
    f = r.params["f"]
    N = r.order
    integrand = series_reciprocal(f - ScalarSeries2.B(N) * vector_like_gamma2(f))
    integral = series_integrate_B(integrand)
    Ap, Bp = invariants(r.n, N)
    d = Poly.vector(r.layout, N, "d")
    # B^j / a^2 = d^2 B^(j-1)
    reduced = ScalarSeries2(N, {(0, j - 1): c for (_, j), c in integral.coeffs.items() if j >= 1})
    return dot(d, d) * reduced.evaluate(Ap, Bp)


def g_tensor(r):
    """g_{mu nu lambda}(p) = [M_mu nu, p_lambda] as momentum polynomials in k."""
    ops = r.derived
    n, N = r.n, r.order
    out = {}
    for mu in range(n):
        for nu in range(n):
            for lam in range(n):
                p_lam = WeylOp(Poly.var(r.layout, N, "d", lam).scale(GaussRat(0, -1)))
                c = commutator(ops.M(mu, nu), p_lam)
                if not c.x_free():
                    raise InconsistentRealization("[M, p] depends on x")
                out[(mu, nu, lam)] = c.sym.rename({"d": "k"}).scale_group("k", GaussRat(0, 1))
    return out
