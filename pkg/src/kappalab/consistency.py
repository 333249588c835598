"""Jacobi-identity PDE checks, algebra relations and the first-order oracle.

Conventions: h_{alpha mu}(p) = phi_{alpha mu}(d = i p), so that
[x-hat_nu, p_mu] = i h_{mu nu}, and g_{mu nu lambda}(p) = [M_mu nu, p_lambda].
For any F(p) one has [x-hat_mu, F] = i sum_alpha dF/dp_alpha h_{alpha mu} and
[M_mu nu, F] = sum_alpha dF/dp_alpha g_{mu nu alpha}; the sums over alpha are
plain (no metric), since x^alpha is paired with d/dp_alpha.
"""

from itertools import product

from .gaussrat import GaussRat, to_mpq
from .hopf import coproduct_partial
from .kernels import D_map, K_inverse, K_map, flow_P
from .momentum import MomentumMap
from .poly import Poly, dot, eta, layout_for, monomials
from .realizations import build_linear, g_tensor
from .report import Check, Report
from .weyl import WeylOp, commutator, unhat_T_inverse

__all__ = [
    "kappa_residuals",
    "check_kappa_relations",
    "check_algebra_relations",
    "check_jacobi_pdes",
    "perturbed_h",
    "LinearOracle",
    "linear_oracle",
    "covariant_linear_map",
    "linear_coefficients",
    "check_linear_oracle",
    "check_correspondence_formula",
    "SAMPLE_TRIPLES",
    "exact_kernel",
    "check_exact_kernels",
    "check_symmetric_basis",
]

I = GaussRat(0, 1)

SAMPLE_TRIPLES = (
    ("-1", "1", "0"),
    ("-1", "0", "0"),
    ("0", "0", "1"),
    ("-1/2", "0", "1/2"),
    ("0", "1", "1"),
    ("-2", "0", "-1"),
    ("-1", "1/2", "0"),
    ("-3/2", "1", "-1/2"),
)


def _eta_if(flag, mu):
    return eta(mu) if flag else 0


# -- operator relations -------------------------------------------------------


def kappa_residuals(r):
    """[(label, [x_mu, x_nu] - i(a_mu x_nu - a_nu x_mu))] for mu < nu."""
    xh = r.xhat()
    a = Poly.vector(r.layout, r.order, "a")
    out = []
    for mu in range(r.n):
        for nu in range(mu + 1, r.n):
            want = WeylOp((a[mu] * xh[nu].sym - a[nu] * xh[mu].sym).times_i())
            out.append((f"[x{mu}, x{nu}]", commutator(xh[mu], xh[nu]) - want))
    return out


def check_kappa_relations(r):
    return Report(Check(f"kappa {label}", res) for label, res in kappa_residuals(r))


def _lorentz_rhs(M, mu, nu, lam, rho):
    """M_mu rho eta_nu lam - M_nu rho eta_mu lam - M_mu lam eta_nu rho + M_nu lam eta_mu rho."""
    out = None
    for coeff, op in (
        (_eta_if(nu == lam, nu), M(mu, rho)),
        (-_eta_if(mu == lam, mu), M(nu, rho)),
        (-_eta_if(nu == rho, nu), M(mu, lam)),
        (_eta_if(mu == rho, mu), M(nu, lam)),
    ):
        if coeff:
            t = op if coeff > 0 else -op
            out = t if out is None else out + t
    return out


def lorentz_vector_residual(r):
    """[M_mu nu, p_lambda] - (p_mu eta_nu lambda - p_nu eta_mu lambda), all indices."""
    ops = r.derived
    n, N, L = r.n, r.order, r.layout
    p = [WeylOp(Poly.var(L, N, "d", mu).scale(-I)) for mu in range(n)]
    res = []
    for mu, nu, lam in product(range(n), repeat=3):
        if mu >= nu:
            continue
        want = WeylOp.zero(n, N)
        if nu == lam:
            want = want + p[mu] * eta(nu)
        if mu == lam:
            want = want - p[nu] * eta(mu)
        res.append(commutator(ops.M(mu, nu), p[lam]) - want)
    return res


def check_algebra_relations(r, vector=None):
    """Residuals of the relations among x-hat, M and p.

    ``vector`` controls the vector relation [M, p] = p eta - p eta: "zero"
    expects it to hold, "nonzero" expects it to fail, None decides by kind
    (checked for vector-like realizations only).
    """
    ops = r.derived
    n, N, L = r.n, r.order, r.layout
    a = Poly.vector(L, N, "a")
    xh = r.xhat()
    M = ops.M
    checks = [Check(f"kappa {label}", res) for label, res in kappa_residuals(r)]
    pairs = [(mu, nu) for mu in range(n) for nu in range(mu + 1, n)]
    res = []
    for i, (mu, nu) in enumerate(pairs):
        for lam, rho in pairs[i:]:
            want = _lorentz_rhs(M, mu, nu, lam, rho)
            c = commutator(M(mu, nu), M(lam, rho))
            res.append(c if want is None else c - want)
    checks.append(Check("Lorentz algebra [M, M]", res))
    res = []
    for (mu, nu), lam in product(pairs, range(n)):
        want = WeylOp((a[mu] * M(nu, lam).sym - a[nu] * M(mu, lam).sym).scale(-I))
        if nu == lam:
            want = want + xh[mu] * eta(nu)
        if mu == lam:
            want = want - xh[nu] * eta(mu)
        res.append(commutator(M(mu, nu), xh[lam]) - want)
    checks.append(Check("[M, x-hat]", res))
    p = [WeylOp(Poly.var(L, N, "d", mu).scale(-I)) for mu in range(n)]
    checks.append(Check("[p, p] = 0", [commutator(p[mu], p[nu]) for mu, nu in pairs]))
    res = []
    for mu, nu in product(range(n), repeat=2):
        res.append(commutator(xh[nu], p[mu]) - WeylOp(r.phi[mu][nu].times_i()))
    checks.append(Check("[x-hat, p] = i h", res))
    if vector is None and r.kind == "vector_like":
        vector = "zero"
    if vector is not None:
        if vector not in ("zero", "nonzero"):
            raise ValueError("vector must be 'zero', 'nonzero' or None")
        checks.append(Check("[M, p] undeformed vector", lorentz_vector_residual(r), expected_zero=vector == "zero"))
    return Report(checks)


# -- Jacobi PDEs ---------------------------------------------------------------


def perturbed_h(r, shift=1):
    """h with gamma2 shifted: h + shift a^2 p_alpha p_mu (a negative control)."""
    L, N = r.layout, r.order
    a = Poly.vector(L, N, "a")
    k = Poly.vector(L, N, "k")
    a2 = dot(a, a)
    return tuple(tuple(r.h[al][mu] + (a2 * k[al] * k[mu]).scale(shift) for mu in range(r.n)) for al in range(r.n))


def _contract(dF, G):
    """sum_alpha dF[alpha] G[alpha] over the plain index alpha."""
    out = dF[0] * G[0]
    for al in range(1, len(dF)):
        out = out + dF[al] * G[al]
    return out


def check_jacobi_pdes(r, h=None, g=None):
    """Residuals of the three Jacobi PDEs for h (and g from [M, p])."""
    n, N, L = r.n, r.order, r.layout
    h = r.h if h is None else h
    g = g_tensor(r) if g is None else g
    a = Poly.vector(L, N, "a")
    zero = Poly.zero(L, N)
    dh = {(lam, mu): [h[lam][mu].diff("k", al) for al in range(n)] for lam in range(n) for mu in range(n)}
    dg = {key: [val.diff("k", al) for al in range(n)] for key, val in g.items()}
    col = {mu: [h[al][mu] for al in range(n)] for mu in range(n)}
    gcol = {(mu, nu): [g[(mu, nu, al)] for al in range(n)] for mu in range(n) for nu in range(n)}

    def eta_term(flag, mu, p):
        return p.scale(eta(mu)) if flag else zero

    # x-hat, x-hat, p
    jac_xxp = []
    for lam, mu, nu in product(range(n), repeat=3):
        if mu >= nu:
            continue
        lhs = _contract(dh[(lam, nu)], col[mu]) - _contract(dh[(lam, mu)], col[nu])
        jac_xxp.append(lhs - (a[mu] * h[lam][nu] - a[nu] * h[lam][mu]))
    # M, M, p
    pairs = [(mu, nu) for mu in range(n) for nu in range(mu + 1, n)]
    jac_mmp = []
    for (mu, nu), (lam, rho), sig in product(pairs, pairs, range(n)):
        lhs = _contract(dg[(lam, rho, sig)], gcol[(mu, nu)]) - _contract(dg[(mu, nu, sig)], gcol[(lam, rho)])
        rhs = (
            eta_term(nu == lam, nu, g[(mu, rho, sig)])
            - eta_term(mu == lam, mu, g[(nu, rho, sig)])
            - eta_term(nu == rho, nu, g[(mu, lam, sig)])
            + eta_term(mu == rho, mu, g[(nu, lam, sig)])
        )
        jac_mmp.append(lhs - rhs)
    # M, p, x-hat
    jac_mpx = []
    for (mu, nu), lam, rho in product(pairs, range(n), range(n)):
        lhs = _contract(dg[(mu, nu, lam)], col[rho]) - _contract(dh[(lam, rho)], gcol[(mu, nu)])
        rhs = (
            eta_term(mu == rho, mu, h[lam][nu])
            - eta_term(nu == rho, nu, h[lam][mu])
            + a[mu] * g[(nu, rho, lam)]
            - a[nu] * g[(mu, rho, lam)]
        )
        jac_mpx.append(lhs - rhs)
    return Report([Check("Jacobi (M, M, p)", jac_mmp), Check("Jacobi (x, x, p)", jac_xxp), Check("Jacobi (M, p, x)", jac_mpx)])


# -- first-order oracle ----------------------------------------------------------


def covariant_linear_map(u, v):
    """(alpha, beta, gamma) = (-u - 1, -2v + 1, -u)."""
    u, v = to_mpq(u), to_mpq(v)
    return (-u - 1, -2 * v + 1, -u)


class LinearOracle:
    """Closed first-order forms of P, K, K^-1, D and Delta d for (alpha, beta, gamma)."""

    def __init__(self, alpha, beta, gamma):
        self.alpha, self.beta, self.gamma = to_mpq(alpha), to_mpq(beta), to_mpq(gamma)
        if self.gamma - self.alpha != 1:
            raise ValueError("linear realization needs gamma - alpha = 1")

    def _brace(self, n, left, right):
        """alpha l_mu (a r) + beta a_mu (l r) + gamma (a l) r_mu."""
        L = layout_for(n)
        a = Poly.vector(L, 1, "a")
        l = Poly.vector(L, 1, left)
        rr = Poly.vector(L, 1, right)
        ar, lr, al = dot(a, rr), dot(l, rr), dot(a, l)
        return [
            (l[mu] * ar).scale(self.alpha) + (a[mu] * lr).scale(self.beta) + (al * rr[mu]).scale(self.gamma)
            for mu in range(n)
        ]

    def P(self, n):
        k = Poly.vector(layout_for(n), 1, "k")
        q = Poly.vector(layout_for(n), 1, "q")
        kk, kq = self._brace(n, "k", "k"), self._brace(n, "k", "q")
        return MomentumMap([k[mu] + q[mu] - kk[mu] / 2 - kq[mu] for mu in range(n)], 2)

    def K(self, n):
        k = Poly.vector(layout_for(n), 1, "k")
        kk = self._brace(n, "k", "k")
        return MomentumMap([k[mu] - kk[mu] / 2 for mu in range(n)], 1)

    def K_inverse(self, n):
        k = Poly.vector(layout_for(n), 1, "k")
        kk = self._brace(n, "k", "k")
        return MomentumMap([k[mu] + kk[mu] / 2 for mu in range(n)], 1)

    def D(self, n):
        k = Poly.vector(layout_for(n), 1, "k")
        q = Poly.vector(layout_for(n), 1, "q")
        kq = self._brace(n, "k", "q")
        return MomentumMap([k[mu] + q[mu] - kq[mu] for mu in range(n)], 2)

    def coproduct(self, n):
        """Delta d_mu = d (x) 1 + 1 (x) d + i{alpha d_mu (x) (a d) + beta a_mu d^alpha (x) d_alpha + gamma (a d) (x) d_mu}."""
        d1 = Poly.vector(layout_for(n), 1, "d1")
        d2 = Poly.vector(layout_for(n), 1, "d2")
        br = self._brace(n, "d1", "d2")
        return [d1[mu] + d2[mu] + br[mu].times_i() for mu in range(n)]


def linear_oracle(alpha, beta, gamma):
    return LinearOracle(alpha, beta, gamma)


def linear_coefficients(r):
    """(alpha, beta, gamma) read off the first-order part of phi."""
    L = r.layout
    n = r.n
    if n < 2:
        raise ValueError("need n >= 2")
    # phi_00 = eta_00 (1 + i alpha (a d)) + i beta a_0 d_0 + i gamma d_0 a_0 at first order
    # phi_01 = i beta a_0 d_1 + i gamma d_0 a_1
    p01 = r.phi[0][1].adeg_part(1)
    p10 = r.phi[1][1].adeg_part(1)

    def coeff(p, mono):
        return dict(p.gauss_items()).get(mono, GaussRat(0))

    beta = coeff(p01, L.unit(L.var("a", 0)) + L.unit(L.var("d", 1))).im
    gamma = coeff(p01, L.unit(L.var("d", 0)) + L.unit(L.var("a", 1))).im
    # phi_11 contains i alpha eta_11 (a d) -> i alpha a_1 d_1 plus (beta + gamma) i a_1 d_1
    total = coeff(p10, L.unit(L.var("a", 1)) + L.unit(L.var("d", 1))).im
    alpha = total - beta - gamma
    return alpha, beta, gamma


def check_linear_oracle(alpha, beta, gamma, n=4):
    """Compare flow/K/K^-1/D/coproduct at order 1 with the closed forms."""
    oracle = LinearOracle(alpha, beta, gamma)
    r = build_linear(alpha, beta, gamma, n, 1)
    Dop = [t.poly for t in coproduct_partial(r)]
    want_cop = oracle.coproduct(n)
    return Report(
        [
            Check("P", list(flow_P(r).P - oracle.P(n))),
            Check("K", list(K_map(r) - oracle.K(n))),
            Check("K^-1", list(K_inverse(r) - oracle.K_inverse(n))),
            Check("D", list(D_map(r) - oracle.D(n))),
            Check("Delta d", [x - y for x, y in zip(Dop, want_cop)]),
        ]
    )


def check_correspondence_formula(r, degree=3):
    """First-order operator form of f-hat and the realization-free commutator.

    With (alpha, beta, gamma) from phi, checks on all monomials of degree
    <= ``degree``
      f-hat(x-hat) = f + i(alpha (x df/dx)(a d) + beta (a x)(df/dx d) + gamma (a df/dx)(x d))
    and T([x-hat_mu, f-hat]) = i(a_mu (x d) - x_mu (a d)) f, both at order 1.
    """
    from .weyl import XHatPoly

    r1 = r.with_order(1) if r.order != 1 else r
    n, L = r1.n, r1.layout
    alpha, beta, gamma = linear_coefficients(r1)
    a = Poly.vector(L, 1, "a")
    x = Poly.vector(L, 1, "x")
    d = Poly.vector(L, 1, "d")
    ad, xd, ax = dot(a, d), dot(x, d), dot(a, x)
    ops_res, comm_res = [], []
    for f in monomials(n, 1, degree):
        fhat = unhat_T_inverse(f, r1)
        grad = [f.diff("x", al) for al in range(n)]
        x_grad = sum((x[al] * grad[al] for al in range(n)), Poly.zero(L, 1))
        a_grad = sum((a[al] * grad[al] for al in range(n)), Poly.zero(L, 1))
        grad_d = sum((grad[al] * d[al] for al in range(n)), Poly.zero(L, 1))
        want = f + (x_grad * ad).scale(GaussRat(0, alpha)) + (ax * grad_d).scale(GaussRat(0, beta))
        want = want + (a_grad * xd).scale(GaussRat(0, gamma))
        ops_res.append(fhat.to_weyl(r1).sym - want)
        for mu in range(n):
            words = {}
            for w, c in fhat.words.items():
                words[(mu,) + w] = words.get((mu,) + w, Poly.zero(L, 1)) + c
                words[w + (mu,)] = words.get(w + (mu,), Poly.zero(L, 1)) - c
            lhs = XHatPoly(n, 1, words).act(r1, Poly.one(L, 1))
            rhs = (a[mu] * x_grad - x[mu] * a_grad).times_i()
            comm_res.append(lhs - rhs)
    return Report([Check("f-hat first-order form", ops_res), Check("[x-hat, f-hat] first order", comm_res)])



# -- exact kernels and the symmetric basis ------------------------------------------


def exact_kernel(kind, n, order):
    """Left D(k, q) = q + k(1 + (aq)); right D(k, q) = k + q(1 - (ak))."""
    L = layout_for(n)
    a = Poly.vector(L, order, "a")
    k = Poly.vector(L, order, "k")
    q = Poly.vector(L, order, "q")
    if kind == "left":
        comps = [q[mu] + k[mu] * (1 + dot(a, q)) for mu in range(n)]
    elif kind == "right":
        comps = [k[mu] + q[mu] * (1 - dot(a, k)) for mu in range(n)]
    else:
        raise ValueError(f"no exact kernel for {kind!r}")
    return MomentumMap(comps, 2)


def check_exact_kernels(n, order=4):
    """Flow kernels of the left and right covariant realizations against their closed forms.

    Also checks the operator coproducts Delta d^L = d^L (x) Z^-1 + 1 (x) d^L
    (left) and Delta d = d (x) 1 + Z (x) d (right).
    """
    from .hopf import coproduct_of
    from .realizations import get_realization

    checks = []
    for kind in ("left", "right"):
        r = get_realization(kind, n, order)
        checks.append(Check(f"D({kind}) closed form", list(D_map(r) - exact_kernel(kind, n, order))))
    left = get_realization("left", n, order)
    ops = left.derived
    s1 = lambda p: p.rename({"d": "d1"})
    s2 = lambda p: p.rename({"d": "d2"})
    res = []
    for mu in range(n):
        dL = ops.partialL_poly[mu]
        res.append(coproduct_of(left, dL).poly - (s1(dL) * s2(ops.Zinv_poly) + s2(dL)))
    checks.append(Check("Delta d^L = d^L (x) Z^-1 + 1 (x) d^L (left)", res))
    right = get_realization("right", n, order)
    Z = right.derived.Z_poly
    d = Poly.vector(right.layout, order, "d")
    res = [coproduct_partial(right)[mu].poly - (s1(d[mu]) + s1(Z) * s2(d[mu])) for mu in range(n)]
    checks.append(Check("Delta d = d (x) 1 + Z (x) d (right)", res))
    return Report(checks)


def check_symmetric_basis(n, order_K=4, order_D=3):
    """K_s = id, and D_s from the flow equals the matrix-group oracle."""
    from .kernels import symmetric_D_matrix_oracle
    from .realizations import get_realization

    rK = get_realization("symmetric", n, order_K)
    rD = get_realization("symmetric", n, order_D)
    ident = MomentumMap.identity(n, order_K)
    return Report(
        [
            Check("K_s = id", list(K_map(rK) - ident)),
            Check("D_s flow = matrix-group oracle", list(D_map(rD) - symmetric_D_matrix_oracle(n, order_D))),
        ]
    )
