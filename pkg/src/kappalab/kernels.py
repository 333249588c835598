"""P, K, K^-1, D and the antipode S of a realization.

P solves the characteristic flow dP_alpha/dt = k^mu h_{alpha mu}(P), P(0) = q.
Because P(t; k, q) = P(1; t k, q), the time variable is eliminated: one
Picard step is P <- q + k^mu int_0^1 h(P)(t k) dt, which divides each term of
k-degree e of k^mu h_{alpha mu}(P) by e.
"""

from .momentum import MomentumMap, momentum_substitute
from .poly import Poly, eta, subs_many

__all__ = [
    "FlowResult",
    "flow_P",
    "K_map",
    "K_inverse",
    "D_map",
    "D_via_symmetric",
    "antipode_S",
    "antipode_inverse",
    "solve_D_zero",
    "reversion",
    "compose_maps",
    "symmetric_D_matrix_oracle",
]


class FlowResult:
    def __init__(self, P, iterates):
        self.P = P
        self.iterates = iterates


def _memo(r, key, fn):
    if key not in r.memo:
        r.memo[key] = fn()
    return r.memo[key]


def _integrate_scaled(p):
    L = p.layout
    out = {}
    for m, c in p.terms.items():
        e = L.group_degree(m, "k")
        out[m] = c / e
    return Poly(L, p.order, out)


def flow_P(r):
    return _memo(r, "flow", lambda: _flow(r))


def _flow(r):
    n, N, L = r.n, r.order, r.layout
    hw = [[p.rename({"k": "w"}) for p in row] for row in r.h]
    flat = [p for row in hw for p in row]
    k = Poly.vector(L, N, "k")
    q = Poly.vector(L, N, "q")
    P = [k[mu] + q[mu] for mu in range(n)]
    iterates = [MomentumMap(P, 2)]
    for _ in range(N + 1):
        hP = subs_many(flat, {("w", b): P[b] for b in range(n)})
        new = []
        for al in range(n):
            F = Poly.zero(L, N)
            for mu in range(n):
                t = k[mu] * hP[al * n + mu]
                F = F + (t if eta(mu) > 0 else -t)
            new.append(q[al] + _integrate_scaled(F))
        if all(x == y for x, y in zip(new, P)):
            P = new
            break
        P = new
        iterates.append(MomentumMap(P, 2))
    return FlowResult(MomentumMap(P, 2), iterates)


def K_map(r):
    return _memo(r, "K", lambda: MomentumMap(momentum_substitute(flow_P(r).P, 2, None).components, 1))


def reversion(F, group="k"):
    """Compositional inverse of a one-slot map F = id + O(a)."""
    L = F.layout
    N = F.order
    ident = Poly.vector(L, N, group)
    inv = list(ident)
    for _ in range(N + 1):
        comp = F.compose(inv, group)
        inv = [inv[mu] - (comp[mu] - ident[mu]) for mu in range(F.n)]
    return MomentumMap(inv, 1)


def K_inverse(r):
    return _memo(r, "Kinv", lambda: reversion(K_map(r)))


def D_map(r):
    return _memo(r, "D", lambda: momentum_substitute(flow_P(r).P, 1, K_inverse(r)))


def compose_maps(outer, inner, group="k"):
    """outer(inner(.)) for a one-slot outer map in ``group``."""
    out = outer.compose(list(inner), group)
    out.slot_count = inner.slot_count
    return out


def antipode_S(r):
    def build():
        neg = -K_inverse(r)
        return compose_maps(K_map(r), neg)

    return _memo(r, "S", build)


def antipode_inverse(r):
    return _memo(r, "Sinv", lambda: _inverse_of(antipode_S(r)))


def _inverse_of(S):
    # S = -id + O(a): invert -S, then flip the sign of the argument
    T = reversion(-S)
    return compose_maps(T, MomentumMap([-p for p in MomentumMap.identity(S.n, S.order)], 1))


def solve_D_zero(r):
    """The series q(k) = -k + O(a) with D(k, q(k)) = 0."""

    def build():
        D = D_map(r)
        L, N, n = D.layout, D.order, D.n
        q = [-p for p in Poly.vector(L, N, "k")]
        for _ in range(N + 1):
            val = momentum_substitute(D, 2, q)
            q = [q[mu] - val[mu] for mu in range(n)]
        return MomentumMap(q, 1)

    return _memo(r, "Dzero", build)


def D_via_symmetric(r, symmetric=None):
    """K(D_s(K^-1(k), K^-1(q))) using the totally symmetric kernel."""
    from .realizations import get_realization

    if symmetric is None:
        symmetric = get_realization("symmetric", r.n, r.order)
    Ds = D_map(symmetric)
    Kinv = K_inverse(r)
    Kinv_q = Kinv.rename({"k": "q"})
    # substitute both slots simultaneously via a temporary slot
    tmp = Ds.rename({"k": "w"})
    step = tmp.compose(list(Kinv_q), "q")
    step = step.compose(list(Kinv), "w")
    out = compose_maps(K_map(r), step)
    out.slot_count = 2
    return out


def symmetric_D_matrix_oracle(n, order):
    """D_s(k, q) from products of exact matrix exponentials.

    e_mu = a_mu P + |mu><n| satisfies [e_mu, e_nu] = a_mu e_nu - a_nu e_mu, so
    x-hat = i e represents the kappa-Minkowski algebra and
    exp(-k.e) exp(-q.e) = exp(-D_s(k, q).e).
    """
    from .poly import layout_for

    L = layout_for(n)
    a = Poly.vector(L, order, "a")
    size = n + 1
    zero = Poly.zero(L, order)

    def generator(group):
        mom = Poly.vector(L, order, group)
        M = [[zero for _ in range(size)] for _ in range(size)]
        ak = Poly.zero(L, order)
        for mu in range(n):
            t = a[mu] * mom[mu]
            ak = ak + (t if eta(mu) > 0 else -t)
        for mu in range(n):
            M[mu][mu] = -ak
            M[mu][n] = -(mom[mu] * eta(mu))
        return M

    def mul(A, B):
        return [[sum((A[i][k] * B[k][j] for k in range(size)), zero) for j in range(size)] for i in range(size)]

    def expm(M):
        out = [[Poly.one(L, order) if i == j else zero for j in range(size)] for i in range(size)]
        term = [row[:] for row in out]
        for j in range(1, order + 3):
            term = mul(term, M)
            term = [[p.scale(1) / j for p in row] for row in term]
            out = [[out[i][c] + term[i][c] for c in range(size)] for i in range(size)]
        return out

    def logm(G):
        X = [[G[i][j] - (1 if i == j else 0) for j in range(size)] for i in range(size)]
        out = [[zero for _ in range(size)] for _ in range(size)]
        power = [[Poly.one(L, order) if i == j else zero for j in range(size)] for i in range(size)]
        for j in range(1, order + 3):
            power = mul(power, X)
            sign = 1 if j % 2 else -1
            out = [[out[i][c] + power[i][c].scale(sign) / j for c in range(size)] for i in range(size)]
        return out

    G = mul(expm(generator("k")), expm(generator("q")))
    logG = logm(G)
    return MomentumMap([-(logG[mu][n] * eta(mu)) for mu in range(n)], 2)
