"""Realizations from a Dirac derivative, and similarity transformations.

Two constructive routes between realizations:
  from_D_and_Phi: phi = (dD/dd)^-1 Phi(D), the realization in which
      [D_mu, x-hat_nu] = Phi_{mu nu}(D);
  conjugate_by_exponential: x-hat -> E x-hat E^-1 with E = exp(x^alpha Sigma_alpha(d)),
      evaluated by the adjoint series, which terminates because Sigma = O(a).
"""

from .gaussrat import GaussRat
from .linalg import mat_inverse_unipotent, mat_mul, series_sqrt
from .poly import Poly, dot, eta, layout_for
from .realizations import Realization, compose_d, euler_integral
from .weyl import WeylOp, commutator

__all__ = [
    "SimilarityError",
    "from_D_and_Phi",
    "natural_Phi",
    "conjugate_by_exponential",
    "solve_similarity",
    "phi_from_xhat",
]


class SimilarityError(ValueError):
    """Invalid input to a similarity construction."""


def _check_unit_jacobian(J):
    n = len(J)
    for mu in range(n):
        for al in range(n):
            want = 1 if mu == al else 0
            if J[mu][al].adeg_part(0) != want:
                raise SimilarityError("dD/dd must be the identity at a = 0")


def from_D_and_Phi(D, Phi, name="from_D_and_Phi"):
    """phi_{alpha nu} = sum_mu [dD/dd]^-1_{alpha mu} Phi_{mu nu}(D(d)).

    ``D`` is a list of Polys in d with D = d + O(a); ``Phi`` an n x n matrix
    of Polys in d with Phi = eta + O(a), read as functions of the Dirac
    derivative and evaluated at d -> D(d).
    """
    n = len(D)
    N = D[0].order
    J = [[D[mu].diff("d", al) for al in range(n)] for mu in range(n)]
    _check_unit_jacobian(J)
    for mu in range(n):
        for nu in range(n):
            want = eta(mu) if mu == nu else 0
            if Phi[mu][nu].adeg_part(0) != want:
                raise SimilarityError("Phi must reduce to the metric at a = 0")
    Jinv = mat_inverse_unipotent(J)
    PhiD = [[compose_d(Phi[mu][nu], D) for nu in range(n)] for mu in range(n)]
    phi = mat_mul(Jinv, PhiD)
    return Realization(n, N, [[p.truncate(N) for p in row] for row in phi], "explicit", {}, name)


def natural_Phi(n, order):
    """Phi_{mu nu}(D) = Z^-1(D) eta_{mu nu} + i a_mu D_nu with Z^-1(D) = -i(a D) + sqrt(1 - a^2 D^2).

    The argument D is written in the d group.
    """
    L = layout_for(n)
    a = Poly.vector(L, order, "a")
    d = Poly.vector(L, order, "d")
    Zinv = dot(a, d).scale(GaussRat(0, -1)) + series_sqrt(1 - dot(a, a) * dot(d, d))
    out = []
    for mu in range(n):
        row = []
        for nu in range(n):
            p = (a[mu] * d[nu]).times_i()
            if mu == nu:
                p = p + Zinv.scale(eta(mu))
            row.append(p)
        out.append(row)
    return out


def phi_from_xhat(xhat, n, order, name="explicit"):
    """Read phi_{alpha mu} off x-hat_mu = sum_alpha eta_alpha x_alpha phi_{alpha mu}."""
    L = layout_for(n)
    phi = [[None] * n for _ in range(n)]
    for mu in range(n):
        sym = xhat[mu].sym
        for al in range(n):
            part = sym.diff("x", al)
            if not part.filter(lambda m: L.group_degree(m, "x") > 0).is_zero():
                raise SimilarityError("x-hat is not linear in x")
            phi[al][mu] = part.scale(eta(al))
    return Realization(n, order, phi, "explicit", {}, name)


def _generator(Sigma):
    n = len(Sigma)
    L = Sigma[0].layout
    N = Sigma[0].order
    X = Poly.zero(L, N)
    for al in range(n):
        if Sigma[al].adeg_part(0) != 0:
            raise SimilarityError("Sigma must vanish at a = 0")
        if not Sigma[al].filter(lambda m: L.group_degree(m, "x") > 0).is_zero():
            raise SimilarityError("Sigma must depend on d only")
        X = X + (Poly.var(L, N, "x", al) * Sigma[al]).scale(eta(al))
    return WeylOp(X)


def _adjoint_exp(X, Y, order):
    """E Y E^-1 = sum_k ad_X^k(Y) / k! with ad_X = [X, .]."""
    out = Y
    term = Y
    for k in range(1, order + 1):
        term = commutator(X, term)
        if term.is_zero():
            break
        out = out + WeylOp(term.sym / k)
        term = WeylOp(term.sym / k)
    else:
        if not commutator(X, term).is_zero():
            raise SimilarityError("adjoint series did not terminate at the truncation order")
    return out


def conjugate_by_exponential(r, Sigma, name=None):
    """The realization E x-hat E^-1 with E = exp(x^alpha Sigma_alpha(d))."""
    X = _generator(Sigma)
    xh = [_adjoint_exp(X, y, r.order) for y in r.xhat()]
    return phi_from_xhat(xh, r.n, r.order, name or f"{r.name}~")


def solve_similarity(source, target):
    """Sigma with exp(x Sigma) x-hat_source exp(-x Sigma) = x-hat_target, order by order.

    At a-order j the new part of Sigma enters linearly through
    [x^alpha Sigma_alpha, x_mu] = x^alpha eta_mu dSigma_alpha/dd_mu, so each
    step integrates the current phi mismatch as a gradient.  Raises
    SimilarityError when the mismatch is not a gradient.
    """
    n, N, L = source.n, source.order, source.layout
    if target.n != n or target.order != N:
        raise SimilarityError("realizations must share dimension and order")
    zero = Poly.zero(L, N)
    Sigma = [zero] * n
    for j in range(1, N + 1):
        current = conjugate_by_exponential(source, Sigma) if j > 1 else source
        new = []
        for al in range(n):
            grad = []
            for mu in range(n):
                # x-hat_mu contains eta_al x_al phi_{al mu}; the Sigma term gives x^al eta_mu dSigma_al/dd_mu
                diff = (target.phi[al][mu] - current.phi[al][mu]).adeg_part(j)
                grad.append(diff.scale(eta(mu)))
            new.append(Sigma[al] + euler_integral(grad, zero))
        Sigma = new
    result = conjugate_by_exponential(source, Sigma)
    if result.phi != target.phi:
        raise SimilarityError("the phi mismatch is not a gradient; no similarity of this form")
    return Sigma
