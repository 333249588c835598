import itertools

import pytest

from kappalab.poly import Poly, eta, layout_for
from kappalab.realizations import catalog_names, get_realization
from kappalab.similarity import (
    SimilarityError,
    conjugate_by_exponential,
    from_D_and_Phi,
    natural_Phi,
    phi_from_xhat,
    solve_similarity,
)


def _metric(n, N):
    L = layout_for(n)
    return [[Poly.const(L, N, eta(m) if m == v else 0) for v in range(n)] for m in range(n)]


def test_natural_from_dirac_derivative():
    nat = get_realization("natural", 3, 3)
    built = from_D_and_Phi(list(nat.derived.dirac_poly), natural_Phi(3, 3))
    assert built.phi == nat.phi


def test_trivial_data_give_the_commutative_realization():
    n, N = 2, 2
    d = list(Poly.vector(layout_for(n), N, "d"))
    r = from_D_and_Phi(d, _metric(n, N))
    assert r.phi == tuple(tuple(row) for row in _metric(n, N))
    assert not r.validate()


def test_random_first_order_dirac_derivative_round_trips():
    """A first-order D with the natural Phi gives a kappa realization whose Dirac derivative is D."""
    n, N = 2, 2
    L = layout_for(n)
    a = Poly.vector(L, N, "a")
    d = Poly.vector(L, N, "d")
    D = [d[0] + (a[0] * d[0] * d[0] - a[1] * d[0] * d[1]) * 3, d[1] + a[0] * d[0] * d[1] * 3]
    r = from_D_and_Phi(D, natural_Phi(n, N))
    assert r.validate()
    assert all(p == q for p, q in zip(r.derived.dirac_poly, D))


def test_bad_inputs():
    n, N = 2, 2
    L = layout_for(n)
    d = list(Poly.vector(L, N, "d"))
    with pytest.raises(SimilarityError):
        from_D_and_Phi([p * 2 for p in d], _metric(n, N))
    with pytest.raises(SimilarityError):
        from_D_and_Phi(d, [[Poly.one(L, N)] * n] * n)
    with pytest.raises(SimilarityError):
        conjugate_by_exponential(get_realization("left", n, N), [Poly.one(L, N)] * n)
    with pytest.raises(SimilarityError):
        solve_similarity(get_realization("left", 2, 2), get_realization("left", 3, 2))


def test_phi_from_xhat_inverts_xhat():
    r = get_realization("ms", 2, 2)
    assert phi_from_xhat(r.xhat(), 2, 2).phi == r.phi


@pytest.mark.parametrize("source, target", list(itertools.permutations(catalog_names(), 2)))
def test_catalog_realizations_are_similar(source, target):
    s, t = get_realization(source, 2, 3), get_realization(target, 2, 3)
    Sigma = solve_similarity(s, t)
    moved = conjugate_by_exponential(s, Sigma)
    assert moved.phi == t.phi
    assert moved.validate()


def test_zero_generator_is_the_identity():
    r = get_realization("symmetric", 2, 2)
    zero = [Poly.zero(r.layout, 2)] * 2
    assert conjugate_by_exponential(r, zero).phi == r.phi
