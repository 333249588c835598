import pytest
from hypothesis import given
from hypothesis import strategies as st

from kappalab.consistency import kappa_residuals
from kappalab.poly import Poly, eta, layout_for
from kappalab.realizations import (
    build_explicit,
    build_linear,
    build_typeI,
    build_typeII,
    build_vector_like,
    catalog,
    catalog_names,
    get_realization,
)
from kappalab.series import ScalarSeries2
from kappalab.weyl import WeylOp, commutator

from oracles import natural_box, natural_Zinv, vectors

small = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def test_catalog_names():
    assert catalog_names() == ["left", "right", "symmetric", "natural", "ms"]


def test_aliases_and_unknown_names():
    assert get_realization("Magueijo-Smolin", 2, 1) is get_realization("ms", 2, 1)
    with pytest.raises(KeyError):
        get_realization("nope", 2, 1)


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("name", ["left", "right", "symmetric", "natural", "ms"])
def test_catalog_satisfies_kappa_relations(name, n):
    r = get_realization(name, n, 2)
    assert r.validate()


def test_explicit_left_matches_catalog():
    """x-hat_mu = x_mu (1 - i (a d)) in matrix form phi = eta (1 - i (a d))."""
    n, N = 2, 3
    a, d = vectors(n, N, "a", "d")
    ad = sum((a[m] * d[m] * eta(m) for m in range(n)), Poly.zero(layout_for(n), N))
    one = Poly.one(layout_for(n), N)
    zero = Poly.zero(layout_for(n), N)
    phi = [[(one - ad.times_i()) * eta(al) if al == mu else zero for mu in range(n)] for al in range(n)]
    assert build_explicit(n, N, phi).phi == get_realization("left", n, N).phi


def test_explicit_left_x_hat_action():
    """x-hat_0 = x_0 (1 - i (a d)) in the left realization."""
    r = get_realization("left", 2, 2)
    L = r.layout
    x0 = Poly.var(L, 2, "x", 0)
    a, d = vectors(2, 2, "a", "d")
    ad = -a[0] * d[0] + a[1] * d[1]
    assert r.xhat()[0].sym == x0 - x0 * ad.times_i()


def test_commutative_realization_fails_kappa():
    L = layout_for(2)
    phi = [[Poly.const(L, 2, eta(al) if al == mu else 0) for mu in range(2)] for al in range(2)]
    r = build_explicit(2, 2, phi, "commutative")
    assert not r.validate()
    assert not all(res.is_zero() for _, res in kappa_residuals(r))


def test_phi_must_reduce_to_metric():
    L = layout_for(2)
    phi = [[Poly.const(L, 1, 1 if al == mu else 0) for mu in range(2)] for al in range(2)]
    with pytest.raises(ValueError):
        build_explicit(2, 1, phi)


def test_builders_reject_bad_generating_data():
    with pytest.raises(ValueError):
        build_typeI(ScalarSeries2.const(2, 2), 2, 2)
    with pytest.raises(ValueError):
        build_vector_like(ScalarSeries2.A(2) + 1, 2, 2)
    with pytest.raises(ValueError):
        build_linear(0, 0, 0, 2)


@given(small, small, small)
def test_random_type_one_and_two_are_kappa(c1, c2, c3):
    phi = ScalarSeries2(2, {(0, 0): 1, (1, 0): c1, (2, 0): c2, (0, 1): c3})
    assert build_typeI(phi, 2, 2).validate()
    assert build_typeII(phi, 2, 2).validate()


@given(small, small)
def test_random_vector_like_is_kappa(c1, c2):
    f = ScalarSeries2.in_B(3, [1, c1, c2])
    assert build_vector_like(f, 2, 3).validate()


@given(small, small)
def test_linear_family_is_kappa_at_first_order(alpha, beta):
    assert build_linear(alpha, beta, alpha + 1, n=3, order=1).validate()


def test_with_order_rebuilds_from_generating_data():
    for name in catalog_names():
        low = get_realization(name, 2, 3).with_order(2)
        assert low.phi == get_realization(name, 2, 2).phi


# -- derived operators ------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3])
def test_natural_shift_operator_and_casimir(n):
    ops = get_realization("natural", n, 3).derived
    assert ops.Zinv_poly == natural_Zinv(n, 3)
    assert ops.box_poly == natural_box(n, 3)
    assert ops.Z_poly * ops.Zinv_poly == Poly.one(layout_for(n), 3)
    assert all(ops.dirac_poly[mu] == Poly.var(layout_for(n), 3, "d", mu) for mu in range(n))


def test_left_and_right_shift_operators():
    n, N = 2, 3
    a, d = vectors(n, N, "a", "d")
    ad = -a[0] * d[0] + a[1] * d[1]
    assert get_realization("left", n, N).derived.Zinv_poly == 1 - ad.times_i()
    assert get_realization("right", n, N).derived.Z_poly == 1 + ad.times_i()


@pytest.mark.parametrize("name", ["left", "right", "symmetric", "natural", "ms"])
def test_shift_operator_commutator(name):
    """[Z, x-hat_mu] = i a_mu Z."""
    r = get_realization(name, 2, 3)
    Z = r.derived.Z
    a = Poly.vector(r.layout, 3, "a")
    for mu in range(2):
        assert commutator(Z, r.xhat()[mu]) == WeylOp((a[mu] * Z.sym).times_i())


def test_catalog_is_cached():
    assert catalog(2, 1)["left"] is get_realization("left", 2, 1)
