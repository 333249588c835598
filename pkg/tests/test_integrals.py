import pytest

from kappalab.gaussrat import GaussRat
from kappalab.integrals import (
    Involution,
    check_jacobians,
    check_partial_integration,
    check_quasicyclicity,
    check_star_conjugation,
    jacobian_measure,
    pairing_kernel,
    shift_symbol,
)
from kappalab.poly import Poly
from kappalab.realizations import catalog_names, get_realization

from oracles import natural_jacobian, symmetric_jacobian, vectors

NAMES = catalog_names()


@pytest.mark.parametrize("n", [2, 3])
def test_natural_jacobian_closed_form(n):
    assert jacobian_measure(get_realization("natural", n, 4)).poly == natural_jacobian(n, 4)


@pytest.mark.parametrize("n", [2, 3])
def test_symmetric_jacobian_closed_form(n):
    J = jacobian_measure(get_realization("symmetric", n, 4)).poly
    assert J == symmetric_jacobian(n, 4, with_exponential=False)
    assert J != symmetric_jacobian(n, 4, with_exponential=True)


def test_pairing_kernel_inverts_the_measure():
    r = get_realization("natural", 2, 4)
    assert pairing_kernel(r) * jacobian_measure(r).poly == Poly.one(r.layout, 4)


@pytest.mark.parametrize("n", [2, 3])
def test_jacobian_report(n):
    report = check_jacobians(n, 4)
    assert report.passed, [c.name for c in report.failures()]


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("name", NAMES)
def test_integral_identities(name, n):
    r = get_realization(name, n, 3)
    for report in (check_star_conjugation(r), check_partial_integration(r), check_quasicyclicity(r)):
        assert report.passed, [c.name for c in report.failures()]


def test_right_shift_symbol():
    """z(k) = Z(d = i k) = 1 - (a k) for the right realization."""
    r = get_realization("right", 2, 3)
    a, k = vectors(2, 3, "a", "k")
    assert shift_symbol(r) == 1 - (-a[0] * k[0] + a[1] * k[1])


def test_involution_conjugates_coefficients():
    r = get_realization("left", 2, 2)
    k = vectors(2, 2, "k")[0]
    [(c, label)] = Involution(r).apply([(GaussRat(1, 2), list(k))])
    assert c == GaussRat(1, -2)
    assert label == list(Involution(r).S)
