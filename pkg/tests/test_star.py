from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kappalab.expr import evaluate, parse
from kappalab.gaussrat import GaussRat
from kappalab.poly import Poly
from kappalab.realizations import catalog_names, get_realization
from kappalab.star import (
    check_associativity,
    check_coproduct_compatibility,
    check_duality,
    check_known_duals,
    check_lorentz_coproduct_action,
    check_star_paths,
    check_translation_invariance,
    check_xhat_leibniz,
    check_xx_products,
    dual_realization,
    star_kernel,
    star_polynomials,
)

NAMES = catalog_names()
GOLDEN = Path(__file__).parent / "golden" / "star_products.txt"


def _x(r, mu):
    return Poly.var(r.layout, r.order, "x", mu)


def _a(r, mu):
    return Poly.var(r.layout, r.order, "a", mu)


def test_left_and_right_coordinate_products():
    """left: x_mu * x_nu = x_mu x_nu - i a_nu x_mu; right: x_mu x_nu + i a_mu x_nu."""
    for mu in range(2):
        for nu in range(2):
            r = get_realization("left", 2, 2)
            want = _x(r, mu) * _x(r, nu) - (_a(r, nu) * _x(r, mu)).times_i()
            assert star_polynomials(r, _x(r, mu), _x(r, nu)) == want
            r = get_realization("right", 2, 2)
            want = _x(r, mu) * _x(r, nu) + (_a(r, mu) * _x(r, nu)).times_i()
            assert star_polynomials(r, _x(r, mu), _x(r, nu)) == want


@pytest.mark.parametrize("name", NAMES)
def test_star_commutator_reproduces_kappa_minkowski(name):
    r = get_realization(name, 3, 2)
    for mu in range(3):
        for nu in range(3):
            comm = star_polynomials(r, _x(r, mu), _x(r, nu)) - star_polynomials(r, _x(r, nu), _x(r, mu))
            want = (_a(r, mu) * _x(r, nu) - _a(r, nu) * _x(r, mu)).times_i()
            assert comm == want


@pytest.mark.parametrize("name", NAMES)
def test_unit(name):
    r = get_realization(name, 2, 2)
    one = Poly.one(r.layout, 2)
    f = _x(r, 0) * _x(r, 1) + _x(r, 1)
    assert star_polynomials(r, one, f) == f
    assert star_polynomials(r, f, one) == f


def _golden_lines():
    for line in GOLDEN.read_text().splitlines():
        if line.startswith("#") or not line.strip():
            continue
        head, value = line.split("|")
        name, n, order, mu, nu = head.split()
        yield name, int(n), int(order), int(mu), int(nu), value.strip()


def test_golden_coordinate_products():
    count = 0
    for name, n, order, mu, nu, text in _golden_lines():
        r = get_realization(name, n, order)
        got = star_polynomials(r, _x(r, mu), _x(r, nu))
        assert str(got) == text, (name, n, mu, nu)
        assert got == evaluate(parse(text), n, order)
        count += 1
    assert count == 65


@st.composite
def small_polys(draw, r):
    atoms = [_x(r, 0), _x(r, 1)]
    out = Poly.zero(r.layout, r.order)
    for _ in range(draw(st.integers(1, 2))):
        term = Poly.const(r.layout, r.order, GaussRat(draw(st.integers(-2, 2)), draw(st.integers(-1, 1))))
        for _ in range(draw(st.integers(0, 2))):
            term = term * draw(st.sampled_from(atoms))
        out = out + term
    return out


@settings(max_examples=15)
@given(st.data())
def test_random_associativity(data):
    r = get_realization(data.draw(st.sampled_from(NAMES)), 2, 2)
    f, g, h = (data.draw(small_polys(r)) for _ in range(3))
    lhs = star_polynomials(r, star_polynomials(r, f, g), h)
    assert lhs == star_polynomials(r, f, star_polynomials(r, g, h))


@settings(max_examples=15)
@given(st.data())
def test_random_paths_agree(data):
    r = get_realization(data.draw(st.sampled_from(NAMES)), 2, 2)
    f, g = data.draw(small_polys(r)), data.draw(small_polys(r))
    assert star_polynomials(r, f, g) == star_kernel(r, f, g)


@pytest.mark.parametrize("name", NAMES)
def test_star_reports(name):
    r = get_realization(name, 2, 2)
    for report in (
        check_star_paths(r, 2),
        check_associativity(r, 3),
        check_xx_products(r),
        check_xhat_leibniz(r),
        check_translation_invariance(r, 2),
        check_coproduct_compatibility(r, 2),
    ):
        assert report.passed, [c.name for c in report.failures()]


def test_fixed_star_product_is_not_translation_invariant():
    report = check_translation_invariance(get_realization("left", 2, 2), 1)
    probe = [c for c in report if not c.expected_zero]
    assert len(probe) == 1 and not probe[0].residual_zero


@pytest.mark.parametrize("name", ["natural", "ms"])
def test_lorentz_coproduct_action(name):
    report = check_lorentz_coproduct_action(get_realization(name, 2, 2), 2)
    assert report.passed, [c.name for c in report.failures()]


# -- duality ------------------------------------------------------------------------


@pytest.mark.parametrize("name", NAMES)
def test_duality(name):
    report = check_duality(dual_realization(get_realization(name, 2, 2)), 2)
    assert report.passed, [c.name for c in report.failures()]


@pytest.mark.parametrize("n", [2, 3])
def test_known_duals(n):
    report = check_known_duals(n, 3)
    assert report.passed, [c.name for c in report.failures()]


def test_dual_product_is_the_opposite_product():
    r = get_realization("left", 2, 2)
    rd = dual_realization(r).dual
    f, g = _x(r, 0), _x(r, 1) * _x(r, 1)
    assert star_polynomials(r, f, g) == star_polynomials(rd, g, f)

