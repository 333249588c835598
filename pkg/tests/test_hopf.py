import pytest

from kappalab.hopf import (
    apply_antipode,
    check_hopf_axioms,
    check_natural_basis,
    coproduct_of,
    coproduct_partial,
    format_tensor,
    to_slot,
)
from kappalab.poly import Poly
from kappalab.realizations import catalog_names, get_realization

NAMES = catalog_names()


def _d(r, mu):
    return Poly.var(r.layout, r.order, "d", mu)


def test_right_coproduct_closed_form():
    """Delta d = d (x) 1 + Z (x) d."""
    r = get_realization("right", 3, 3)
    Z = r.derived.Z_poly
    for mu, t in enumerate(coproduct_partial(r)):
        want = to_slot(_d(r, mu), 1) + to_slot(Z, 1) * to_slot(_d(r, mu), 2)
        assert t.poly == want


def test_left_coproduct_closed_form():
    """Delta d = d (x) Z^-1 + 1 (x) d."""
    r = get_realization("left", 3, 3)
    Zinv = r.derived.Zinv_poly
    for mu, t in enumerate(coproduct_partial(r)):
        want = to_slot(_d(r, mu), 1) * to_slot(Zinv, 2) + to_slot(_d(r, mu), 2)
        assert t.poly == want


@pytest.mark.parametrize("name", NAMES)
def test_shift_operator_is_grouplike(name):
    r = get_realization(name, 2, 3)
    Z, Zinv = r.derived.Z_poly, r.derived.Zinv_poly
    assert coproduct_of(r, Z).poly == to_slot(Z, 1) * to_slot(Z, 2)
    assert apply_antipode(r, Z) == Zinv


@pytest.mark.parametrize("name", NAMES)
def test_antipode_of_the_casimir(name):
    r = get_realization(name, 2, 3)
    assert apply_antipode(r, r.derived.box_poly) == r.derived.box_poly


def test_counit_of_constants():
    r = get_realization("ms", 2, 2)
    one = Poly.one(r.layout, 2)
    assert coproduct_of(r, one).poly == one
    assert apply_antipode(r, one) == one


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("name", NAMES)
def test_hopf_axioms(name, n):
    report = check_hopf_axioms(get_realization(name, n, 3))
    assert report.passed, [c.name for c in report.failures()]


@pytest.mark.parametrize("n", [2, 3])
def test_natural_basis(n):
    report = check_natural_basis(get_realization("natural", n, 3), lorentz=n == 2)
    assert report.passed, [c.name for c in report.failures()]
    names = {c.name for c in report}
    assert {"S(Z) = Z^-1", "Delta Z = Z (x) Z", "S(box) = box", "Z(D) Z(S(D)) = 1"} <= names


def test_natural_basis_probe_is_nonzero():
    """The D^2 coproduct needs its factor i; dropping it leaves a residual."""
    report = check_natural_basis(get_realization("natural", 2, 3), lorentz=False)
    probes = [c for c in report if not c.expected_zero]
    assert probes and all(not c.residual_zero for c in probes)


def test_format_tensor():
    r = get_realization("right", 2, 1)
    text = format_tensor(coproduct_partial(r)[0].poly, 2)
    assert text == "d0 ⊗ 1 + 1 ⊗ d0 + (-i*a0)*d0 ⊗ d0 + (i*a1)*d1 ⊗ d0"
