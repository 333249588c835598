import pytest

from kappalab.poly import Poly, eta, layout_for
from kappalab.realizations import build_explicit, catalog, get_realization
from kappalab.suites import SUITE_NAMES, SUITES, run_suite, star_order


def test_suite_names():
    assert SUITE_NAMES[-1] == "all"
    assert set(SUITE_NAMES[:-1]) == set(SUITES)
    with pytest.raises(KeyError):
        run_suite("nope", [get_realization("left", 2, 1)])


@pytest.mark.parametrize("suite", list(SUITES))
def test_each_suite_passes_on_the_catalog(suite):
    checks = run_suite(suite, list(catalog(2, 2).values()))
    assert checks
    assert all(c.passed for c in checks), [c.name for c in checks if not c.passed]


def test_shared_checks_run_once():
    names = [c.name for c in run_suite("linear", list(catalog(2, 1).values()))]
    assert len(names) == len(set(names))


def test_order_zero_drops_probes():
    checks = run_suite("translation", [get_realization("left", 2, 0)])
    assert checks and all(c.expected_zero for c in checks)


def test_inconsistent_realization_is_a_failed_check():
    L = layout_for(2)
    phi = [[Poly.const(L, 1, eta(al) if al == mu else 0) for mu in range(2)] for al in range(2)]
    r = build_explicit(2, 1, phi, "commutative")
    checks = run_suite("jacobi", [r])
    assert any(not c.passed for c in checks)
    kappa = run_suite("kappa", [r])
    assert [c.name for c in kappa] == ["commutative: kappa [x0, x1]"] and not kappa[0].passed


def test_star_order_is_capped():
    r = get_realization("ms", 2, 3)
    assert star_order(r).order == 2
    assert star_order(r) is star_order(r)
