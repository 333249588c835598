import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from kappalab.gaussrat import GaussRat
from kappalab.poly import Poly, eta, layout_for
from kappalab.series import ScalarSeries2, SeriesError, series_reciprocal, series_sqrt
from kappalab.weyl import PlaneWaveState, WeylOp, act_on_planewave, act_on_poly, commutator

N = 2
L = layout_for(N)

# -- scalar series in A and B -----------------------------------------------------


def test_reciprocal_of_exp():
    e = ScalarSeries2.exp_A(4)
    inv = series_reciprocal(e)
    assert inv == ScalarSeries2.exp_A(4, -1)
    assert e * inv == ScalarSeries2.const(4)


def test_sqrt_of_one_minus_B():
    s = series_sqrt(1 - ScalarSeries2.B(4))
    # sqrt(1 - B) = 1 - B/2 - B^2/8 + O(B^3)
    assert s == ScalarSeries2.in_B(4, [1, mpq(-1, 2), mpq(-1, 8)])
    assert s * s == 1 - ScalarSeries2.B(4)


def test_weight_truncation():
    """B carries weight 2, so B^2 drops out at order 3."""
    B = ScalarSeries2.B(3)
    assert (B * B).is_zero()
    assert not (B * ScalarSeries2.A(3)).is_zero()


def test_reciprocal_needs_a_unit():
    with pytest.raises(SeriesError):
        series_reciprocal(ScalarSeries2.A(3))


def test_derivatives():
    s = ScalarSeries2(4, {(2, 1): 3})
    assert s.dA() == ScalarSeries2(4, {(1, 1): 6})
    assert s.dB() == ScalarSeries2(4, {(2, 0): 3})


# -- Weyl algebra ------------------------------------------------------------------

ORDER = 2


def x(mu):
    return WeylOp.x(N, ORDER, mu)


def d(mu):
    return WeylOp.d(N, ORDER, mu)


@pytest.mark.parametrize("mu", range(N))
@pytest.mark.parametrize("nu", range(N))
def test_canonical_commutator(mu, nu):
    want = WeylOp.one(N, ORDER) * (eta(mu) if mu == nu else 0)
    assert commutator(d(mu), x(nu)) == want
    assert commutator(x(mu), x(nu)).is_zero()
    assert commutator(d(mu), d(nu)).is_zero()


def test_normal_ordering_of_d_x():
    # d0 x0 = x0 d0 + eta_00 = x0 d0 - 1
    assert (d(0) * x(0)).sym == (x(0) * d(0)).sym - 1


@st.composite
def weyl_ops(draw):
    atoms = [x(0), x(1), d(0), d(1), WeylOp(Poly.var(L, ORDER, "a", 0))]
    out = WeylOp.zero(N, ORDER)
    for _ in range(draw(st.integers(1, 3))):
        term = WeylOp.one(N, ORDER) * GaussRat(draw(st.integers(-3, 3)), draw(st.integers(-2, 2)))
        for _ in range(draw(st.integers(0, 3))):
            term = term * draw(st.sampled_from(atoms))
        out = out + term
    return out


@given(weyl_ops(), weyl_ops(), weyl_ops())
def test_weyl_product_is_associative(u, v, w):
    assert (u * v) * w == u * (v * w)


@given(weyl_ops(), weyl_ops(), weyl_ops())
def test_commutator_jacobi_identity(u, v, w):
    total = commutator(u, commutator(v, w)) + commutator(v, commutator(w, u)) + commutator(w, commutator(u, v))
    assert total.is_zero()


def _naive_act(u, f):
    """Apply a normal-ordered symbol term by term with d_mu = eta_mu d/dx_mu."""
    out = Poly.zero(L, ORDER)
    for mono, c in u.sym.terms.items():
        powers = L.group_exponents(mono, "d")
        coeff = Poly(L, ORDER, {mono: c})
        g = f
        for mu, k in enumerate(powers):
            for j in range(1, k + 1):
                coeff = coeff.diff("d", mu) / j
                g = g.diff("x", mu) * eta(mu)
        out = out + coeff * g
    return out


@given(weyl_ops(), weyl_ops())
def test_action_is_a_representation(u, v):
    f = (Poly.var(L, ORDER, "x", 0) ** 2) * Poly.var(L, ORDER, "x", 1) + Poly.var(L, ORDER, "x", 1) ** 3
    assert act_on_poly(u * v, f) == act_on_poly(u, act_on_poly(v, f))
    assert act_on_poly(u, f) == _naive_act(u, f)


def test_plane_wave_eigenvalue():
    """d_1 acting on e^{ikx} multiplies it by i k_1."""
    w = PlaneWaveState.plane_wave(N, ORDER)
    out = act_on_planewave(d(1), w)
    assert out.prefactor == Poly.var(L, ORDER, "k", 1).times_i()
