from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from picard_fuchs.algebra import RatField
from picard_fuchs.families import curve_family_for_j, weierstrass_cubic
from picard_fuchs.griffiths_dwork import picard_fuchs_ode
from picard_fuchs.ode import (FanoDegenerate, LinearODE, annihilates_products, box, fano_check, gauge_transform,
                              projective_normal_form, qvalue_transport, schwarzian, tensor_product_4)

from conftest import T, ratfuncs

t = T.gen("t")
ODE = settings(max_examples=100)
univariate = ratfuncs(T)


def test_schwarzian_examples():
    assert schwarzian(t).is_zero()
    assert schwarzian(t ** 2) == T(Fraction(-3, 2)) / t ** 2
    with pytest.raises(ValueError, match="vanishing derivative"):
        schwarzian(T(5))


@ODE
@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9))
def test_moebius_kernel(a, b, c, d):
    assume(a * d - b * c != 0)
    assert schwarzian((a * t + b) / (c * t + d)).is_zero()


@ODE
@given(univariate, univariate)
def test_schwarzian_cocycle(f, g):
    assume(f.derivative("t") and g.derivative("t"))
    fg = f.subs({"t": g}, T)
    assume(fg.derivative("t"))
    dg = g.derivative("t")
    assert schwarzian(fg) == dg ** 2 * schwarzian(f).subs({"t": g}, T) + schwarzian(g)


def test_box_of_identity():
    assert box(t) == (36 * t ** 2 - 41 * t + 32) / (144 * (t - 1) ** 2 * t ** 2)
    with pytest.raises(ValueError):
        box(T(1))


@ODE
@given(univariate, univariate)
def test_box_separates_generic_functions(f, g):
    assume(f.derivative("t") and g.derivative("t") and f != g)
    assume(all(h != 0 and h != 1 for h in (f, g)))
    assert box(f) != box(g)


def test_projective_normal_form_examples():
    assert projective_normal_form(LinearODE("t", [t, T(0), T(1)])).p2 == t
    # f'' + (2/t) f' has solutions 1 and 1/t; the gauge g = t f gives g'' = 0
    assert projective_normal_form(LinearODE("t", [T(0), 2 / t, T(1)])).p2.is_zero()
    with pytest.raises(ValueError):
        projective_normal_form(LinearODE("t", [T(1), T(1)]))


def test_weierstrass_pnf_is_box_of_j():
    j = (t ** 2 + 3) / (t - 5)
    g2, g3 = curve_family_for_j(j)
    ode = picard_fuchs_ode(weierstrass_cubic(g2, g3), T, "t")
    assert projective_normal_form(ode).p2 == box(j)


def test_tensor_series_oracle():
    L = tensor_product_4(t, T(0))
    assert L.order == 4
    assert annihilates_products(L, t, T(0), t0=1, order=12)


@ODE
@given(univariate, univariate)
def test_tensor_series_oracle_random(p, q):
    assume(p != q)
    t0 = next((v for v in range(6) if all(_regular(h, v) for h in (p, q, 1 / (p - q)))), None)
    assume(t0 is not None)
    assert annihilates_products(tensor_product_4(p, q), p, q, t0=t0, order=12)


def _regular(f, v):
    return f.den.subs({"t": v}) != 0


def test_tensor_swap_symmetry_and_degeneracy():
    p, q = t, t ** 2 + 1
    assert tensor_product_4(p, q).proportional_to(tensor_product_4(q, p))
    with pytest.raises(FanoDegenerate):
        tensor_product_4(t, t)
    assert fano_check(t, t) and not fano_check(t, T(0))


def test_gauge_transform_identity():
    L = tensor_product_4(t, T(1))
    assert gauge_transform(L, T(0)).proportional_to(L)


def test_qvalue_transport_of_identity_hauptmodul():
    q = (36 * t ** 2 - 41 * t + 32) / (144 * (t - 1) ** 2 * t ** 2)
    assert qvalue_transport(t, q, "t") == q
