import random
from fractions import Fraction

import pytest

from picard_fuchs.algebra import Poly, RatField
from picard_fuchs.families import (decoupled_j_operators, gd_bd_operators, k3_family_ode, k3_system,
                                   weierstrass_closed_form, weierstrass_cubic, weierstrass_standard_form)
from picard_fuchs.griffiths_dwork import (FormClass, Hypersurface, OrderBoundExceeded, PicardFuchsODE,
                                          change_parameters, diff_under_integral, order_drop_report,
                                          picard_fuchs_ode, picard_fuchs_system, reduce_pole_order)
from picard_fuchs.operators import DiffOp
from picard_fuchs.suite import random_ratfunc

T = RatField(("t",))
t = T.gen("t")


def test_weierstrass_pole_reduction_step():
    F = RatField(("g2", "g3"))
    g2, g3 = F.gens()
    Q = weierstrass_cubic(g2, g3)
    x, y, z = (Poly.var(Q.vars, v, F.one()) for v in Q.vars)
    step = reduce_pole_order(FormClass(x * z ** 2 + z ** 3 * (3 * g3 / (2 * g2)), 2, Hypersurface(Q, F)))
    assert step.remainder.is_zero()
    assert step.check()
    assert step.output.numerator == Poly.const(Q.vars, 1 / (4 * g2))


def test_weierstrass_first_order_system():
    F = RatField(("g2", "g3"))
    g2, g3 = F.gens()
    S = picard_fuchs_system(weierstrass_cubic(g2, g3), F, order=1)
    assert S.same_span([DiffOp(F, {(1, 0): 4 * g2, (0, 1): 6 * g3, (0, 0): 1})])


def test_differentiation_under_the_integral():
    F = RatField(("g2", "g3"))
    g2, g3 = F.gens()
    Q = weierstrass_cubic(g2, g3)
    H = Hypersurface(Q, F)
    out = diff_under_integral(FormClass(Poly.const(Q.vars, F.one()), 1, H), "g2")
    x, z = Poly.var(Q.vars, "x", F.one()), Poly.var(Q.vars, "z", F.one())
    assert out.pole_order == 2 and out.numerator == -(x * z ** 2)


def test_toric_curve_ode():
    g2, g3 = T(Fraction(1, 192)), (864 * t - 1) / 13824
    ode = picard_fuchs_ode(weierstrass_cubic(g2, g3), T, "t")
    assert ode.proportional_to(PicardFuchsODE("t", [T(60), 864 * t - 1, t * (432 * t - 1)]))
    A2, A1, A0 = weierstrass_closed_form(g2, g3)
    assert A2 / (t * (432 * t - 1)) == T(Fraction(1, 393216))


@pytest.mark.parametrize("seed", range(5))
def test_weierstrass_family_closed_form(seed):
    rng = random.Random(seed)
    g2 = random_ratfunc(rng, T, "t", 2, 1, 4)
    g3 = random_ratfunc(rng, T, "t", 2, 0, 4)
    A2, A1, A0 = weierstrass_closed_form(g2, g3)
    if not A2:
        pytest.skip("constant j")
    ode = picard_fuchs_ode(weierstrass_cubic(g2, g3), T, "t")
    assert ode.proportional_to(PicardFuchsODE("t", [A0, A1, A2]))
    assert (A1 / A2, A0 / A2) == weierstrass_standard_form(g2, g3)


def test_order_bound_is_reported():
    with pytest.raises(OrderBoundExceeded):
        picard_fuchs_ode(weierstrass_cubic(T(1), t), T, "t", max_order=0)


def test_k3_system_contains_the_displayed_operators():
    S = k3_system()
    g1, g2 = gd_bd_operators()
    assert S.same_span([g1, g2])
    assert g2.coeff((0, 0)) == S.field(Fraction(5, 36))
    # a different constant term leaves the span
    assert not S.contains(g2 + DiffOp.identity(S.field).scale(Fraction(1, 36)))


def test_decoupling_in_j_coordinates():
    J = RatField(("j1", "j2"))
    j1, j2 = J.gens()
    S = change_parameters(k3_system(), {"u": (j1 - 1) * (j2 - 1) / (j1 * j2), "d": 1 / (j1 * j2)}, J,
                          even_var=("b", "u"))
    assert S.same_span(list(decoupled_j_operators(J)))


def test_generic_k3_family_has_order_four():
    b_sq, d = (t ** 2 + 3) / (t + 1), 2 * t - 5
    rep = order_drop_report(k3_family_ode(b_sq, d))
    assert rep["order"] == 4 and not rep["order_dropped"]
