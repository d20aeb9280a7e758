"""Picard-Fuchs equation of a one-parameter Weierstrass family, compared with the closed form.

    python scripts/weierstrass_family.py "1/192" "(864*t-1)/13824"
"""

import sys

from picard_fuchs.algebra import RatField
from picard_fuchs.expr import parse_expr, to_ratfunc
from picard_fuchs.families import functional_invariant, weierstrass_closed_form, weierstrass_cubic
from picard_fuchs.griffiths_dwork import PicardFuchsODE, picard_fuchs_ode
from picard_fuchs.ode import box, projective_normal_form

g2_src, g3_src = (sys.argv[1:3] if len(sys.argv) > 2 else ("1/192", "(864*t-1)/13824"))
T = RatField(("t",))
g2, g3 = (to_ratfunc(parse_expr(s, {"t"}), T) for s in (g2_src, g3_src))

ode = picard_fuchs_ode(weierstrass_cubic(g2, g3), T, "t")
print("Griffiths-Dwork ODE:", ode)
A2, A1, A0 = weierstrass_closed_form(g2, g3)
print("matches closed form:", ode.proportional_to(PicardFuchsODE("t", [A0, A1, A2])))
j = functional_invariant(g2, g3)
print("j(t) =", j)
if j.derivative("t"):
    print("projective normal form equals Box(j):", projective_normal_form(ode).p2 == box(j))
