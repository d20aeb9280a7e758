"""Master equation, Psi vanishing and order drop for the bundled levels."""

from picard_fuchs.catalog import (catalog_parametrization, fricke_quotient_parametrization, master_equation_check,
                                  psi_vanishing_check, symmetric_to_j_pair)
from picard_fuchs.families import k3_family_ode
from picard_fuchs.griffiths_dwork import order_drop_report

for n in (2, 3, 6):
    m = catalog_parametrization(n)
    pair = symmetric_to_j_pair(m)
    rep = order_drop_report(k3_family_ode(m.b_sq, m.d))
    psi = psi_vanishing_check(n) if n in (2, 3) else "n/a"
    print(f"level {n}: j-pair rational {pair.rational}, Box(j1) = Box(j2) {master_equation_check(m)}, "
          f"Psi vanishes {psi}, K3 ODE order {rep['order']}")

for n in (2, 3):
    m = fricke_quotient_parametrization(n)
    print(f"level {n} Fricke quotient: j-pair rational {symmetric_to_j_pair(m).rational}, "
          f"master equation {master_equation_check(m)}")
