"""Concrete hypersurface families and their Picard-Fuchs data.

* the Weierstrass cubic ``y^2 z - 4 x^3 + g2 x z^2 + g3 z^3``,
* the Inose quartic ``y^2 z w - 4 x^3 z + 3 a x z w^2 + b z w^3 - (d z^2 w^2 + w^4)/2``,
* closed forms for the Weierstrass one-parameter ODE,
* one-parameter K3 families obtained by restricting the (b, d) system to a curve.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple

from .algebra import Poly, RatField, RatFunc
from .griffiths_dwork import (
    Cohomology,
    GDConfig,
    Hypersurface,
    PicardFuchsODE,
    PicardFuchsSystem,
    change_parameters,
    picard_fuchs_system,
)
from .operators import DiffOp, restrict_to_curve

CURVE_VARS = ("x", "y", "z")
K3_VARS = ("x", "y", "z", "w")


def weierstrass_cubic(g2, g3, variables=CURVE_VARS) -> Poly:
    X, Y, Z = (Poly.var(variables, v) for v in variables)
    return Y ** 2 * Z - 4 * X ** 3 + X * Z ** 2 * g2 + Z ** 3 * g3


def inose_quartic(a, b, d, variables=K3_VARS) -> Poly:
    X, Y, Z, W = (Poly.var(variables, v) for v in variables)
    half = Fraction(1, 2)
    return (Y ** 2 * Z * W - 4 * X ** 3 * Z + X * Z * W ** 2 * (3 * a) + Z * W ** 3 * b
            - (Z ** 2 * W ** 2 * d + W ** 4) * half)


def _d(f: RatFunc, t: str, k: int = 1) -> RatFunc:
    for _ in range(k):
        f = f.derivative(t)
    return f


def weierstrass_closed_form(g2: RatFunc, g3: RatFunc, t: str = "t") -> Tuple[RatFunc, RatFunc, RatFunc]:
    """(A2, A1, A0) of the one-parameter Weierstrass Picard-Fuchs equation."""
    d = lambda f, k=1: _d(f, t, k)  # noqa: E731
    D = g2 ** 3 - 27 * g3 ** 2
    A2 = 16 * D * (3 * d(g2) * g3 - 2 * g2 * d(g3))
    A1 = 16 * (9 * g2 ** 2 * g3 * d(g2) ** 2 - (7 * g2 ** 3 + 135 * g3 ** 2) * d(g2) * d(g3)
               + 108 * g2 * g3 * d(g3) ** 2 + D * (-3 * g3 * d(g2, 2) + 2 * g2 * d(g3, 2)))
    A0 = (21 * g2 * g3 * d(g2) ** 3 - 18 * g2 ** 2 * d(g2) ** 2 * d(g3)
          + 8 * d(g3) * (15 * g2 * d(g3) ** 2 - D * d(g2, 2))
          - 4 * d(g2) * (27 * g3 * d(g3) ** 2 - 2 * D * d(g3, 2)))
    return A2, A1, A0


def weierstrass_standard_form(g2: RatFunc, g3: RatFunc, t: str = "t") -> Tuple[RatFunc, RatFunc]:
    """(B1, B0) of the standard form in terms of j = g2^3 / Delta."""
    d = lambda f, k=1: _d(f, t, k)  # noqa: E731
    D = g2 ** 3 - 27 * g3 ** 2
    j = g2 ** 3 / D
    B1 = d(g3) / g3 - d(g2) / g2 + d(j) / j - d(j, 2) / d(j)
    B0 = d(j) ** 2 / (144 * j * (j - 1)) + d(D) / (12 * D) * (B1 + d(D, 2) / d(D) - 13 * d(D) / (12 * D))
    return B1, B0


def functional_invariant(g2: RatFunc, g3: RatFunc) -> RatFunc:
    """j = g2^3 / (g2^3 - 27 g3^2), normalized so that j(i) = 1."""
    return g2 ** 3 / (g2 ** 3 - 27 * g3 ** 2)


def curve_family_for_j(j: RatFunc) -> Tuple[RatFunc, RatFunc]:
    """A Weierstrass pair (g2, g3) with functional invariant j.

    g2 = g3 = 27 j / (j - 1) gives g2^3 / (g2^3 - 27 g3^2) = j.
    """
    c = 27 * j / (j - 1)
    return c, c


# -- K3 family ------------------------------------------------------------------


def gd_bd_operators(field: RatField | None = None) -> Tuple[DiffOp, DiffOp]:
    """The two displayed second-order operators in (b, d)."""
    F = field or RatField(("b", "d"))
    b, d = F.gen("b"), F.gen("d")
    g1 = DiffOp(F, {(2, 0): 1, (0, 2): -4 * d, (0, 1): -4})
    g2 = DiffOp(F, {(2, 0): -1 + b ** 2 + d, (1, 0): 2 * b, (1, 1): 4 * b * d, (0, 1): 2 * d,
                    (0, 0): Fraction(5, 36)})
    return g1, g2


def decoupled_j_operators(field: RatField | None = None) -> Tuple[DiffOp, DiffOp]:
    """72 j (2j - 1) F_j + 144 (j-1) j^2 F_jj - 5 F for each of j1, j2."""
    J = field or RatField(("j1", "j2"))
    j1, j2 = J.gen("j1"), J.gen("j2")
    D1 = DiffOp(J, {(0, 0): -5, (1, 0): 72 * j1 * (2 * j1 - 1), (2, 0): 144 * (j1 - 1) * j1 ** 2})
    D2 = DiffOp(J, {(0, 0): -5, (0, 1): 72 * j2 * (2 * j2 - 1), (0, 2): 144 * (j2 - 1) * j2 ** 2})
    return D1, D2


@lru_cache(maxsize=None)
def inose_cohomology(config: GDConfig = GDConfig()) -> Cohomology:
    F = RatField(("b", "d"))
    return Cohomology(Hypersurface(inose_quartic(1, F.gen("b"), F.gen("d")), F), config)


@lru_cache(maxsize=None)
def k3_system(config: GDConfig = GDConfig()) -> PicardFuchsSystem:
    """Griffiths-Dwork PDE system of Q(1, b, d) up to total order 2."""
    coh = inose_cohomology(config)
    Q = coh.hyper.Q
    return picard_fuchs_system(Q, coh.hyper.field, ("b", "d"), order=2, config=config, coh=coh)


@lru_cache(maxsize=None)
def k3_system_ud(config: GDConfig = GDConfig()) -> PicardFuchsSystem:
    """The same system rewritten in u = b^2 (the operators are even in b)."""
    return change_parameters(k3_system(config), {}, RatField(("u", "d")), even_var=("b", "u"))


def k3_family_ode(b_sq: RatFunc, d: RatFunc, max_order: int = 4, config: GDConfig = GDConfig()) -> PicardFuchsODE:
    """Picard-Fuchs ODE of the one-parameter family Q(1, b(t), d(t)).

    Only b(t)^2 needs to be rational.  The ODE is the restriction of the
    Griffiths-Dwork (u, d) system to the curve (u, d) = (b(t)^2, d(t)).
    """
    tfield = b_sq.field
    sysud = k3_system_ud(config)
    coeffs = restrict_to_curve(sysud.equations, {"u": b_sq, "d": d}, tfield, max_order=max_order)
    if coeffs is None:
        from .griffiths_dwork import OrderBoundExceeded

        raise OrderBoundExceeded(f"no relation among the first {max_order} derivatives")
    return PicardFuchsODE(tfield.names[0], coeffs).normalize()


def symmetric_from_j(j1: RatFunc, j2: RatFunc) -> Tuple[RatFunc, RatFunc]:
    """(b^2, d) = ((j1-1)(j2-1)/(j1 j2), 1/(j1 j2))."""
    return (j1 - 1) * (j2 - 1) / (j1 * j2), 1 / (j1 * j2)


def k3_family_ode_from_j(j1: RatFunc, j2: RatFunc, max_order: int = 4) -> PicardFuchsODE:
    return k3_family_ode(*symmetric_from_j(j1, j2), max_order=max_order)


def r4_expression(j1: RatFunc, j2: RatFunc, t: str = "t") -> RatFunc:
    """144((j1-1)(j2-1))^3 (j1 j2)^4 (j1-j2)^7 (j1' j2')^2 (Box(j2) - Box(j1))."""
    from .ode import box

    return (144 * ((j1 - 1) * (j2 - 1)) ** 3 * (j1 * j2) ** 4 * (j1 - j2) ** 7
            * (j1.derivative(t) * j2.derivative(t)) ** 2 * (box(j2, t) - box(j1, t)))


def k3_gauge_factor(j1: RatFunc, j2: RatFunc, t: str = "t") -> RatFunc:
    """Logarithmic derivative ell relating the K3 ODE to the tensor product.

    The K3 period is lambda * f * g with lambda = (j1' j2')^(1/2)
    (j1 (j1-1) j2 (j2-1))^(-1/4), where f, g solve the projective normal forms.
    """
    ell = (j1.derivative(t).derivative(t) / j1.derivative(t) + j2.derivative(t).derivative(t) / j2.derivative(t)) / 2
    for j in (j1, j2):
        ell = ell - (2 * j - 1) * j.derivative(t) / (4 * j * (j - 1))
    return ell
