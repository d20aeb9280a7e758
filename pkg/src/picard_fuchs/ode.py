"""Calculus on linear ODEs with rational-function coefficients.

Conventions: an ODE is a coefficient list ``[c0, ..., cm]`` meaning
``sum_i c_i f^(i) = 0``.  The independent variable is the first generator of
the coefficient field unless given explicitly.  The j-invariant is normalized
so that j(i) = 1 (not 1728); the constants in :func:`box` assume this.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, Sequence

from .algebra import RatField, RatFunc
from .griffiths_dwork import PicardFuchsODE

__all__ = [
    "LinearODE",
    "ProjectiveNormalForm",
    "FanoDegenerate",
    "projective_normal_form",
    "schwarzian",
    "box",
    "j_qvalue",
    "tensor_product_4",
    "fano_check",
    "qvalue_transport",
    "gauge_transform",
    "PowerSeries",
    "series_solutions",
    "annihilates_products",
]

#: the ODE shape is shared with the Griffiths-Dwork output
LinearODE = PicardFuchsODE


class FanoDegenerate(ValueError):
    """The tensor-product formula is undefined because p2 = q2."""


@dataclass(frozen=True)
class ProjectiveNormalForm:
    """f'' + p2 f = 0."""

    p2: RatFunc
    var: str = "t"

    def as_ode(self) -> LinearODE:
        F = self.p2.field
        return LinearODE(self.var, [self.p2, F.zero(), F.one()])


def _var(f: RatFunc, var: str | None) -> str:
    if var is not None:
        return var
    if not f.field.names:
        raise ValueError("constant field has no independent variable")
    return f.field.names[0]


def projective_normal_form(ode: LinearODE) -> ProjectiveNormalForm:
    """Gauge-invariant coefficient p2 = a0 - a1^2/4 - a1'/2 of the monic form."""
    if ode.order != 2:
        raise ValueError(f"projective normal form needs order 2, got {ode.order}")
    m = ode.monic().coefficients
    t = ode.indep_var
    a0, a1 = m[0], m[1]
    return ProjectiveNormalForm(a0 - a1 * a1 / 4 - a1.derivative(t) / 2, t)


def schwarzian(j: RatFunc, var: str | None = None) -> RatFunc:
    """{j, t} = (2 j' j''' - 3 j''^2) / (2 j'^2)."""
    t = _var(j, var)
    j1 = j.derivative(t)
    if not j1:
        raise ValueError("vanishing derivative: the Schwarzian needs a nonconstant function")
    j2 = j1.derivative(t)
    j3 = j2.derivative(t)
    return (2 * j1 * j3 - 3 * j2 * j2) / (2 * j1 * j1)


def j_qvalue(field: RatField, name: str = "j") -> RatFunc:
    """(36 j^2 - 41 j + 32) / (144 (j-1)^2 j^2), the Q-value of the j-line."""
    j = field.gen(name)
    return (36 * j ** 2 - 41 * j + 32) / (144 * (j - 1) ** 2 * j ** 2)


def box(j: RatFunc, var: str | None = None) -> RatFunc:
    """Box(j) = j'^2 (36j^2 - 41j + 32)/(144 (j-1)^2 j^2) + {j, t}/2."""
    t = _var(j, var)
    if not j.derivative(t):
        raise ValueError("Box needs a nonconstant j")
    if not j or j == 1:
        raise ValueError("j is identically 0 or 1 (singular locus of the j-line)")
    j1 = j.derivative(t)
    return j1 * j1 * (36 * j * j - 41 * j + 32) / (144 * (j - 1) ** 2 * j * j) + schwarzian(j, t) / 2


def qvalue_transport(h1: RatFunc, q_gamma: RatFunc, var: str | None = None) -> RatFunc:
    """h1'^2 Q(h1) + {h1, t}/2 where ``q_gamma`` is a function of one variable."""
    t = _var(h1, var)
    d = h1.derivative(t)
    if not d:
        raise ValueError("qvalue transport needs a nonconstant h1")
    if len(q_gamma.field.names) > 1:
        raise ValueError("Q-value must be a function of a single variable")
    qh = q_gamma.subs({q_gamma.field.names[0]: h1}, h1.field) if q_gamma.field.names else h1.field(
        q_gamma.constant_value())
    return d * d * qh + schwarzian(h1, t) / 2


def tensor_product_4(p2: RatFunc, q2: RatFunc, var: str | None = None) -> LinearODE:
    """Monic order-4 operator annihilating f*g for f'' + p2 f = 0 and g'' + q2 g = 0."""
    t = _var(p2 if p2.field.names else q2, var)
    F = p2.field
    if p2 == q2:
        raise FanoDegenerate("p2 = q2: the tensor-product formula degenerates (use fano_check)")
    dp, dq = p2.derivative(t), q2.derivative(t)
    diff = p2 - q2
    c3 = (dq - dp) / diff
    c2 = 2 * (p2 + q2)
    c1 = (p2 * (dp + 5 * dq) - q2 * (5 * dp + dq)) / diff
    c0 = diff * diff + dp.derivative(t) + dq.derivative(t) + (dq * dq - dp * dp) / diff
    return LinearODE(t, [c0, c1, c2, c3, F.one()])


def fano_check(p2: RatFunc, q2: RatFunc) -> bool:
    """True iff the two projective normal forms coincide."""
    return p2 == q2


def gauge_transform(ode: LinearODE, ell: RatFunc) -> LinearODE:
    """Operator whose solutions are exp(int ell) * (solutions of ``ode``).

    With mu'/mu = -ell, mu^(m) = mu * R_m where R_{m+1} = R_m' - ell R_m; the
    new coefficients are sum_k c_k binom(k, i) R_{k-i}.
    """
    t = ode.indep_var
    c = ode.coefficients
    m = len(c) - 1
    F = c[0].field
    R = [F.one()]
    for _ in range(m):
        R.append(R[-1].derivative(t) - ell * R[-1])
    new = []
    for i in range(m + 1):
        s = F.zero()
        for k in range(i, m + 1):
            if c[k]:
                s = s + c[k] * comb(k, i) * R[k - i]
        new.append(s)
    return LinearODE(t, new)


# -- power-series oracle ------------------------------------------------------


class PowerSeries:
    """Truncated power series in (t - t0) with Fraction coefficients."""

    def __init__(self, coeffs: Sequence, prec: int):
        self.prec = prec
        cs = [Fraction(x) for x in coeffs][:prec]
        self.c = cs + [Fraction(0)] * (prec - len(cs))

    @classmethod
    def from_ratfunc(cls, f: RatFunc, t0, prec: int) -> "PowerSeries":
        """Taylor expansion at t0 (the denominator must not vanish there)."""
        t = f.field.names[0] if f.field.names else None
        if t is None:
            return cls([f.constant_value()], prec)
        num = _poly_shift(f.num, t0, prec)
        den = _poly_shift(f.den, t0, prec)
        if den[0] == 0:
            raise ZeroDivisionError(f"pole at t0 = {t0}")
        return cls(num, prec) / cls(den, prec)

    def __add__(self, o):
        return PowerSeries([a + b for a, b in zip(self.c, o.c)], min(self.prec, o.prec))

    def __sub__(self, o):
        return PowerSeries([a - b for a, b in zip(self.c, o.c)], min(self.prec, o.prec))

    def __mul__(self, o):
        if not isinstance(o, PowerSeries):
            return PowerSeries([a * o for a in self.c], self.prec)
        n = min(self.prec, o.prec)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.c[:n]):
            if a:
                for j in range(n - i):
                    out[i + j] += a * o.c[j]
        return PowerSeries(out, n)

    __rmul__ = __mul__

    def __truediv__(self, o):
        n = min(self.prec, o.prec)
        inv0 = 1 / o.c[0]
        out = []
        for k in range(n):
            s = self.c[k] - sum(out[i] * o.c[k - i] for i in range(k))
            out.append(s * inv0)
        return PowerSeries(out, n)

    def derivative(self):
        return PowerSeries([k * self.c[k] for k in range(1, self.prec)], self.prec - 1)

    def truncate(self, n):
        return PowerSeries(self.c[:n], n)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.c)


def _poly_shift(p, t0, prec):
    """Coefficients of p(t0 + s) in s, as Fractions (univariate fmpq_mpoly)."""
    coeffs = {}
    for (e,), c in zip(p.monoms(), p.coeffs()):
        coeffs[int(e)] = Fraction(int(c.p), int(c.q))
    deg = max(coeffs) if coeffs else 0
    t0 = Fraction(t0)
    out = [Fraction(0)] * (deg + 1)
    for e, c in coeffs.items():
        for k in range(e + 1):
            out[k] += c * comb(e, k) * t0 ** (e - k)
    return out[:prec] if len(out) > prec else out


def series_solutions(p2: RatFunc, t0, prec: int) -> List[PowerSeries]:
    """Fundamental solutions (f(t0), f'(t0)) = (1, 0), (0, 1) of f'' + p2 f = 0."""
    P = PowerSeries.from_ratfunc(p2, t0, prec)
    sols = []
    for init in ((1, 0), (0, 1)):
        a = [Fraction(init[0]), Fraction(init[1])]
        for k in range(prec - 2):
            # (k+2)(k+1) a_{k+2} = - sum_i P_i a_{k-i}
            s = sum(P.c[i] * a[k - i] for i in range(k + 1))
            a.append(-s / ((k + 2) * (k + 1)))
        sols.append(PowerSeries(a, prec))
    return sols


def annihilates_products(ode: LinearODE, p2: RatFunc, q2: RatFunc, t0=0, order: int = 12) -> bool:
    """Series oracle: does ``ode`` kill f*g for all fundamental f, g to O((t-t0)^order)?"""
    m = ode.order
    prec = order + m + 2
    coeffs = [PowerSeries.from_ratfunc(c, t0, prec) for c in ode.coefficients]
    for f in series_solutions(p2, t0, prec):
        for g in series_solutions(q2, t0, prec):
            h = f * g
            total = PowerSeries([0], prec - m)
            ders = [h]
            for _ in range(m):
                ders.append(ders[-1].derivative())
            for c, d in zip(coeffs, ders):
                total = total + (c * d).truncate(prec - m)
            if not total.truncate(order).is_zero():
                return False
    return True
