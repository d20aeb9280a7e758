"""Curated exact data for modular parametrizations and the checks tying them together.

All constants live in ``data/catalog.txt``; nothing here retypes them.  The
file is checksummed, and ``PICARD_FUCHS_CATALOG`` may point to a replacement
file (its checksum is then reported but not enforced).

Irrational j-pairs are handled in the quadratic extension
Q(t)[X]/(X^2 - sigma X + pi) where sigma = j1 + j2 and pi = j1 j2.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .algebra import Poly, RatField, RatFunc
from .expr import Expr, parse_expr, to_poly, to_ratfunc

__all__ = [
    "CATALOG_ENV",
    "CATALOG_SHA256",
    "CatalogRecord",
    "Catalog",
    "load_catalog",
    "UnsupportedLevel",
    "PsiPolynomial",
    "ModularParametrization",
    "WInvariants",
    "HauptmodulRecord",
    "QuadraticExtension",
    "QElt",
    "JPair",
    "catalog_psi",
    "catalog_parametrization",
    "symmetric_to_j_pair",
    "fricke_quotient_parametrization",
    "master_equation_check",
    "psi_vanishing_check",
    "qvalue_catalog",
    "level2_hauptmodul_example",
    "w_invariants",
    "dictionary_check",
    "weighted_scaling_check",
]

CATALOG_ENV = "PICARD_FUCHS_CATALOG"
CATALOG_SHA256 = "90d309b260456ca2180eb80eafb0f0e56b6c72a3000b448ad730ccfe3dd4f3a9"

PSI_LEVELS = (2, 3)
PARAM_LEVELS = (2, 3, 6)
PSI_WEIGHTS = {"a": 2, "b": 3, "d": 6}
PSI_DEGREE = {2: 18, 3: 24}
QVALUE_LABELS = {"j": "qvalue_j", "Gamma0(3)+3": "qvalue_gamma0_3_plus_3", "Gamma0(6)+3": "qvalue_gamma0_6_plus_3"}


class UnsupportedLevel(ValueError):
    pass


# -- data file ----------------------------------------------------------------


@dataclass(frozen=True)
class CatalogRecord:
    name: str
    variables: Tuple[str, ...]
    source: str
    expr: Expr

    def ratfunc(self, field: Optional[RatField] = None) -> RatFunc:
        return to_ratfunc(self.expr, field or RatField(self.variables))

    def poly(self, coords, params=()) -> Poly:
        """Polynomial in ``coords`` with coefficients in Q(params)."""
        return to_poly(self.expr, coords, RatField(tuple(params)))


@dataclass
class Catalog:
    path: str
    sha256: str
    records: Dict[str, CatalogRecord] = field(default_factory=dict)

    @property
    def checksum_ok(self) -> bool:
        return self.sha256 == CATALOG_SHA256

    def __getitem__(self, name: str) -> CatalogRecord:
        try:
            return self.records[name]
        except KeyError:
            raise KeyError(f"no catalog record {name!r}") from None

    def __contains__(self, name):
        return name in self.records


def _parse_catalog(text: str, path: str) -> Dict[str, CatalogRecord]:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, body = line.partition("=")
        if not sep or "(" not in head:
            raise ValueError(f"{path}:{lineno}: expected 'name (vars) = expr'")
        name, _, rest = head.partition("(")
        variables = tuple(v.strip() for v in rest.rstrip().rstrip(")").split(",") if v.strip())
        name = name.strip()
        if name in out:
            raise ValueError(f"{path}:{lineno}: duplicate record {name!r}")
        out[name] = CatalogRecord(name, variables, body.strip(), parse_expr(body, variables))
    return out


def _read_bundled() -> Tuple[str, bytes]:
    ref = resources.files("picard_fuchs").joinpath("data/catalog.txt")
    return str(ref), ref.read_bytes()


@lru_cache(maxsize=4)
def _load(path: Optional[str]) -> Catalog:
    if path is None:
        where, raw = _read_bundled()
    else:
        where = path
        with open(path, "rb") as fh:
            raw = fh.read()
    digest = hashlib.sha256(raw).hexdigest()
    if path is None and digest != CATALOG_SHA256:
        raise ValueError(f"bundled catalog checksum mismatch: {digest}")
    return Catalog(where, digest, _parse_catalog(raw.decode("utf-8"), where))


def load_catalog(path: Optional[str] = None) -> Catalog:
    """Load the catalog (explicit path, then ``$PICARD_FUCHS_CATALOG``, then the bundled file)."""
    return _load(path or os.environ.get(CATALOG_ENV) or None)


# -- domain types ---------------------------------------------------------------


@dataclass(frozen=True)
class PsiPolynomial:
    level: int
    poly: Poly  # in (a, b, d)

    def weighted_degree(self) -> int:
        degs = {sum(PSI_WEIGHTS[v] * k for v, k in zip(self.poly.vars, e)) for e in self.poly.terms}
        if len(degs) != 1:
            raise ValueError("not weighted homogeneous")
        return degs.pop()

    def is_even_in_b(self) -> bool:
        i = self.poly.vars.index("b")
        return all(e[i] % 2 == 0 for e in self.poly.terms)


@dataclass
class ModularParametrization:
    """A parametrization of Y0(n)+n, by a j-pair and/or by (b^2, d)."""

    level: Optional[int]
    b_sq: Optional[RatFunc] = None
    d: Optional[RatFunc] = None
    j1: Optional[RatFunc] = None
    j2: Optional[RatFunc] = None
    source: str = "user"

    @classmethod
    def from_j_pair(cls, j1: RatFunc, j2: RatFunc, level=None, source="user"):
        b_sq = (j1 - 1) * (j2 - 1) / (j1 * j2)
        return cls(level, b_sq, 1 / (j1 * j2), j1, j2, source)

    @property
    def var(self) -> str:
        f = (self.d or self.j1).field
        return f.names[0]

    def consistent(self) -> bool:
        if self.j1 is None or self.b_sq is None:
            return True
        j1, j2 = self.j1, self.j2
        return self.b_sq == (j1 - 1) * (j2 - 1) / (j1 * j2) and self.d == 1 / (j1 * j2)


@dataclass(frozen=True)
class WInvariants:
    W1: RatFunc
    W2: RatFunc


@dataclass(frozen=True)
class HauptmodulRecord:
    label: str
    q_value: RatFunc


# -- catalog accessors ----------------------------------------------------------


def catalog_psi(n: int) -> PsiPolynomial:
    if n not in PSI_LEVELS:
        raise UnsupportedLevel(f"Psi polynomial for level {n} is not bundled; supported levels: "
                               f"{', '.join(map(str, PSI_LEVELS))}")
    rec = load_catalog()[f"psi{n}"]
    return PsiPolynomial(n, rec.poly(("a", "b", "d")))


def catalog_parametrization(n: int, var: str = "t") -> ModularParametrization:
    if n not in PARAM_LEVELS:
        raise UnsupportedLevel(f"no parametrization for level {n}; supported levels: "
                               f"{', '.join(map(str, PARAM_LEVELS))}")
    cat = load_catalog()
    F = RatField((var,))
    vals = []
    for key in ("bsq", "d"):
        rec = cat[f"param{n}_{key}"]
        vals.append(rec.ratfunc(RatField(rec.variables)).subs({rec.variables[0]: F.gen(var)}, F))
    return ModularParametrization(n, vals[0], vals[1], source=f"catalog:param{n}")


def qvalue_catalog(label: str) -> HauptmodulRecord:
    if label not in QVALUE_LABELS:
        raise KeyError(f"unknown hauptmodul label {label!r}; known labels: {', '.join(QVALUE_LABELS)}")
    return HauptmodulRecord(label, load_catalog()[QVALUE_LABELS[label]].ratfunc())


# -- quadratic extension ------------------------------------------------------------


class QuadraticExtension:
    """K[X]/(X^2 - sigma X + pi) with the derivation extending d/dt.

    Differentiating X^2 - sigma X + pi = 0 gives X' = (sigma' X - pi') / (2X - sigma).
    """

    def __init__(self, sigma: RatFunc, pi: RatFunc, var: str):
        self.sigma, self.pi, self.var = sigma, pi, var
        self.base = sigma.field
        if not (sigma * sigma - 4 * pi):
            raise ValueError("X^2 - sigma X + pi has a double root; the quotient is not a field")
        self._xprime = self.elt(-pi.derivative(var), sigma.derivative(var)) / self.elt(-sigma, 2)

    def elt(self, c0, c1=0) -> "QElt":
        return QElt(self, self.base(c0), self.base(c1))

    def gen(self) -> "QElt":
        return self.elt(0, 1)

    def evaluate(self, f: RatFunc) -> "QElt":
        """f(X) for a univariate rational function f (Horner in the extension)."""

        def horner(p):
            terms = {int(e[0]): Fraction(int(c.p), int(c.q)) for e, c in zip(p.monoms(), p.coeffs())}
            acc = self.elt(0)
            for k in range(max(terms, default=0), -1, -1):
                acc = acc * self.gen() + terms.get(k, 0)
            return acc

        return horner(f.num) / horner(f.den)

    def derivative(self, a: "QElt") -> "QElt":
        t = self.var
        return QElt(self, a.c0.derivative(t), a.c1.derivative(t)) + self._xprime * a.c1


@dataclass(frozen=True, eq=False)
class QElt:
    """c0 + c1 X in a :class:`QuadraticExtension`."""

    ext: QuadraticExtension
    c0: RatFunc
    c1: RatFunc

    def _co(self, o):
        return o if isinstance(o, QElt) else self.ext.elt(o)

    def __add__(self, o):
        o = self._co(o)
        return QElt(self.ext, self.c0 + o.c0, self.c1 + o.c1)

    __radd__ = __add__

    def __neg__(self):
        return QElt(self.ext, -self.c0, -self.c1)

    def __sub__(self, o):
        return self + (-self._co(o))

    def __rsub__(self, o):
        return self._co(o) - self

    def __mul__(self, o):
        o = self._co(o)
        s, p = self.ext.sigma, self.ext.pi
        hi = self.c1 * o.c1  # coefficient of X^2 = sigma X - pi
        return QElt(self.ext, self.c0 * o.c0 - hi * p, self.c0 * o.c1 + self.c1 * o.c0 + hi * s)

    __rmul__ = __mul__

    def conj(self) -> "QElt":
        return QElt(self.ext, self.c0 + self.c1 * self.ext.sigma, -self.c1)

    def norm(self) -> RatFunc:
        return self.c0 * self.c0 + self.c0 * self.c1 * self.ext.sigma + self.c1 * self.c1 * self.ext.pi

    def __truediv__(self, o):
        o = self._co(o)
        n = o.norm()
        if not n:
            raise ZeroDivisionError("division by zero in the quadratic extension")
        c = self * o.conj()
        return QElt(self.ext, c.c0 / n, c.c1 / n)

    def __rtruediv__(self, o):
        return self._co(o) / self

    def __pow__(self, k: int):
        out = self.ext.elt(1)
        for _ in range(k):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.c0) or bool(self.c1)

    def __eq__(self, o):
        o = self._co(o)
        return self.c0 == o.c0 and self.c1 == o.c1

    def derivative(self) -> "QElt":
        return self.ext.derivative(self)


Scalar = Union[RatFunc, QElt]


@dataclass
class JPair:
    sigma: RatFunc
    pi: RatFunc
    discriminant: RatFunc
    rational: bool
    j1: Scalar
    j2: Scalar
    extension: Optional[QuadraticExtension] = None


def _sqrt_ratfunc(f: RatFunc) -> Optional[RatFunc]:
    if not f:
        return f
    try:
        n = f.num.sqrt()
        d = f.den.sqrt()
    except Exception:  # flint raises DomainError for non-squares
        return None
    return RatFunc(f.field, n, d)


def symmetric_to_j_pair(m: ModularParametrization) -> JPair:
    """Recover j1, j2 as the roots of X^2 - sigma X + pi.

    pi = 1/d and sigma = pi + 1 - b^2/d, from b^2 = (j1-1)(j2-1)/(j1 j2), d = 1/(j1 j2).
    """
    if m.j1 is not None and m.j2 is not None:
        s, p = m.j1 + m.j2, m.j1 * m.j2
        return JPair(s, p, s * s - 4 * p, True, m.j1, m.j2)
    if m.d is None or m.b_sq is None:
        raise ValueError("symmetric representation (b^2, d) required")
    if not m.d:
        raise ValueError("d is identically zero")
    pi = 1 / m.d
    sigma = pi + 1 - m.b_sq / m.d
    disc = sigma * sigma - 4 * pi
    r = _sqrt_ratfunc(disc)
    if r is not None:
        return JPair(sigma, pi, disc, True, (sigma + r) / 2, (sigma - r) / 2)
    ext = QuadraticExtension(sigma, pi, m.var)
    X = ext.gen()
    return JPair(sigma, pi, disc, False, X, ext.elt(sigma) - X, ext)


#: Fricke involutions t -> c/t of the level-n hauptmoduls above (found by search, checked in tests)
FRICKE_CONSTANTS = {2: 4096, 3: 729}


def fricke_quotient_parametrization(n: int, var: str = "s") -> ModularParametrization:
    """(b^2, d) of level n in s = t + c/t, where j1 and j2 become conjugate over Q(s).

    Both b^2(t) and d(t) are invariant under t -> c/t, so evaluating them at a root
    of T^2 - s T + c lands in the base field Q(s).
    """
    m = catalog_parametrization(n)
    S = RatField((var,))
    ext = QuadraticExtension(S.gen(var), S(FRICKE_CONSTANTS[n]), var)
    vals = [ext.evaluate(f) for f in (m.b_sq, m.d)]
    if any(v.c1 for v in vals):
        raise ValueError("parametrization is not invariant under the Fricke involution")
    return ModularParametrization(None, vals[0].c0, vals[1].c0, source=f"fricke-quotient:{n}")


def _box_generic(j, d, qfun):
    j1 = d(j)
    if not j1:
        raise ValueError("j must be nonconstant: the master equation concerns nonconstant functions "
                         "of a complex variable")
    j2 = d(j1)
    j3 = d(j2)
    schw = (2 * j1 * j3 - 3 * j2 * j2) / (2 * j1 * j1)
    return j1 * j1 * qfun(j) + schw / 2


def _qj(j):
    return (36 * j * j - 41 * j + 32) / (144 * (j - 1) ** 2 * j * j)


def box_of(pair: JPair, which: int, var: str):
    j = pair.j1 if which == 1 else pair.j2
    if isinstance(j, QElt):
        return _box_generic(j, lambda f: f.derivative(), _qj)
    return _box_generic(j, lambda f: f.derivative(var), _qj)


def master_equation_check(m: ModularParametrization) -> bool:
    """Box(j1) == Box(j2), decided exactly (coordinatewise in the extension if needed)."""
    var = m.var
    pair = symmetric_to_j_pair(m)
    for j in (pair.j1, pair.j2):
        c = j if isinstance(j, RatFunc) else None
        if c is not None and not c.derivative(var):
            raise ValueError("j must be nonconstant: the master equation concerns nonconstant "
                             "functions of a complex variable")
    diff = box_of(pair, 1, var) - box_of(pair, 2, var)
    return not diff


def _substitute_psi(psi: PsiPolynomial, b_sq: RatFunc, d: RatFunc, a=1) -> RatFunc:
    """Psi(a, b, d) with b^(2k) -> (b^2)^k (well defined because Psi is even in b)."""
    F = b_sq.field
    va, vb, vd = (psi.poly.vars.index(v) for v in ("a", "b", "d"))
    a = F(a)
    total = F.zero()
    for e, c in psi.poly.terms.items():
        total = total + F(c) * a ** e[va] * b_sq ** (e[vb] // 2) * d ** e[vd]
    return total


def psi_vanishing_check(n: int, perturb: bool = False) -> bool:
    """Psi_n(1, b, d) vanishes on the level-n parametrization (d scaled by 1+t if ``perturb``)."""
    psi = catalog_psi(n)
    m = catalog_parametrization(n)
    d = m.d
    if perturb:
        d = d * (1 + d.field.gen(m.var))
    return not _substitute_psi(psi, m.b_sq, d)


def weighted_scaling_check(n: int) -> bool:
    """Psi(l^2 a, l^3 b, l^6 d) = l^w Psi(a, b, d) for symbolic l."""
    psi = catalog_psi(n)
    F = RatField(("a", "b", "d", "l"))
    a, b, d, lam = F.gens()
    lhs = psi.poly.to_field(F).subs(
        {"a": Poly.const(psi.poly.vars, lam ** 2) * Poly.var(psi.poly.vars, "a"),
         "b": Poly.const(psi.poly.vars, lam ** 3) * Poly.var(psi.poly.vars, "b"),
         "d": Poly.const(psi.poly.vars, lam ** 6) * Poly.var(psi.poly.vars, "d")})
    rhs = psi.poly.to_field(F).scale(lam ** PSI_DEGREE[n])
    return lhs == rhs


def w_invariants(b_sq: RatFunc, d: RatFunc, a_cubed=1) -> WInvariants:
    """W1 = a^3/d, W2 = b^2/d."""
    return WInvariants(d.field(a_cubed) / d, b_sq / d)


def dictionary_check(j1: RatFunc, j2: RatFunc) -> bool:
    """On a = 1: W1 = j1 j2 = pi and W2 = (j1-1)(j2-1) = pi - sigma + 1."""
    m = ModularParametrization.from_j_pair(j1, j2)
    w = w_invariants(m.b_sq, m.d)
    s, p = j1 + j2, j1 * j2
    return w.W1 == p and w.W2 == (j1 - 1) * (j2 - 1) and w.W2 == p - s + 1


# -- level-two hauptmodul example --------------------------------------------------


@dataclass
class Level2Report:
    phi2_vanishes: bool
    transports_agree: bool
    matches_record: bool
    transported: RatFunc
    record_label: str
    details: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.phi2_vanishes and self.transports_agree and self.matches_record


def level2_hauptmodul_example(h2: Optional[RatFunc] = None, qvalue_label: str = "Gamma0(3)+3",
                              target_label: str = "Gamma0(6)+3") -> Level2Report:
    """Check the Gamma0(3)+3 modular equation, the Q-value transport, and the target record.

    ``h2`` overrides the second parametrizing function; ``qvalue_label`` selects
    the Q-value transported along h1 and h2.
    """
    from .ode import qvalue_transport

    cat = load_catalog()
    T = RatField(("t",))
    h1 = cat["level2_h1"].ratfunc(T)
    if h2 is None:
        h2 = cat["level2_h2"].ratfunc(T)
    phi = cat["phi2"].ratfunc()
    vanish = not phi.subs({"h1": h1, "h2": h2}, T)
    q = qvalue_catalog(qvalue_label).q_value
    r1 = qvalue_transport(h1, q, "t")
    r2 = qvalue_transport(h2, q, "t")
    target = qvalue_catalog(target_label).q_value.subs({"t": T.gen("t")}, T)
    return Level2Report(vanish, r1 == r2, r1 == target, r1, target_label)
