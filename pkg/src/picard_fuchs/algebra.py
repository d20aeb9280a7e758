"""Exact arithmetic: rationals, Q(zeta3), sparse multivariate polynomials and
rational function fields.

Scalars are :class:`fractions.Fraction` for Q and :class:`Zeta3` for Q(zeta3).
Rational functions in parameter variables are backed by FLINT multivariate
polynomials (``python-flint``), which supplies the polynomial gcd.

:class:`Poly` is a plain sparse polynomial whose coefficients may be any of the
scalar types above or :class:`RatFunc`; it is the carrier for hypersurface
equations, ideals and cohomology numerators.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _iproduct
from typing import Dict, Iterable, Mapping, Sequence, Tuple

import flint

Exp = Tuple[int, ...]

__all__ = [
    "Fraction",
    "Zeta3",
    "ZETA3",
    "RatField",
    "RatFunc",
    "Poly",
    "StructureError",
    "grevlex_key",
    "poly_gcd",
    "partial_derivative",
    "ratfunc_derivative",
]


class StructureError(ValueError):
    """Raised when operands live in incompatible variable contexts."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, flint.fmpz):
        return Fraction(int(x))
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


# ---------------------------------------------------------------------------
# Q(zeta3)
# ---------------------------------------------------------------------------


class Zeta3:
    """An element u + v*zeta of Q(zeta) where zeta^2 + zeta + 1 = 0."""

    __slots__ = ("u", "v")

    def __init__(self, u=0, v=0):
        self.u = _frac(u)
        self.v = _frac(v)

    @staticmethod
    def _coerce(other):
        if isinstance(other, Zeta3):
            return other
        if isinstance(other, (int, Fraction)):
            return Zeta3(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Zeta3(self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __neg__(self):
        return Zeta3(-self.u, -self.v)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Zeta3(self.u - o.u, self.v - o.v)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        # zeta^2 = -1 - zeta
        uu = self.u * o.u
        vv = self.v * o.v
        return Zeta3(uu - vv, self.u * o.v + self.v * o.u - vv)

    __rmul__ = __mul__

    def conj(self) -> "Zeta3":
        """Galois conjugation zeta -> zeta^2 = -1 - zeta."""
        return Zeta3(self.u - self.v, -self.v)

    def norm(self) -> Fraction:
        return self.u * self.u - self.u * self.v + self.v * self.v

    def inverse(self) -> "Zeta3":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero in Q(zeta3)")
        c = self.conj()
        return Zeta3(c.u / n, c.v / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out, base = Zeta3(1), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __bool__(self):
        return bool(self.u) or bool(self.v)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.u == o.u and self.v == o.v

    def __hash__(self):
        if self.v == 0:
            return hash(self.u)
        return hash((self.u, self.v))

    def is_rational(self) -> bool:
        return self.v == 0

    def __repr__(self):
        if self.v == 0:
            return str(self.u)
        return f"({self.u} + {self.v}*zeta3)"

    __str__ = __repr__


ZETA3 = Zeta3(0, 1)


# ---------------------------------------------------------------------------
# Rational function fields Q(params)
# ---------------------------------------------------------------------------


class RatField:
    """The field Q(p1, ..., pk) of rational functions in named parameters.

    Fields are cached per tuple of names so that identity comparison is enough
    to decide compatibility.
    """

    _cache: Dict[Tuple[str, ...], "RatField"] = {}

    def __new__(cls, names: Iterable[str] = ()):
        names = tuple(names)
        hit = cls._cache.get(names)
        if hit is not None:
            return hit
        self = super().__new__(cls)
        self.names = names
        self.ctx = flint.fmpq_mpoly_ctx.get(names, "degrevlex")
        self._one = self.ctx.constant(1)
        cls._cache[names] = self
        return self

    def __reduce__(self):
        return (RatField, (self.names,))

    def __repr__(self):
        return f"QQ({', '.join(self.names)})" if self.names else "QQ"

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __call__(self, value) -> "RatFunc":
        if isinstance(value, RatFunc):
            if value.field is self:
                return value
            return value.embed(self)
        if isinstance(value, (int, Fraction)):
            v = Fraction(value)
            return RatFunc._raw(self, self.ctx.constant(flint.fmpq(v.numerator, v.denominator)), self._one)
        if isinstance(value, flint.fmpq_mpoly):
            return RatFunc(self, value, self._one)
        raise TypeError(f"cannot coerce {type(value).__name__} into {self}")

    def gen(self, name: str) -> "RatFunc":
        return RatFunc._raw(self, self.ctx.gen(self.names.index(name)), self._one)

    def gens(self):
        return tuple(self.gen(n) for n in self.names)

    def zero(self) -> "RatFunc":
        return self(0)

    def one(self) -> "RatFunc":
        return self(1)

    def poly(self, terms: Mapping[Exp, object]) -> "RatFunc":
        """Build the polynomial with the given exponent -> rational map."""
        d = {}
        for e, c in terms.items():
            c = _frac(c)
            d[tuple(e)] = flint.fmpq(c.numerator, c.denominator)
        return RatFunc(self, self.ctx.from_dict(d), self._one)


def _fmpq_to_frac(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


class RatFunc:
    """A reduced fraction num/den of polynomials over Q.

    Invariants: gcd(num, den) = 1 and den is monic (leading coefficient 1 in
    the degrevlex order), so the representation is unique.
    """

    __slots__ = ("field", "num", "den")

    def __init__(self, field: RatField, num, den=None):
        ctx = field.ctx
        if den is None:
            den = field._one
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.field, self.num, self.den = field, ctx.constant(0), field._one
            return
        if not den.is_constant():
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
        lc = den.leading_coefficient()
        if lc != 1:
            num = num / lc
            den = den / lc
        self.field, self.num, self.den = field, num, den

    @classmethod
    def _raw(cls, field, num, den):
        obj = object.__new__(cls)
        obj.field, obj.num, obj.den = field, num, den
        return obj

    # -- coercion -----------------------------------------------------------
    def _co(self, other):
        if isinstance(other, RatFunc):
            if other.field is not self.field:
                raise StructureError(f"field mismatch: {self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den.is_one() and o.den.is_one():
            s = self.num + o.num
            return RatFunc._raw(self.field, s, self.den) if not s.is_zero() else self.field.zero()
        if self.den == o.den:
            return RatFunc(self.field, self.num + o.num, self.den)
        return RatFunc(self.field, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(self.field, -self.num, self.den)

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return self.field.zero()
        if self.den.is_one() and o.den.is_one():
            return RatFunc._raw(self.field, self.num * o.num, self.den)
        if o.den.is_one() and o.num.is_constant():
            return RatFunc._raw(self.field, self.num * o.num, self.den)
        if self.den.is_one() and self.num.is_constant():
            return RatFunc._raw(self.field, o.num * self.num, o.den)
        # cross cancellation keeps the operands small
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        n = (self.num / g1) * (o.num / g2)
        d = (self.den / g2) * (o.den / g1)
        lc = d.leading_coefficient()
        if lc != 1:
            n, d = n / lc, d / lc
        return RatFunc._raw(self.field, n, d)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.field, self.den, self.num)

    def __truediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc._raw(self.field, self.num**e, self.den**e)

    # -- predicates -----------------------------------------------------------
    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        if self.num.is_zero():
            return Fraction(0)
        return _fmpq_to_frac(self.num.leading_coefficient()) / _fmpq_to_frac(self.den.leading_coefficient())

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.field is other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.den.is_one() and self.num == self.field.ctx.constant(
                flint.fmpq(Fraction(other).numerator, Fraction(other).denominator))
        return NotImplemented

    def __hash__(self):
        return hash((self.field.names, tuple(self.num.to_dict().items()), tuple(self.den.to_dict().items())))

    # -- calculus and substitution ------------------------------------------------
    def derivative(self, var: str) -> "RatFunc":
        if var not in self.field.names:
            raise StructureError(f"unknown parameter {var!r} in {self.field}")
        if self.num.is_constant() and self.den.is_constant():
            return self.field.zero()
        dn = self.num.derivative(var)
        if self.den.is_constant():
            return RatFunc._raw(self.field, dn, self.den) if not dn.is_zero() else self.field.zero()
        dd = self.den.derivative(var)
        return RatFunc(self.field, dn * self.den - self.num * dd, self.den * self.den)

    def subs(self, values: Mapping[str, object], field: RatField | None = None) -> "RatFunc":
        """Substitute parameters by elements of ``field`` (default: own field).

        Parameters missing from ``values`` are mapped to the same-named
        generator of the target field.
        """
        target = field or self.field
        imgs = []
        for name in self.field.names:
            if name in values:
                imgs.append(target(values[name]))
            else:
                imgs.append(target.gen(name))
        return self._compose(imgs, target)

    def _compose(self, imgs: Sequence["RatFunc"], target: RatField) -> "RatFunc":
        if not self.field.names:
            return target(self.constant_value())
        # common denominator trick: evaluate num and den by Horner-free term sums
        return _eval_mpoly(self.num, imgs, target) / _eval_mpoly(self.den, imgs, target)

    def embed(self, field: RatField) -> "RatFunc":
        """Map into a field whose variable names contain ours."""
        missing = [n for n in self.field.names if n not in field.names]
        if missing:
            raise StructureError(f"cannot embed {self.field} into {field}: missing {missing}")
        return self._compose([field.gen(n) for n in self.field.names], field)

    def evaluate(self, values: Mapping[str, object]) -> Fraction:
        """Evaluate at rational values of all parameters."""
        r = self.subs(values, RatField(()))
        return r.constant_value()

    def free_names(self):
        used = set()
        for p in (self.num, self.den):
            for e in p.monoms():
                for i, k in enumerate(e):
                    if k:
                        used.add(self.field.names[i])
        return used

    def degree(self, var: str) -> Tuple[int, int]:
        i = self.field.names.index(var)
        return self.num.degrees()[i] if not self.num.is_zero() else -1, self.den.degrees()[i]

    def numer(self) -> "RatFunc":
        return RatFunc._raw(self.field, self.num, self.field._one)

    def denom(self) -> "RatFunc":
        return RatFunc._raw(self.field, self.den, self.field._one)

    def __repr__(self):
        n = str(self.num)
        if self.den.is_one():
            return n
        return f"({n})/({self.den})"

    __str__ = __repr__


def _eval_mpoly(p, imgs: Sequence[RatFunc], target: RatField) -> RatFunc:
    """Evaluate an fmpq_mpoly at rational-function arguments."""
    if p.is_zero():  # degrees() reports -1 for the zero polynomial
        return target.zero()
    if all(im.den.is_one() for im in imgs):
        r = p.compose(*[im.num for im in imgs], ctx=target.ctx)
        return RatFunc._raw(target, r, target._one)
    # clear denominators: p(n1/d1, ...) = P(n, d) / prod d_i^deg_i
    degs = p.degrees()
    num = target.ctx.constant(0)
    pw_n = [dict() for _ in imgs]
    pw_d = [dict() for _ in imgs]

    def power(cache, base, k):
        v = cache.get(k)
        if v is None:
            v = base**k
            cache[k] = v
        return v

    for e, c in p.terms():
        term = target.ctx.constant(c)
        for i, k in enumerate(e):
            if degs[i]:
                term = term * power(pw_n[i], imgs[i].num, k) * power(pw_d[i], imgs[i].den, degs[i] - k)
        num = num + term
    den = target._one
    for i, k in enumerate(degs):
        if k:
            den = den * imgs[i].den**k
    return RatFunc(target, num, den)


def ratfunc_derivative(f: RatFunc, var: str) -> RatFunc:
    """Quotient-rule derivative of ``f`` with respect to parameter ``var``."""
    return f.derivative(var)


# ---------------------------------------------------------------------------
# Sparse polynomials
# ---------------------------------------------------------------------------


def grevlex_key(e: Exp):
    """Sort key for graded reverse lexicographic order (larger is bigger)."""
    return (sum(e), tuple(-k for k in reversed(e)))


def _is_zero(c) -> bool:
    return not c


class Poly:
    """Sparse multivariate polynomial with exact coefficients.

    ``terms`` maps exponent tuples to nonzero coefficients.  Coefficients can be
    ``Fraction``, ``Zeta3`` or ``RatFunc``; mixing is allowed as long as Python
    arithmetic between them is defined.
    """

    __slots__ = ("vars", "terms", "_lt")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exp, object] | None = None):
        self.vars = tuple(variables)
        self._lt = None
        t = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                if len(e) != n:
                    raise StructureError(f"exponent {e} does not match variables {self.vars}")
                if isinstance(c, int):
                    c = Fraction(c)
                if not _is_zero(c):
                    t[tuple(e)] = c
        self.terms = t

    @classmethod
    def _mk(cls, variables, terms):
        obj = object.__new__(cls)
        obj.vars = variables
        obj.terms = terms
        obj._lt = None
        return obj

    # constructors
    @classmethod
    def zero(cls, variables):
        return cls._mk(tuple(variables), {})

    @classmethod
    def const(cls, variables, c):
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables, name, coeff=Fraction(1)):
        variables = tuple(variables)
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls(variables, {tuple(e): coeff})

    @classmethod
    def monomial(cls, variables, exp, coeff=Fraction(1)):
        return cls(tuple(variables), {tuple(exp): coeff})

    def _check(self, other: "Poly"):
        if self.vars != other.vars:
            raise StructureError(f"variable lists differ: {self.vars} vs {other.vars}")

    def _lift(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.const(self.vars, other)

    # arithmetic
    def __add__(self, other):
        o = self._lift(other)
        t = dict(self.terms)
        for e, c in o.terms.items():
            v = t.get(e)
            if v is None:
                t[e] = c
            else:
                v = v + c
                if _is_zero(v):
                    del t[e]
                else:
                    t[e] = v
        return Poly._mk(self.vars, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly._mk(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if isinstance(other, int):
                other = Fraction(other)
            if _is_zero(other):
                return Poly.zero(self.vars)
            return Poly._mk(self.vars, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        t: Dict[Exp, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e)
                t[e] = c1 * c2 if v is None else v + c1 * c2
        return Poly._mk(self.vars, {e: c for e, c in t.items() if not _is_zero(c)})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.const(self.vars, Fraction(1))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def scale(self, c):
        return self * c

    def mul_monomial(self, exp: Exp, c=None) -> "Poly":
        if c is None:
            return Poly._mk(self.vars, {tuple(a + b for a, b in zip(e, exp)): v for e, v in self.terms.items()})
        if _is_zero(c):
            return Poly.zero(self.vars)
        return Poly._mk(self.vars, {tuple(a + b for a, b in zip(e, exp)): v * c for e, v in self.terms.items()})

    # predicates / access
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.vars == other.vars and self.terms == other.terms
        if not self.terms:
            return _is_zero(other)
        return self == Poly.const(self.vars, other)

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def sorted_terms(self):
        """Terms in decreasing grevlex order."""
        return sorted(self.terms.items(), key=lambda ec: grevlex_key(ec[0]), reverse=True)

    def leading(self):
        """(exponent, coefficient) of the grevlex-leading term."""
        if self._lt is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            e = max(self.terms, key=grevlex_key)
            self._lt = (e, self.terms[e])
        return self._lt

    def lm(self) -> Exp:
        return self.leading()[0]

    def lc(self):
        return self.leading()[1]

    def coeff(self, exp: Exp):
        return self.terms.get(tuple(exp), Fraction(0))

    def map_coeffs(self, fn) -> "Poly":
        return Poly(self.vars, {e: fn(c) for e, c in self.terms.items()})

    def monic(self) -> "Poly":
        lc = self.lc()
        return self * (Fraction(1) / lc if isinstance(lc, (int, Fraction)) else lc.inverse())

    # calculus / substitution
    def diff(self, name: str) -> "Poly":
        if name not in self.vars:
            raise StructureError(f"unknown variable {name!r}; have {self.vars}")
        i = self.vars.index(name)
        t = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                f = list(e)
                f[i] = k - 1
                t[tuple(f)] = c * k
        return Poly._mk(self.vars, t)

    def diff_coeffs(self, param: str) -> "Poly":
        """Differentiate the RatFunc coefficients with respect to a parameter."""
        t = {}
        for e, c in self.terms.items():
            if isinstance(c, RatFunc):
                dc = c.derivative(param)
                if dc:
                    t[e] = dc
        return Poly._mk(self.vars, t)

    def subs(self, images: Mapping[str, "Poly"], variables: Sequence[str] | None = None) -> "Poly":
        """Substitute polynomials (over ``variables``) for our variables."""
        target = tuple(variables) if variables is not None else self.vars
        imgs = []
        for v in self.vars:
            if v in images:
                im = images[v]
                if not isinstance(im, Poly):
                    im = Poly.const(target, im)
                imgs.append(im)
            else:
                imgs.append(Poly.var(target, v))
        out = Poly.zero(target)
        cache = [dict() for _ in imgs]
        for e, c in self.terms.items():
            term = Poly.const(target, c)
            for i, k in enumerate(e):
                if k:
                    p = cache[i].get(k)
                    if p is None:
                        p = imgs[i] ** k
                        cache[i][k] = p
                    term = term * p
            out = out + term
        return out

    def change_vars(self, variables: Sequence[str]) -> "Poly":
        """Re-express over another variable list containing our used variables."""
        variables = tuple(variables)
        idx = []
        for v in variables:
            idx.append(self.vars.index(v) if v in self.vars else None)
        t = {}
        for e, c in self.terms.items():
            for i, k in enumerate(e):
                if k and self.vars[i] not in variables:
                    raise StructureError(f"variable {self.vars[i]} used but not in {variables}")
            t[tuple(e[j] if j is not None else 0 for j in idx)] = c
        return Poly._mk(variables, t)

    def evaluate(self, values: Mapping[str, object]):
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(self.vars, e):
                if k:
                    term = term * values[v] ** k
            total = total + term
        return total

    def coefficient_field(self):
        for c in self.terms.values():
            if isinstance(c, RatFunc):
                return c.field
        return None

    def to_field(self, field: RatField) -> "Poly":
        """Coerce all coefficients into ``field``."""
        return Poly._mk(self.vars, {e: field(c) if not isinstance(c, Zeta3) else c for e, c in self.terms.items()})

    def conj(self) -> "Poly":
        """Apply zeta3 -> zeta3^2 coefficientwise."""
        return Poly._mk(self.vars, {e: (c.conj() if isinstance(c, Zeta3) else c) for e, c in self.terms.items()})

    def scalar_field(self) -> str:
        if any(isinstance(c, Zeta3) and not c.is_rational() for c in self.terms.values()):
            return "QQ(zeta3)"
        f = self.coefficient_field()
        return "QQ" if f is None else repr(f)

    def __repr__(self):
        return poly_to_str(self)

    __str__ = __repr__


def _coeff_str(c) -> str:
    if isinstance(c, Fraction):
        return str(c)
    s = str(c)
    return s


def poly_to_str(p: Poly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        mon = "*".join(
            (v if k == 1 else f"{v}^{k}") for v, k in zip(p.vars, e) if k
        )
        cs = _coeff_str(c)
        if isinstance(c, RatFunc) and not c.is_constant():
            cs = f"({cs})"
        elif isinstance(c, Zeta3) and not c.is_rational():
            pass
        if mon:
            if cs == "1":
                parts.append(mon)
            elif cs == "-1":
                parts.append("-" + mon)
            else:
                if isinstance(c, Fraction) and c.denominator != 1:
                    cs = f"({cs})" if c < 0 else cs
                parts.append(f"{cs}*{mon}")
        else:
            parts.append(cs)
    s = " + ".join(parts)
    return s.replace("+ -", "- ")


def partial_derivative(p: Poly, var: str) -> Poly:
    """Formal partial derivative of ``p`` in the variable ``var``."""
    return p.diff(var)


def monomials_of_degree(n: int, d: int):
    """All exponent tuples of length n and total degree d (grevlex descending)."""
    if d < 0:
        return []
    out = []

    def rec(prefix, left, k):
        if k == n - 1:
            out.append(tuple(prefix + [left]))
            return
        for a in range(left, -1, -1):
            rec(prefix + [a], left - a, k + 1)

    if n == 0:
        return [()] if d == 0 else []
    rec([], d, 0)
    out.sort(key=grevlex_key, reverse=True)
    return out


# ---------------------------------------------------------------------------
# gcd over Q (FLINT)
# ---------------------------------------------------------------------------


def _to_flint(p: Poly):
    field = RatField(p.vars)
    d = {}
    for e, c in p.terms.items():
        if isinstance(c, RatFunc):
            c = c.constant_value()
        if isinstance(c, Zeta3):
            if not c.is_rational():
                raise StructureError("poly_gcd requires rational coefficients")
            c = c.u
        c = _frac(c)
        d[e] = flint.fmpq(c.numerator, c.denominator)
    return field, field.ctx.from_dict(d)


def _from_flint(vars_, q) -> Poly:
    return Poly(vars_, {tuple(e): _fmpq_to_frac(c) for e, c in q.terms()})


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd of two polynomials with rational coefficients.

    gcd(0, 0) = 0; otherwise the result is made monic in grevlex.
    """
    a._check(b)
    if a.is_zero() and b.is_zero():
        return Poly.zero(a.vars)
    _, fa = _to_flint(a)
    _, fb = _to_flint(b)
    g = _from_flint(a.vars, fa.gcd(fb))
    return g.monic()


def poly_divides(a: Poly, b: Poly) -> bool:
    """True iff a divides b over Q."""
    if a.is_zero():
        return b.is_zero()
    _, fa = _to_flint(a)
    _, fb = _to_flint(b)
    q, r = divmod(fb, fa)
    return r.is_zero()


def ratfunc_from_poly(p: Poly, field: RatField) -> RatFunc:
    """Interpret a Poly in parameter variables as an element of ``field``."""
    out = field.zero()
    for e, c in p.terms.items():
        term = field(c) if not isinstance(c, RatFunc) else c
        for v, k in zip(p.vars, e):
            if k:
                term = term * field.gen(v) ** k
        out = out + term
    return out


def ratfunc_to_poly(f: RatFunc) -> Poly:
    """Polynomial RatFunc -> Poly over the parameter names."""
    if not f.den.is_one():
        raise ValueError("not a polynomial")
    return _from_flint(f.field.names, f.num)


def cartesian_exponents(bounds: Sequence[int]):
    return _iproduct(*[range(b + 1) for b in bounds])
