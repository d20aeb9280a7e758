"""Linear differential operators with rational-function coefficients.

A :class:`DiffOp` is a finite sum  sum_alpha c_alpha(p) d^alpha  in the partial
derivations d/dp_i of a parameter field.  Products are normal ordered (all
derivations to the right).  The module also provides the chain rule for a
rational change of parameters, the parity rewrite u = b^2 for operators that
are even in b, and restriction of a holonomic system to a rational curve.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _iproduct
from math import comb
from typing import Dict, List, Mapping, Sequence, Tuple

import flint

from .algebra import RatField, RatFunc, StructureError
from .linalg import Echelon, bareiss_nullspace

MultiIndex = Tuple[int, ...]


def _add_idx(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub_idx(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _leq(a, b):
    return all(x <= y for x, y in zip(a, b))


def _sub_indices(a):
    return _iproduct(*[range(k + 1) for k in a])


def graded_key(a: MultiIndex):
    """Order on multi-indices: total order first, then reverse-lexicographic."""
    return (sum(a), tuple(a))


class DiffOp:
    """sum c_alpha d^alpha over the field ``field``."""

    __slots__ = ("field", "terms")

    def __init__(self, field: RatField, terms: Mapping[MultiIndex, object] | None = None):
        self.field = field
        t = {}
        for a, c in (terms or {}).items():
            c = field(c)
            if c:
                t[tuple(a)] = c
        self.terms = t

    # constructors
    @classmethod
    def identity(cls, field):
        return cls(field, {(0,) * field.nvars: 1})

    @classmethod
    def d(cls, field, name: str, k: int = 1):
        a = [0] * field.nvars
        a[field.names.index(name)] = k
        return cls(field, {tuple(a): 1})

    @classmethod
    def mult(cls, field, f):
        return cls(field, {(0,) * field.nvars: f})

    @property
    def order(self) -> int:
        return max((sum(a) for a in self.terms), default=-1)

    def is_zero(self):
        return not self.terms

    def coeff(self, a) -> RatFunc:
        return self.terms.get(tuple(a), self.field.zero())

    def __add__(self, other: "DiffOp"):
        t = dict(self.terms)
        for a, c in other.terms.items():
            v = t.get(a)
            nv = c if v is None else v + c
            if nv:
                t[a] = nv
            else:
                t.pop(a, None)
        out = DiffOp(self.field)
        out.terms = t
        return out

    def __neg__(self):
        out = DiffOp(self.field)
        out.terms = {a: -c for a, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f) -> "DiffOp":
        f = self.field(f)
        out = DiffOp(self.field)
        out.terms = {a: c * f for a, c in self.terms.items() if c * f}
        return out

    def _dcoeff(self, c: RatFunc, gamma) -> RatFunc:
        for i, k in enumerate(gamma):
            for _ in range(k):
                c = c.derivative(self.field.names[i])
        return c

    def __mul__(self, other: "DiffOp") -> "DiffOp":
        """Composition self o other, normal ordered."""
        if not isinstance(other, DiffOp):
            return self.scale(other)
        if other.field is not self.field:
            raise StructureError("operator fields differ")
        t: Dict[MultiIndex, RatFunc] = {}
        for a, f in self.terms.items():
            for b, g in other.terms.items():
                for gamma in _sub_indices(a):
                    mult = 1
                    for ai, gi in zip(a, gamma):
                        mult *= comb(ai, gi)
                    dg = self._dcoeff(g, gamma)
                    if not dg:
                        continue
                    idx = _add_idx(_sub_idx(a, gamma), b)
                    val = f * dg * mult
                    v = t.get(idx)
                    t[idx] = val if v is None else v + val
        out = DiffOp(self.field)
        out.terms = {a: c for a, c in t.items() if c}
        return out

    def apply(self, F: RatFunc) -> RatFunc:
        """Apply the operator to a rational function."""
        acc = self.field.zero()
        for a, c in self.terms.items():
            acc = acc + c * self._dcoeff(F, a)
        return acc

    def monic(self, lead: MultiIndex | None = None) -> "DiffOp":
        """Divide by the coefficient of the highest multi-index (or ``lead``)."""
        if lead is None:
            lead = max(self.terms, key=graded_key)
        return self.scale(self.terms[lead].inverse())

    def normalized(self) -> "DiffOp":
        """Clear denominators, strip content, positive leading integer coefficient."""
        from .linalg import clear_denominators

        keys = sorted(self.terms, key=graded_key)
        vals = clear_denominators([self.terms[k] for k in keys])
        return DiffOp(self.field, dict(zip(keys, vals)))

    def __eq__(self, other):
        return isinstance(other, DiffOp) and self.field is other.field and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms)))

    def substitute_coeffs(self, values: Mapping[str, object], field: RatField) -> Dict[MultiIndex, RatFunc]:
        return {a: c.subs(values, field) for a, c in self.terms.items()}

    def __repr__(self):
        parts = []
        for a in sorted(self.terms, key=graded_key, reverse=True):
            c = self.terms[a]
            d = "*".join(
                (f"D{n}" if k == 1 else f"D{n}^{k}") for n, k in zip(self.field.names, a) if k
            )
            parts.append(f"({c})" + (f"*{d}" if d else ""))
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# change of parameters
# ---------------------------------------------------------------------------


def _invert_matrix(M: List[List[RatFunc]], field: RatField) -> List[List[RatFunc]]:
    n = len(M)
    A = [list(row) + [field.one() if i == j else field.zero() for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            raise ValueError("substitution is not invertible (Jacobian determinant vanishes)")
        A[c], A[p] = A[p], A[c]
        inv = A[c][c].inverse()
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def chain_rule(op: DiffOp, substitution: Mapping[str, RatFunc], new_field: RatField) -> DiffOp:
    """Rewrite ``op`` (in the old parameters) in the new parameters.

    ``substitution`` gives every old parameter as a rational function of the
    new ones.  The old derivations are expressed through the inverse Jacobian.
    """
    old = op.field
    if set(substitution) != set(old.names):
        raise StructureError(f"substitution must define {old.names}")
    if new_field.nvars != old.nvars:
        raise StructureError("change of parameters must preserve the number of parameters")
    # J[i][j] = d p_j / d q_i
    J = [[substitution[p].derivative(q) for p in old.names] for q in new_field.names]
    Jinv = _invert_matrix(J, new_field)  # d_p_j = sum_i Jinv[j][i] d_q_i
    d_old = []
    for j in range(old.nvars):
        terms = {}
        for i, q in enumerate(new_field.names):
            c = Jinv[j][i]
            if c:
                a = [0] * new_field.nvars
                a[i] = 1
                terms[tuple(a)] = c
        d_old.append(DiffOp(new_field, terms))
    cache: Dict[MultiIndex, DiffOp] = {(0,) * old.nvars: DiffOp.identity(new_field)}

    def power(a):
        if a in cache:
            return cache[a]
        j = next(i for i, k in enumerate(a) if k)
        prev = list(a)
        prev[j] -= 1
        res = d_old[j] * power(tuple(prev))
        cache[a] = res
        return res

    out = DiffOp(new_field)
    for a, c in op.terms.items():
        cn = c.subs(substitution, new_field)
        out = out + DiffOp.mult(new_field, cn) * power(a)
    return out


def split_parity(c: RatFunc, var: str, new_field: RatField, new_var: str):
    """Write c(var, ...) = A + var*B with A, B rational in new_var = var^2.

    Returns (A, B) as elements of ``new_field``.
    """
    f = c.field
    ctx = f.ctx
    i = f.names.index(var)
    gens = list(ctx.gens())
    flip = [(-g if k == i else g) for k, g in enumerate(gens)]
    conj_den = c.den.compose(*flip)
    num = c.num * conj_den
    den = c.den * conj_den

    def even_odd(p):
        ev, od = {}, {}
        for e, q in p.terms():
            (ev if e[i] % 2 == 0 else od)[e] = q
        return ev, od

    def to_new(d, shift):
        res = {}
        for e, q in d.items():
            e2 = []
            for k, name in enumerate(f.names):
                if k == i:
                    continue
                e2.append((name, e[k]))
            ne = [0] * new_field.nvars
            for name, k in e2:
                ne[new_field.names.index(name)] = k
            ne[new_field.names.index(new_var)] = (e[i] - shift) // 2
            res[tuple(ne)] = res.get(tuple(ne), 0) + q
        return RatFunc(new_field, new_field.ctx.from_dict(res)) if res else new_field.zero()

    dev, dod = even_odd(den)
    if dod:
        raise ArithmeticError("denominator norm is not even; parity split failed")
    D = to_new(dev, 0)
    nev, nod = even_odd(num)
    return to_new(nev, 0) / D, to_new(nod, 1) / D


def even_rewrite(op: DiffOp, var: str, new_var: str, new_field: RatField) -> DiffOp:
    """Rewrite an operator that is even or odd in ``var`` in terms of new_var = var^2.

    Uses d_var = 2 var d_new.  Powers satisfy d_var^k = var^(k mod 2) P_k with
    P_{k+1} = 2 d_new P_k (k even) and P_{k+1} = P_k + 2 new d_new P_k (k odd).
    An odd operator is divided by ``var``.
    """
    f = op.field
    i = f.names.index(var)
    others = [n for n in f.names if n != var]
    if sorted(others + [new_var]) != sorted(new_field.names):
        raise StructureError("new field must replace the variable by its square")
    j = new_field.names.index(new_var)
    dnew = DiffOp.d(new_field, new_var)
    u = new_field.gen(new_var)
    P = [DiffOp.identity(new_field)]
    maxk = max((a[i] for a in op.terms), default=0)
    for k in range(maxk):
        if k % 2 == 0:
            P.append((dnew * P[k]).scale(2))
        else:
            P.append(P[k] + (dnew * P[k]).scale(2 * u))
    even_part = DiffOp(new_field)
    odd_part = DiffOp(new_field)
    for a, c in op.terms.items():
        A, B = split_parity(c, var, new_field, new_var)
        k = a[i]
        rest = [0] * new_field.nvars
        for n, m in zip(f.names, a):
            if n != var:
                rest[new_field.names.index(n)] = m
        base = P[k] * DiffOp(new_field, {tuple(rest): 1})
        if k % 2 == 0:
            # c * P_k = A P_k + var B P_k
            even_part = even_part + base.scale(A)
            odd_part = odd_part + base.scale(B)
        else:
            # c * var * P_k = var A P_k + u B P_k
            even_part = even_part + base.scale(B * u)
            odd_part = odd_part + base.scale(A)
    if even_part.is_zero():
        return odd_part
    if odd_part.is_zero():
        return even_part
    raise ArithmeticError(f"operator is not of pure parity in {var}")


# ---------------------------------------------------------------------------
# holonomic systems and restriction to curves
# ---------------------------------------------------------------------------


def prolong(ops: Sequence[DiffOp], max_order: int) -> List[DiffOp]:
    """All d^beta L with order(d^beta L) <= max_order."""
    out = []
    if not ops:
        return out
    field = ops[0].field
    n = field.nvars
    for L in ops:
        room = max_order - L.order
        for tot in range(room + 1):
            for beta in _compositions(tot, n):
                out.append(DiffOp(field, {beta: 1}) * L)
    return out


def _compositions(total, n):
    if n == 1:
        yield (total,)
        return
    for k in range(total, -1, -1):
        for rest in _compositions(total - k, n - 1):
            yield (k,) + rest


def multi_indices(n: int, max_order: int):
    out = []
    for tot in range(max_order + 1):
        out.extend(_compositions(tot, n))
    return out


def holonomic_rank(ops: Sequence[DiffOp], order: int) -> int:
    """Dimension of the span of partials of order <= ``order`` modulo the prolonged system."""
    field = ops[0].field
    idx = multi_indices(field.nvars, order + 1)
    ech = Echelon(key=graded_key)
    for L in prolong(ops, order + 1):
        ech.add(dict(L.terms))
    return sum(1 for a in idx if sum(a) <= order and a not in ech.rows)


def restrict_to_curve(ops: Sequence[DiffOp], curve: Mapping[str, RatFunc], tfield: RatField,
                      max_order: int = 4):
    """Minimal ODE in t satisfied by F(p(t)) for every solution F of the system.

    Returns the coefficient list [c_0, ..., c_m] over ``tfield`` (c_m = 1).
    """
    if not ops:
        raise ValueError("empty system")
    pfield = ops[0].field
    t = tfield.names[0]
    n = pfield.nvars
    N = max_order + 1
    rels = prolong(ops, N)
    ech = Echelon(key=graded_key)
    for L in rels:
        ech.add({a: c.subs(curve, tfield) for a, c in L.terms.items()})
    derivs = [curve[name].derivative(t) for name in pfield.names]
    cur = {(0,) * n: tfield.one()}
    vecs = []
    for m in range(max_order + 1):
        vecs.append(ech.reduce(cur))
        # dependency test among vecs
        deps = _dependency(vecs, tfield)
        if deps is not None:
            return deps
        nxt: Dict[MultiIndex, RatFunc] = {}
        for a, c in cur.items():
            dc = c.derivative(t)
            if dc:
                nxt[a] = nxt.get(a, tfield.zero()) + dc
            for i in range(n):
                if derivs[i]:
                    b = list(a)
                    b[i] += 1
                    b = tuple(b)
                    nxt[b] = nxt.get(b, tfield.zero()) + c * derivs[i]
        cur = {a: c for a, c in nxt.items() if c}
    return None


def _dependency(vecs, field):
    """If the last vector depends on the previous ones, return the monic relation."""
    keys = sorted({k for v in vecs for k in v}, key=graded_key)
    if not keys:
        # the zero vector: first vector itself vanishes
        return [field.one()] if len(vecs) == 1 else None
    rows = [[v.get(k, field.zero()) for v in vecs] for k in keys]
    ns = bareiss_nullspace(rows, field)
    if not ns:
        return None
    sol = ns[0]
    top = sol[-1]
    if not top:
        # earlier dependency should have been caught
        return None
    inv = top.inverse()
    return [c * inv for c in sol]
