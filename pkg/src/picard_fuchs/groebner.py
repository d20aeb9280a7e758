"""Groebner bases with cofactor tracking over Q or Q(parameters).

The implementation is a textbook Buchberger loop (normal selection strategy,
product and chain criteria) that carries, for every basis element, its
expression as a combination of the original generators.  Those cofactors are
what pole-order reduction consumes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .algebra import Exp, Poly, RatField, StructureError, grevlex_key

__all__ = [
    "Ideal",
    "GroebnerBasis",
    "buchberger",
    "normal_form",
    "membership_certificate",
    "naive_groebner",
    "s_polynomial",
]


def _divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


def _inv(c):
    if isinstance(c, Fraction):
        return 1 / c
    if isinstance(c, int):
        return Fraction(1, c)
    return c.inverse()


@dataclass
class Ideal:
    """An ideal of a polynomial ring in ``geometric_vars``.

    Coefficients are rationals or elements of ``field`` (a parameter field).
    """

    generators: List[Poly]
    geometric_vars: Tuple[str, ...]
    field: Optional[RatField] = None

    def __post_init__(self):
        self.geometric_vars = tuple(self.geometric_vars)
        if not self.generators:
            raise ValueError("an ideal needs at least one generator")
        gens = []
        for g in self.generators:
            if g.vars != self.geometric_vars:
                raise StructureError(f"generator over {g.vars}, expected {self.geometric_vars}")
            if g.is_zero():
                raise ValueError("zero generator rejected")
            gens.append(g.to_field(self.field) if self.field is not None else g)
        self.generators = gens

    @property
    def parameter_vars(self):
        return self.field.names if self.field is not None else ()

    def zero(self) -> Poly:
        return Poly.zero(self.geometric_vars)


@dataclass
class GroebnerBasis:
    """Reduced, monic Groebner basis with cofactors (basis_i = sum_j C[i][j] gen_j)."""

    ideal: Ideal
    basis: List[Poly]
    cofactors: List[List[Poly]]
    order: str = "grevlex"
    stats: dict = field(default_factory=dict)

    @property
    def leading_monomials(self) -> List[Exp]:
        return [g.lm() for g in self.basis]

    def is_unit_ideal(self) -> bool:
        return any(sum(m) == 0 for m in self.leading_monomials)

    def reduce(self, p: Poly):
        return normal_form(p, self)

    def standard_monomials(self, degree: int) -> List[Exp]:
        """Monomials of the given degree not divisible by any leading monomial."""
        from .algebra import monomials_of_degree

        lms = self.leading_monomials
        return [m for m in monomials_of_degree(len(self.ideal.geometric_vars), degree)
                if not any(_divides(l, m) for l in lms)]

    def check_cofactors(self) -> bool:
        gens = self.ideal.generators
        for g, row in zip(self.basis, self.cofactors):
            acc = Poly.zero(g.vars)
            for c, f in zip(row, gens):
                if c:
                    acc = acc + c * f
            if acc != g:
                return False
        return True

    def syzygies(self) -> List[List[Poly]]:
        """Generators of the syzygy module of the original generators.

        Built from the S-pair reductions of the basis (mapped through the
        cofactor matrix) and from the expressions of the generators in the basis.
        """
        gens = self.ideal.generators
        ng = len(gens)
        zero = Poly.zero(self.ideal.geometric_vars)
        out = []

        def to_gens(vec):
            res = [zero] * ng
            for l, s in enumerate(vec):
                if s:
                    for j in range(ng):
                        c = self.cofactors[l][j]
                        if c:
                            res[j] = res[j] + s * c
            return res

        B = self.basis
        for i in range(len(B)):
            for j in range(i + 1, len(B)):
                (ei, ci), (ej, cj) = B[i].leading(), B[j].leading()
                L = _lcm(ei, ej)
                mi, mj = _sub(L, ei), _sub(L, ej)
                s = B[i].mul_monomial(mi, _inv(ci)) - B[j].mul_monomial(mj, _inv(cj))
                r, qs = normal_form(s, self)
                if not r.is_zero():
                    raise RuntimeError("basis is not a Groebner basis")
                vec = [(-q) for q in qs]
                vec[i] = vec[i] + Poly.monomial(zero.vars, mi, _inv(ci))
                vec[j] = vec[j] - Poly.monomial(zero.vars, mj, _inv(cj))
                out.append(to_gens(vec))
        for k, f in enumerate(gens):
            r, qs = normal_form(f, self)
            vec = to_gens(qs)
            vec[k] = vec[k] - Poly.const(zero.vars, Fraction(1))
            if any(v for v in vec):
                out.append(vec)
        return [v for v in out if any(x for x in v)]


def s_polynomial(f: Poly, g: Poly) -> Poly:
    (ef, cf), (eg, cg) = f.leading(), g.leading()
    L = _lcm(ef, eg)
    return f.mul_monomial(_sub(L, ef), _inv(cf)) - g.mul_monomial(_sub(L, eg), _inv(cg))


def _reduce_with(p: Poly, basis: Sequence[Poly], chooser=None):
    """Full reduction of p by ``basis``; returns (remainder, quotients)."""
    vars_ = p.vars
    rem = {}
    work = dict(p.terms)
    quots = [dict() for _ in basis]
    lts = [b.leading() for b in basis]
    while work:
        e = max(work, key=grevlex_key)
        c = work[e]
        cands = [i for i, (lm, _) in enumerate(lts) if _divides(lm, e)]
        if not cands:
            rem[e] = c
            del work[e]
            continue
        i = cands[0] if chooser is None else chooser(cands)
        lm, lc = lts[i]
        m = _sub(e, lm)
        q = c / lc if not isinstance(lc, Fraction) or lc != 1 else c
        quots[i][m] = quots[i][m] + q if m in quots[i] else q
        for eb, cb in basis[i].terms.items():
            ee = tuple(a + b for a, b in zip(eb, m))
            v = work.get(ee)
            nv = -(q * cb) if v is None else v - q * cb
            if not nv:
                work.pop(ee, None)
            else:
                work[ee] = nv
        work.pop(e, None)
    return Poly(vars_, rem), [Poly(vars_, q) for q in quots]


def normal_form(p: Poly, gb: GroebnerBasis, chooser=None):
    """(remainder, quotients) with p = sum q_i basis_i + remainder."""
    return _reduce_with(p, gb.basis, chooser)


def buchberger(ideal: Ideal) -> GroebnerBasis:
    """Reduced Groebner basis (grevlex) with cofactor matrix."""
    gens = ideal.generators
    ng = len(gens)
    vars_ = ideal.geometric_vars
    zero = Poly.zero(vars_)
    one = Poly.const(vars_, Fraction(1))

    G: List[Poly] = []
    C: List[List[Poly]] = []

    def unit_vec(k):
        return [one if j == k else zero for j in range(ng)]

    def add_row(rows, qs):
        acc = [zero] * ng
        for q, row in zip(qs, rows):
            if q:
                for j in range(ng):
                    if row[j]:
                        acc[j] = acc[j] + q * row[j]
        return acc

    pairs: List[Tuple[int, int]] = []
    n_reductions = 0

    def insert(h: Poly, hc: List[Poly]):
        # make monic
        inv = _inv(h.lc())
        h = h * inv
        hc = [c * inv for c in hc]
        G.append(h)
        C.append(hc)
        k = len(G) - 1
        for i in range(k):
            pairs.append((i, k))

    # initial: reduce generators against each other progressively
    for k, f in enumerate(gens):
        r, qs = _reduce_with(f, G)
        if r.is_zero():
            continue
        rc = [a - b for a, b in zip(unit_vec(k), add_row(C, qs))]
        insert(r, rc)

    def pair_key(p):
        i, j = p
        L = _lcm(G[i].lm(), G[j].lm())
        return (sum(L), grevlex_key(L), j, i)

    removed = set()
    while pairs:
        pairs.sort(key=pair_key)
        i, j = pairs.pop(0)
        if i in removed or j in removed:
            continue
        ei, ej = G[i].lm(), G[j].lm()
        L = _lcm(ei, ej)
        # product criterion
        if all(a == 0 or b == 0 for a, b in zip(ei, ej)):
            continue
        # chain criterion
        skip = False
        for k in range(len(G)):
            if k in (i, j) or k in removed:
                continue
            if _divides(G[k].lm(), L):
                a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
                if a not in pairs and b not in pairs:
                    skip = True
                    break
        if skip:
            continue
        ci, cj = G[i].lc(), G[j].lc()
        mi, mj = _sub(L, ei), _sub(L, ej)
        s = G[i].mul_monomial(mi, _inv(ci)) - G[j].mul_monomial(mj, _inv(cj))
        scof = [a.mul_monomial(mi, _inv(ci)) - b.mul_monomial(mj, _inv(cj)) for a, b in zip(C[i], C[j])]
        active = [k for k in range(len(G)) if k not in removed]
        r, qs = _reduce_with(s, [G[k] for k in active])
        n_reductions += 1
        if r.is_zero():
            continue
        rc = [a - b for a, b in zip(scof, add_row([C[k] for k in active], qs))]
        insert(r, rc)

    # minimalize
    idx = [k for k in range(len(G)) if k not in removed]
    keep = []
    for k in idx:
        lm = G[k].lm()
        dominated = False
        for l in idx:
            if l == k:
                continue
            lml = G[l].lm()
            if _divides(lml, lm) and (lml != lm or l < k):
                dominated = True
                break
        if not dominated:
            keep.append(k)
    B = [G[k] for k in keep]
    BC = [C[k] for k in keep]
    # inter-reduce tails
    for t in range(len(B)):
        others = B[:t] + B[t + 1:]
        ocof = BC[:t] + BC[t + 1:]
        lead = Poly(vars_, {B[t].lm(): B[t].lc()})
        tail = B[t] - lead
        r, qs = _reduce_with(tail, others)
        B[t] = lead + r
        BC[t] = [a - b for a, b in zip(BC[t], add_row(ocof, qs))]
    order = sorted(range(len(B)), key=lambda k: grevlex_key(B[k].lm()))
    B = [B[k] for k in order]
    BC = [BC[k] for k in order]
    return GroebnerBasis(ideal, B, BC, stats={"s_pair_reductions": n_reductions})


def membership_certificate(p: Poly, ideal_or_gb) -> Optional[List[Poly]]:
    """Cofactors A with p = sum A_i gen_i, or None when p is not in the ideal."""
    gb = ideal_or_gb if isinstance(ideal_or_gb, GroebnerBasis) else buchberger(ideal_or_gb)
    r, qs = normal_form(p, gb)
    if not r.is_zero():
        return None
    zero = Poly.zero(p.vars)
    out = [zero] * len(gb.ideal.generators)
    for q, row in zip(qs, gb.cofactors):
        if q:
            for j, c in enumerate(row):
                if c:
                    out[j] = out[j] + q * c
    return out


def naive_groebner(gens: Sequence[Poly]) -> List[Poly]:
    """Reference Buchberger without criteria: saturate S-pairs, then reduce.

    Used as an independent oracle in tests.
    """
    G = [g * _inv(g.lc()) for g in gens if not g.is_zero()]
    changed = True
    while changed:
        changed = False
        n = len(G)
        for i in range(n):
            for j in range(i + 1, n):
                r, _ = _reduce_with(s_polynomial(G[i], G[j]), G)
                if not r.is_zero():
                    G.append(r * _inv(r.lc()))
                    changed = True
    # minimalize: drop g if another element's leading monomial divides lm(g),
    # keeping the first of several elements with the same leading monomial
    out: List[Poly] = []
    for i, g in enumerate(G):
        if any(_divides(h.lm(), g.lm()) and (h.lm() != g.lm() or j < i) for j, h in enumerate(G) if j != i):
            continue
        out.append(g)
    red = []
    for t, g in enumerate(out):
        others = out[:t] + out[t + 1:]
        lead = Poly(g.vars, {g.lm(): g.lc()})
        r, _ = _reduce_with(g - lead, others)
        red.append(lead + r)
    red.sort(key=lambda g: grevlex_key(g.lm()))
    return red


def random_chooser(rng: random.Random):
    return lambda cands: rng.choice(cands)
