"""Griffiths-Dwork reduction for projective hypersurfaces.

A rational form P*Omega0/Q^k is stored as its numerator and pole order.  Pole
order is lowered with the identity

    (sum_i A_i dQ/dx_i) / Q^(k+1)  ==  (1/k) (sum_i dA_i/dx_i) / Q^k

modulo exact forms.  The cofactors A_i come from a Groebner basis of the
Jacobian ideal.  For singular hypersurfaces (the Inose quartic has ADE
singularities) the choice of cofactors is not unique: two choices differ by a
syzygy, and the divergence of every syzygy is itself a relation in
cohomology.  Those relations are generated lazily from Schreyer syzygies and
kept in an echelon structure, which yields canonical coordinates for classes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import Exp, Poly, RatField, RatFunc, StructureError, grevlex_key, monomials_of_degree
from .groebner import GroebnerBasis, Ideal, buchberger, normal_form
from .linalg import Echelon, bareiss_nullspace, clear_denominators
from .operators import DiffOp, graded_key

log = logging.getLogger(__name__)

__all__ = [
    "GDConfig",
    "Hypersurface",
    "FormClass",
    "ReductionStep",
    "Cohomology",
    "PicardFuchsODE",
    "PicardFuchsSystem",
    "StuckReduction",
    "OrderBoundExceeded",
    "reduce_pole_order",
    "diff_under_integral",
    "picard_fuchs_ode",
    "picard_fuchs_system",
    "change_parameters",
    "order_drop_report",
]


class StuckReduction(RuntimeError):
    """Pole order cannot be lowered further; carries the residual monomials."""

    def __init__(self, msg, residual=None):
        super().__init__(msg)
        self.residual = residual


class OrderBoundExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class GDConfig:
    max_order: int = 4
    # "lazy": stop generating relations at a level once its classes are all
    # eliminated; "complete": use every syzygy of the needed degree.
    relation_mode: str = "lazy"
    check_steps: bool = False


class Hypersurface:
    """A hypersurface Q = 0 in projective space with coefficients in a parameter field."""

    def __init__(self, Q: Poly, field: RatField):
        if not Q.is_homogeneous():
            raise StructureError("defining polynomial must be homogeneous")
        self.Q = Q.to_field(field)
        self.field = field
        self.vars = Q.vars
        self.n1 = len(Q.vars)
        self.degree = Q.total_degree()
        self.jacobian = [self.Q.diff(v) for v in self.vars]

    def numerator_degree(self, k: int) -> int:
        return k * self.degree - self.n1

    def d_param(self, name: str) -> Poly:
        return self.Q.diff_coeffs(name)

    def __repr__(self):
        return f"Hypersurface({self.Q}) over {self.field}"


@dataclass
class FormClass:
    """The class of numerator*Omega0/Q^pole_order."""

    numerator: Poly
    pole_order: int
    ambient: Hypersurface

    def __post_init__(self):
        if self.pole_order < 1:
            raise StructureError("pole order must be positive")
        if self.numerator and (not self.numerator.is_homogeneous() or
                               self.numerator.total_degree() != self.ambient.numerator_degree(self.pole_order)):
            raise StructureError(
                f"numerator degree {self.numerator.total_degree()} violates homogeneity: expected "
                f"{self.ambient.numerator_degree(self.pole_order)} at pole order {self.pole_order}")

    def as_sum(self) -> Dict[int, Poly]:
        return {self.pole_order: self.numerator}


@dataclass
class ReductionStep:
    input: FormClass
    remainder: Poly  # kept at the input pole order
    cofactors: List[Poly]
    output: Optional[FormClass]  # at pole order k (input order k+1)

    def check(self) -> bool:
        """k * (ideal part) == k * sum A_i dQ/dx_i, as a polynomial identity."""
        amb = self.input.ambient
        ideal_part = self.input.numerator - self.remainder
        acc = Poly.zero(amb.vars)
        for A, J in zip(self.cofactors, amb.jacobian):
            if A:
                acc = acc + A * J
        return acc == ideal_part


def _divergence(vec: Sequence[Poly], variables) -> Poly:
    acc = Poly.zero(variables)
    for A, v in zip(vec, variables):
        if A:
            acc = acc + A.diff(v)
    return acc


class Cohomology:
    """Canonical reduction of rational forms on a fixed hypersurface."""

    def __init__(self, hyper: Hypersurface, config: GDConfig = GDConfig()):
        self.hyper = hyper
        self.config = config
        self.ideal = Ideal(hyper.jacobian, hyper.vars, hyper.field)
        self.gb: GroebnerBasis = buchberger(self.ideal)
        if self.gb.is_unit_ideal():
            log.info("Jacobian ideal is the unit ideal")
        self._syz = None
        self.relations = Echelon(key=lambda c: (c[0], grevlex_key(c[1])))
        self._level_done: Dict[int, bool] = {}
        self._std: Dict[int, List[Exp]] = {}
        self.steps_taken = 0

    # -- elementary steps ---------------------------------------------------
    def standard_monomials(self, k: int) -> List[Exp]:
        if k not in self._std:
            self._std[k] = self.gb.standard_monomials(self.hyper.numerator_degree(k))
        return self._std[k]

    def cofactors(self, quotients: Sequence[Poly]) -> List[Poly]:
        zero = Poly.zero(self.hyper.vars)
        A = [zero] * len(self.hyper.jacobian)
        for q, row in zip(quotients, self.gb.cofactors):
            if q:
                for j, c in enumerate(row):
                    if c:
                        A[j] = A[j] + q * c
        return A

    def reduction_step(self, form: FormClass) -> ReductionStep:
        k1 = form.pole_order
        rem, qs = normal_form(form.numerator, self.gb)
        A = self.cofactors(qs)
        if k1 == 1:
            if any(A_i for A_i in A):
                raise StuckReduction("Jacobian-ideal component at pole order 1 cannot be reduced",
                                     residual=form.numerator - rem)
            return ReductionStep(form, rem, A, None)
        div = _divergence(A, self.hyper.vars) * Fraction(1, k1 - 1)
        out = FormClass(div, k1 - 1, self.hyper)
        step = ReductionStep(form, rem, A, out)
        if self.config.check_steps and not step.check():
            raise AssertionError("reduction step failed its cofactor identity")
        self.steps_taken += 1
        return step

    def reduce_sum(self, forms: Mapping[int, Poly]) -> Dict[int, Poly]:
        """Reduce a sum of forms to standard-monomial remainders at each level."""
        work = {k: p for k, p in forms.items() if p}
        out: Dict[int, Poly] = {}
        while work:
            k = max(work)
            P = work.pop(k)
            step = self.reduction_step(FormClass(P, k, self.hyper))
            if step.remainder:
                out[k] = step.remainder
            if step.output is not None and step.output.numerator:
                lower = work.get(k - 1)
                work[k - 1] = step.output.numerator if lower is None else lower + step.output.numerator
                if not work[k - 1]:
                    del work[k - 1]
        return out

    # -- relations from syzygies ---------------------------------------------
    def syzygies(self):
        if self._syz is None:
            syz = self.gb.syzygies()
            syz.sort(key=lambda v: max(p.total_degree() for p in v))
            self._syz = syz
        return self._syz

    def _syzygy_degree(self, vec) -> int:
        # degree of the cofactor components (all generators share a degree)
        return max(p.total_degree() for p in vec)

    def ensure_relations(self, k: int):
        """Generate the cohomology relations living at pole order <= k coming
        from syzygies at pole order k+1."""
        if self._level_done.get(k):
            return
        D = self.hyper.numerator_degree(k + 1) - (self.hyper.degree - 1)
        nstd = len(self.standard_monomials(k))
        lazy = self.config.relation_mode == "lazy"
        vars_ = self.hyper.vars
        count = 0
        for tot in range(0, D + 1):
            for S in self.syzygies():
                if self._syzygy_degree(S) + tot != D:
                    continue
                for m in monomials_of_degree(len(vars_), tot):
                    if lazy and self._full(k, nstd):
                        self._level_done[k] = True
                        return
                    vec = [s.mul_monomial(m) if s else s for s in S]
                    div = _divergence(vec, vars_)
                    if not div:
                        continue
                    red = self.reduce_sum({k: div})
                    self.relations.add(self._coords(red))
                    count += 1
        log.debug("level %d: %d syzygy relations processed, %d relations total", k, count, len(self.relations))
        self._level_done[k] = True

    def _full(self, k, nstd):
        piv = sum(1 for c in self.relations.rows if c[0] == k)
        return piv >= nstd

    @staticmethod
    def _coords(red: Mapping[int, Poly]):
        v = {}
        for k, P in red.items():
            for e, c in P.terms.items():
                v[(k, e)] = c
        return v

    def canonical(self, forms: Mapping[int, Poly]) -> Dict[Tuple[int, Exp], RatFunc]:
        """Canonical coordinates of a sum of forms modulo all relations."""
        red = self.reduce_sum(forms)
        v = self._coords(red)
        while True:
            levels = sorted({c[0] for c in v}, reverse=True)
            todo = [k for k in levels if not self._level_done.get(k)]
            if not todo:
                break
            self.ensure_relations(todo[0])
            v = self.relations.reduce(v)
        return self.relations.reduce(v)

    def quotient_dimension(self, max_level: int) -> int:
        for k in range(max_level, 0, -1):
            self.ensure_relations(k)
        total = sum(len(self.standard_monomials(k)) for k in range(1, max_level + 1))
        piv = sum(1 for c in self.relations.rows if c[0] <= max_level)
        return total - piv

    # -- differentiation ----------------------------------------------------
    def diff_sum(self, forms: Mapping[int, Poly], var: str) -> Dict[int, Poly]:
        out: Dict[int, Poly] = {}
        Qv = self.hyper.d_param(var)
        for k, P in forms.items():
            dP = P.diff_coeffs(var)
            if dP:
                out[k] = out[k] + dP if k in out else dP
            if Qv:
                t = P * Qv * (-k)
                out[k + 1] = out[k + 1] + t if k + 1 in out else t
        return {k: p for k, p in out.items() if p}

    def to_forms(self, coords: Mapping[Tuple[int, Exp], RatFunc]) -> Dict[int, Poly]:
        out: Dict[int, Dict] = {}
        for (k, e), c in coords.items():
            out.setdefault(k, {})[e] = c
        return {k: Poly(self.hyper.vars, t) for k, t in out.items()}


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def reduce_pole_order(form: FormClass, coh: Cohomology | None = None) -> ReductionStep:
    """One Griffiths-Dwork step from pole order k+1 to k."""
    if form.pole_order < 2:
        raise StructureError("pole order must be at least 2 to reduce")
    coh = coh or Cohomology(form.ambient)
    return coh.reduction_step(form)


def diff_under_integral(form: FormClass, var: str) -> FormClass:
    """d/dvar of P/Q^k as one form at pole order k+1: (Q dP - k P dQ)/Q^(k+1)."""
    amb = form.ambient
    if var not in amb.field.names:
        raise StructureError(f"{var!r} is not a parameter of {amb}")
    k = form.pole_order
    P = form.numerator
    num = amb.Q * P.diff_coeffs(var) - P * amb.d_param(var) * k
    return FormClass(num, k + 1, amb)


@dataclass
class PicardFuchsODE:
    """sum_i coefficients[i] * f^(i) = 0 in the variable indep_var."""

    indep_var: str
    coefficients: List[RatFunc]
    normalized: bool = False

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @property
    def field(self) -> RatField:
        return self.coefficients[0].field

    def monic(self) -> "PicardFuchsODE":
        inv = self.coefficients[-1].inverse()
        return PicardFuchsODE(self.indep_var, [c * inv for c in self.coefficients], False)

    def normalize(self) -> "PicardFuchsODE":
        """Polynomial coefficients, content removed, positive leading integer coefficient."""
        vals = clear_denominators(self.coefficients)
        return PicardFuchsODE(self.indep_var, vals, True)

    def proportional_to(self, other: "PicardFuchsODE") -> bool:
        if self.order != other.order:
            return False
        a, b = self.monic(), other.monic()
        return all(x == y for x, y in zip(a.coefficients, b.coefficients))

    def leading_coefficient(self) -> RatFunc:
        return self.coefficients[-1]

    def as_operator(self) -> DiffOp:
        return DiffOp(self.field, {(i,): c for i, c in enumerate(self.coefficients)})

    def __repr__(self):
        return " + ".join(f"({c})*f^({i})" for i, c in reversed(list(enumerate(self.coefficients))))


def _dependency_from_vectors(vecs, field: RatField):
    keys = sorted({k for v in vecs for k in v}, key=lambda c: (c[0], grevlex_key(c[1])))
    if not keys:
        return [field.one()]
    rows = [[v.get(k, field.zero()) for v in vecs] for k in keys]
    ns = bareiss_nullspace(rows, field)
    if not ns:
        return None
    sol = ns[0]
    if not sol[-1]:
        return None
    return sol


def picard_fuchs_ode(Q: Poly, field: RatField, var: str | None = None, max_order: int | None = None,
                     config: GDConfig = GDConfig()) -> PicardFuchsODE:
    """Minimal linear ODE in ``var`` annihilating the period of Omega0/Q."""
    var = var or field.names[0]
    if max_order is None:
        max_order = 2 if Q.total_degree() == 3 else config.max_order
    coh = Cohomology(Hypersurface(Q, field), config)
    cur = {1: Poly.const(Q.vars, field.one())}
    vecs = []
    for m in range(max_order + 1):
        v = coh.canonical(cur)
        vecs.append(v)
        dep = _dependency_from_vectors(vecs, field)
        if dep is not None:
            return PicardFuchsODE(var, dep).normalize()
        cur = coh.diff_sum(coh.to_forms(v), var)
    raise OrderBoundExceeded(f"no linear relation among the first {max_order} derivatives")


@dataclass
class PicardFuchsSystem:
    params: Tuple[str, ...]
    equations: List[DiffOp]
    field: RatField

    def contains(self, op: DiffOp) -> bool:
        """True iff ``op`` lies in the span (over the parameter field) of the equations."""
        ech = Echelon(key=graded_key)
        for L in self.equations:
            ech.add(dict(L.terms))
        return ech.contains(dict(op.terms))

    def same_span(self, ops: Sequence[DiffOp]) -> bool:
        ech = Echelon(key=graded_key)
        for L in ops:
            ech.add(dict(L.terms))
        if len(ech) != len(self.equations):
            return False
        return all(ech.contains(dict(L.terms)) for L in self.equations)

    def canonical_basis(self) -> List[DiffOp]:
        ech = Echelon(key=graded_key)
        for L in self.equations:
            ech.add(dict(L.terms))
        # back-reduce to reduced echelon form
        rows = {p: dict(r) for p, r in ech.rows.items()}
        for p in sorted(rows, key=graded_key):
            for q in rows:
                if q != p and p in rows[q]:
                    c = rows[q][p]
                    rows[q] = {k: rows[q].get(k, self.field.zero()) - c * rows[p].get(k, self.field.zero())
                               for k in set(rows[q]) | set(rows[p])}
                    rows[q] = {k: v for k, v in rows[q].items() if v}
        return [DiffOp(self.field, rows[p]).normalized() for p in sorted(rows, key=graded_key, reverse=True)]


def picard_fuchs_system(Q: Poly, field: RatField, params: Sequence[str] | None = None, order: int = 2,
                        config: GDConfig = GDConfig(), coh: Cohomology | None = None) -> PicardFuchsSystem:
    """All linear PDE relations of total order <= ``order`` among partials of the period."""
    from .operators import multi_indices

    params = tuple(params if params is not None else field.names)
    if not params:
        return PicardFuchsSystem((), [], field)
    coh = coh or Cohomology(Hypersurface(Q, field), config)
    n = len(params)
    idx = multi_indices(n, order)
    forms = {(0,) * n: {1: Poly.const(Q.vars, field.one())}}
    vecs = {}
    for a in idx:
        if a not in forms:
            i = next(i for i, k in enumerate(a) if k)
            prev = list(a)
            prev[i] -= 1
            forms[a] = coh.diff_sum(coh.to_forms(vecs[tuple(prev)]), params[i])
        vecs[a] = coh.canonical(forms[a])
    keys = sorted({k for v in vecs.values() for k in v}, key=lambda c: (c[0], grevlex_key(c[1])))
    rows = [[vecs[a].get(k, field.zero()) for a in idx] for k in keys]
    ns = bareiss_nullspace(rows, field) if rows else [[field.one() if j == i else field.zero()
                                                       for j in range(len(idx))] for i in range(len(idx))]
    # operators are in all field variables; params must be a prefix-compatible subset
    ops = []
    for sol in ns:
        terms = {}
        for a, c in zip(idx, sol):
            if c:
                full = [0] * field.nvars
                for name, k in zip(params, a):
                    full[field.names.index(name)] = k
                terms[tuple(full)] = c
        ops.append(DiffOp(field, terms).normalized())
    return PicardFuchsSystem(params, ops, field)


def change_parameters(system: PicardFuchsSystem, substitution: Mapping[str, RatFunc],
                      new_field: RatField, even_var: Tuple[str, str] | None = None) -> PicardFuchsSystem:
    """Chain-rule transform of a PDE system.

    ``even_var = (b, u)`` first rewrites operators even in b through u = b^2;
    the remaining ``substitution`` then expresses the (possibly rewritten)
    parameters as rational functions of the new ones.
    """
    from .operators import chain_rule, even_rewrite

    ops = list(system.equations)
    cur_field = system.field
    if even_var is not None:
        b, u = even_var
        mid = RatField(tuple(u if n == b else n for n in cur_field.names))
        ops = [even_rewrite(L, b, u, mid) for L in ops]
        cur_field = mid
    if substitution:
        ops = [chain_rule(L, substitution, new_field) for L in ops]
        cur_field = new_field
    ops = [L.normalized() for L in ops]
    return PicardFuchsSystem(cur_field.names, ops, cur_field)


def order_drop_report(ode: PicardFuchsODE) -> dict:
    """Order, factored leading coefficient and whether the order dropped below four."""
    lead = ode.normalize().coefficients[-1]
    factors = []
    if lead.num.is_constant():
        content = lead.num
    else:
        content, facs = lead.num.factor_squarefree()
        factors = [(str(f), int(e)) for f, e in facs]
    return {
        "order": ode.order,
        "leading_coefficient": str(lead),
        "squarefree_factors": factors,
        "order_dropped": ode.order <= 3,
    }
