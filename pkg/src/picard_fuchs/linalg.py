"""Linear algebra over rational function fields.

Two tools are provided:

* :class:`Echelon`, an incremental sparse row-echelon structure keyed by
  arbitrary sortable coordinates.  It is used for relation spaces whose
  coordinates are labelled (cohomology classes, partial derivatives).
* :func:`bareiss_nullspace`, fraction-free elimination on a dense matrix whose
  entries are cleared to polynomials first.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Hashable, List, Optional, Sequence

from .algebra import RatField, RatFunc

Vector = Dict[Hashable, object]


def _inv(c):
    if isinstance(c, (int, Fraction)):
        return Fraction(1) / c
    return c.inverse()


def vec_axpy(v: Vector, a, w: Vector) -> Vector:
    """Return v + a*w (new dict)."""
    out = dict(v)
    for k, c in w.items():
        x = out.get(k)
        nv = a * c if x is None else x + a * c
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


class Echelon:
    """Incremental echelon basis of a space of sparse vectors.

    ``key`` sorts coordinates; the pivot of a row is its largest coordinate.
    Rows are stored with pivot coefficient 1.
    """

    def __init__(self, key: Callable = lambda c: c):
        self.key = key
        self.rows: Dict[Hashable, Vector] = {}

    def __len__(self):
        return len(self.rows)

    def pivots(self):
        return set(self.rows)

    def reduce(self, v: Vector) -> Vector:
        v = {k: c for k, c in v.items() if c}
        if not self.rows:
            return v
        while True:
            cand = [k for k in v if k in self.rows]
            if not cand:
                return v
            k = max(cand, key=self.key)
            v = vec_axpy(v, -v[k], self.rows[k])

    def add(self, v: Vector) -> Optional[Hashable]:
        """Insert v; returns the new pivot, or None if v was dependent."""
        r = self.reduce(v)
        if not r:
            return None
        p = max(r, key=self.key)
        inv = _inv(r[p])
        self.rows[p] = {k: c * inv for k, c in r.items()}
        return p

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)


def clear_denominators(row: Sequence[RatFunc]) -> List[RatFunc]:
    """Scale a row of RatFuncs to polynomials with no common polynomial factor."""
    from .algebra import RatFunc as _R

    nz = [c for c in row if c]
    if not nz:
        return list(row)
    field = nz[0].field
    den = field._one
    for c in nz:
        g = den.gcd(c.den)
        den = den * (c.den / g)
    nums = [(c.num * (den / c.den)) if c else field.ctx.constant(0) for c in row]
    g = None
    for n in nums:
        if not n.is_zero():
            g = n if g is None else g.gcd(n)
    out = []
    for n in nums:
        q = n / g if not n.is_zero() else n
        out.append(_R(field, q))
    # normalise sign / rational content: make the last nonzero entry have
    # a positive leading coefficient and integer primitive content
    return normalize_poly_vector(out)


def normalize_poly_vector(vec: List[RatFunc]) -> List[RatFunc]:
    """Make integer primitive with positive leading coefficient of the last nonzero entry."""
    import math

    nz = [c for c in vec if c]
    if not nz:
        return vec
    field = nz[0].field
    dens = []
    nums = []
    for c in nz:
        for _, q in c.num.terms():
            dens.append(int(q.q))
            nums.append(abs(int(q.p)))
    L = 1
    for d in dens:
        L = L * d // math.gcd(L, d)
    G = 0
    for n, d in zip(nums, dens):
        G = math.gcd(G, n * (L // d))
    scale = Fraction(L, G if G else 1)
    lead = nz[-1].num.leading_coefficient()
    if lead < 0:
        scale = -scale
    return [c * scale if c else c for c in vec]


def bareiss_nullspace(rows: List[List[RatFunc]], field: RatField) -> List[List[RatFunc]]:
    """Basis of the right nullspace of a matrix over Q(params).

    Rows are first cleared to polynomial entries; elimination is then
    fraction-free (Bareiss), dividing each update exactly by the previous
    pivot.  Content is stripped from each row after a pivot step.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    ctx = field.ctx
    M = []
    for r in rows:
        cr = clear_denominators(r)
        M.append([c.num if c else ctx.constant(0) for c in cr])
    nrows = len(M)
    piv_cols = []
    prev = ctx.constant(1)
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if not M[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        p = M[r][c]
        for i in range(nrows):
            if i == r:
                continue
            if i < r:
                continue
            a = M[i][c]
            for k in range(c, ncols):
                val = p * M[i][k] - a * M[r][k]
                M[i][k] = val / prev if not prev.is_one() else val
        prev = p
        piv_cols.append(c)
        r += 1
        if r == nrows:
            break
    rank = r
    # back substitution with field arithmetic on the (small) echelon form
    E = [[RatFunc(field, x) for x in M[i]] for i in range(rank)]
    free = [c for c in range(ncols) if c not in piv_cols]
    basis = []
    for f in free:
        sol = [field.zero() for _ in range(ncols)]
        sol[f] = field.one()
        for i in range(rank - 1, -1, -1):
            pc = piv_cols[i]
            s = field.zero()
            for k in range(pc + 1, ncols):
                if E[i][k] and sol[k]:
                    s = s + E[i][k] * sol[k]
            sol[pc] = -s / E[i][pc]
        basis.append(sol)
    return basis


def rank_of(rows: List[List[RatFunc]], field: RatField) -> int:
    if not rows:
        return 0
    return len(rows[0]) - len(bareiss_nullspace(rows, field))
