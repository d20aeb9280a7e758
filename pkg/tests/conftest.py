from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from picard_fuchs.algebra import Poly, RatField

settings.register_profile("repo", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

T = RatField(("t",))
TS = RatField(("t", "s"))
XYZ = ("x", "y", "z")

small_int = st.integers(-6, 6)
small_frac = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))


@st.composite
def tpoly(draw, field=TS, max_deg=2):
    """A small polynomial in the generators of ``field`` as a RatFunc."""
    out = field.zero()
    for e in draw(st.lists(st.tuples(*[st.integers(0, max_deg)] * field.nvars), min_size=1, max_size=3)):
        term = field(draw(small_frac))
        for name, k in zip(field.names, e):
            term = term * field.gen(name) ** k
        out = out + term
    return out


@st.composite
def ratfuncs(draw, field=TS):
    num = draw(tpoly(field))
    den = draw(tpoly(field, max_deg=1))
    if not den:
        den = field.one()
    return num / den


@st.composite
def polys(draw, variables=XYZ, max_deg=2, max_terms=3):
    p = Poly.zero(variables)
    for _ in range(draw(st.integers(1, max_terms))):
        e = tuple(draw(st.integers(0, max_deg)) for _ in variables)
        p = p + Poly.monomial(variables, e, draw(small_frac))
    return p


@pytest.fixture
def t_field():
    return T
