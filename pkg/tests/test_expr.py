import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from picard_fuchs.algebra import RatField
from picard_fuchs.catalog import load_catalog
from picard_fuchs.expr import (BinOp, Neg, Num, ParseError, Var, parse_expr, ratfunc_to_expr_str, to_ratfunc,
                               to_str)

CORPUS = [
    "y^2*z - 4*x^3 + g2*x*z^2 + g3*z^3",
    "(864*t - 1)/13824",
    "1/192",
    "x",
    "-x",
    "--x",
    "-(x + y)",
    "x - (y - z)",
    "(x - y) - z",
    "x/(y/z)",
    "(x/y)/z",
    "x/y*z",
    "x*(y/z)",
    "x^2^3",
    "(x^2)^3",
    "-x^2",
    "(-x)^2",
    "x^(2)",
    "2*x^3*y - 7",
    "t*(t*(432*t - 1)*x + (864*t - 1)*y + 60)",
    "(t + 1)/(t - 2)",
    "1/(t + 5)",
    "t^2 + 1",
    "2*t - 3",
    "36*j^2 - 41*j + 32",
    "144*(j - 1)^2*j^2",
    "h1 + h2 - 1",
    "a^3*b - d",
    "(a + b)*(a - b)*(a*b + 1)",
    "0",
    "0 - 0",
    "1 - 1 + 1",
    "x*y*z",
    "x + y*z",
    "(x + y)*z",
    "x - y + z",
    "x - (y + z)",
    "x*-y",
    "x^0",
    "(((x)))",
    "lambda0^4/576",
    "alpha^2*z*(8*beta^4*z - 4*beta^2*x)",
    "-alpha - 4*beta",
    "4*alpha - 2*beta",
    "z1^2*z2",
    "th1*(th1 - 2*th2) - 12*z1*(6*th1 + 5)*(6*th1 + 1)",
]


def test_corpus_is_large_enough():
    assert len(CORPUS) + len(load_catalog().records) >= 50


@pytest.mark.parametrize("src", CORPUS)
def test_round_trip(src):
    e = parse_expr(src)
    assert parse_expr(to_str(e)) == e
    assert to_str(parse_expr(to_str(e))) == to_str(e)


def test_catalog_expressions_round_trip():
    for rec in load_catalog().records.values():
        e = parse_expr(rec.source, rec.variables)
        assert parse_expr(to_str(e), rec.variables) == e, rec.name


def test_precedence_and_associativity():
    assert parse_expr("-x^2") == Neg(BinOp("^", Var("x"), Num(2)))
    assert parse_expr("x - y - z") == BinOp("-", BinOp("-", Var("x"), Var("y")), Var("z"))
    assert parse_expr("x/y/z") == BinOp("/", BinOp("/", Var("x"), Var("y")), Var("z"))
    assert parse_expr("x + y*z") == BinOp("+", Var("x"), BinOp("*", Var("y"), Var("z")))


@pytest.mark.parametrize("src, fragment", [
    ("x +", "end of input"),
    ("x^y", "malformed exponent"),
    ("x^-1", "malformed exponent"),
    ("x/0", "literal zero"),
    ("x/(-0)", "literal zero"),
    ("q + 1", "undeclared"),
    ("x $ y", "unexpected character"),
    ("(x + 1", "unexpected end of input"),
])
def test_parse_errors(src, fragment):
    with pytest.raises(ParseError) as info:
        parse_expr(src, {"x", "y"})
    assert fragment in str(info.value)
    assert info.value.line == 1 and info.value.col >= 1


def test_error_position_and_expected_set():
    with pytest.raises(ParseError) as info:
        parse_expr("x +\n  * y", {"x", "y"})
    assert (info.value.line, info.value.col) == (2, 3)
    assert "identifier" in info.value.expected


def test_lowering_to_rational_function():
    F = RatField(("t",))
    t = F.gen("t")
    assert to_ratfunc(parse_expr("(864*t - 1)/13824", {"t"}), F) == (864 * t - 1) / 13824
    with pytest.raises(ZeroDivisionError):
        to_ratfunc(parse_expr("1/(t - t)", {"t"}), F)


exprs = st.recursive(
    st.one_of(st.integers(0, 20).map(Num), st.sampled_from(["x", "y", "t"]).map(Var)),
    lambda sub: st.one_of(
        sub.map(Neg),
        st.tuples(st.sampled_from("+-*"), sub, sub).map(lambda a: BinOp(*a)),
        st.tuples(sub, st.integers(0, 3)).map(lambda a: BinOp("^", a[0], Num(a[1]))),
    ),
    max_leaves=12,
)


@settings(max_examples=300)
@given(exprs)
def test_generated_round_trip(e):
    assert parse_expr(to_str(e)) == e


@settings(max_examples=100)
@given(st.lists(st.integers(-9, 9), min_size=1, max_size=4), st.lists(st.integers(-9, 9), min_size=1, max_size=3))
def test_ratfunc_printer_reparses(num, den):
    F = RatField(("t",))
    t = F.gen("t")
    n = sum((c * t ** k for k, c in enumerate(num)), F.zero())
    d = sum((c * t ** k for k, c in enumerate(den)), F.zero()) or F.one()
    f = n / (d * 7)
    assert to_ratfunc(parse_expr(ratfunc_to_expr_str(f), {"t"}), F) == f
