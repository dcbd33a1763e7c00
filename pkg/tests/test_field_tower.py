"""Field towers, the expression grammar, nice bases and the quasi-galois check."""

import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from geomodel.errors import ParseError, ReducibleMinimalPolynomial, UnknownSymbolError, ZeroDivision
from geomodel.expr import parse_expr, symbols_in, unparse
from geomodel.field_tower.ops import char_poly, min_poly, quasi_galois_check, validate_nice_basis
from geomodel.field_tower.tower import tower_build
from oracles import random_tower_text

NUMERIC = {
    "sqrt2": {"a": sympy.sqrt(2)},
    "s3": {"c": sympy.cbrt(2), "w": (-1 + sympy.sqrt(-3)) / 2},
    "cyclotomic5": {"zeta": sympy.exp(2 * sympy.pi * sympy.I / 5)},
    "cuberoot": {"c": sympy.cbrt(2)},
}


def _as_sympy(text, values):
    names = {n: sympy.Symbol(n) for n in values}
    return sympy.sympify(text.replace("^", "**"), locals=names).subs(
        {names[k]: v for k, v in values.items()})


# ------------------------------------------------------------------ grammar
@pytest.mark.parametrize("text,column", [
    ("s^2 - (t^3 - t", 15),
    ("a+*b", 3),
    ("a)", 2),
    ("", 1),
    ("2^-1", 3),
    ("x^y", 3),
])
def test_parse_errors_carry_column(text, column):
    with pytest.raises(ParseError) as info:
        parse_expr(text)
    assert info.value.column == column


def test_unbalanced_parenthesis_names_the_opening():
    with pytest.raises(ParseError, match="opened at column 7"):
        parse_expr("s^2 - (t^3 - t")


@pytest.mark.parametrize("text,expected", [
    ("-a^2", "-a^2"),
    ("a/b/c", "a/b/c"),
    ("a - (b - c)", "a - (b - c)"),
    ("(a*b)^2", "(a*b)^2"),
    ("-a^2/b*(c-d)", "-a^2/b*(c - d)"),
])
def test_unparse_canonical(text, expected):
    assert unparse(parse_expr(text)) == expected


def test_unary_minus_binds_looser_than_power():
    a = sympy.Symbol("a")
    node = parse_expr("-a^2")
    assert sympy.sympify(unparse(node).replace("^", "**")) == -a ** 2
    assert symbols_in(parse_expr("t*s + 1/u")) == {"t", "s", "u"}


_atoms = st.sampled_from(["a", "b", "t", "2", "3/4", "17"])


def _exprs():
    return st.recursive(
        _atoms,
        lambda sub: st.one_of(
            st.tuples(sub, st.sampled_from(["+", "-", "*", "/"]), sub).map(lambda x: f"({x[0]} {x[1]} {x[2]})"),
            st.tuples(sub, st.integers(0, 3)).map(lambda x: f"({x[0]})^{x[1]}"),
            sub.map(lambda x: f"-({x})"),
        ),
        max_leaves=8,
    )


@given(_exprs())
@settings(max_examples=100, deadline=None)
def test_unparse_round_trip_preserves_value(text):
    node = parse_expr(text)
    again = parse_expr(unparse(node))
    assert unparse(again) == unparse(node)
    syms = {n: sympy.Symbol(n) for n in "abt"}
    lhs = sympy.sympify(text.replace("^", "**"), locals=syms)
    rhs = sympy.sympify(unparse(node).replace("^", "**"), locals=syms)
    assert lhs.equals(rhs) or (lhs.has(sympy.zoo, sympy.nan) and rhs.has(sympy.zoo, sympy.nan))


# -------------------------------------------------------------------- towers
def test_reducible_min_poly_is_rejected_with_factor():
    with pytest.raises(ReducibleMinimalPolynomial) as info:
        tower_build([], [("a", "a^4 - 4")], 0)
    assert info.value.witness == "a^2 - 2"


def test_unknown_symbol_in_min_poly():
    with pytest.raises(UnknownSymbolError):
        tower_build([], [("a", "a^2 - b")], 0)


def test_division_by_zero(towers):
    with pytest.raises((ZeroDivision, ZeroDivisionError)):
        towers["s3"].nf("1/(c^3 - 2)")


def test_degrees_and_membership(towers):
    assert towers["s3"].degree_over_k() == 6
    assert towers["elliptic"].degree_over_k() == 2
    E = towers["elliptic"]
    assert E.in_K(E.nf("t^2/(t+1)")) and not E.in_K(E.nf("s*t"))
    assert E.in_K(E.nf("s^2"))


@pytest.mark.parametrize("name,text", [
    ("sqrt2", "a + 1"),
    ("s3", "c + w"),
    ("s3", "c^2*w - 1/c"),
    ("cyclotomic5", "zeta + zeta^4"),
    ("cyclotomic5", "1/(1 - zeta)"),
    ("cuberoot", "c^2 + c"),
])
def test_min_poly_matches_sympy(towers, name, text):
    T = towers[name]
    m = min_poly(T, T.nf(text))
    x = sympy.Symbol("x")
    want = sympy.Poly(sympy.minimal_polynomial(_as_sympy(text, NUMERIC[name]), x), x).monic()
    got = sum(sympy.Rational(c.numerator, c.denominator) * x ** i for i, c in enumerate(m.c))
    assert sympy.expand(got - want.as_expr()) == 0
    # the characteristic polynomial is a power of the minimal polynomial
    cp = char_poly(T, T.nf(text))
    assert cp.degree % m.degree == 0 and cp == m ** (cp.degree // m.degree)


def test_min_poly_over_function_field(towers):
    E = towers["elliptic"]
    m = min_poly(E, E.nf("s + t"))
    assert str(m) == "x^2 - 2*t*x + (-t^3 + t^2 + t)"


@given(st.integers(0, 10 ** 6), st.sampled_from(["sqrt2", "s3", "cyclotomic5", "elliptic"]))
@settings(max_examples=60, deadline=None)
def test_field_axioms(towers, seed, name):
    T = towers[name]
    rng = random.Random(seed)
    x, y, z = (T.nf(random_tower_text(rng, T)) for _ in range(3))
    assert (x + y) + z == x + (y + z) and (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - y == -(y - x)
    if y:
        assert (x / y) * y == x
    assert T.nf(str(x)) == x


def test_k_coordinates_round_trip(towers):
    T = towers["s3"]
    rng = random.Random(1)
    for _ in range(20):
        x = T.nf(random_tower_text(rng, T))
        assert T.from_k_coordinates(T.k_coordinates(x)) == x


# ----------------------------------------------------- nice basis and closure
def test_nice_basis_clauses(towers):
    T = towers["s3"]
    assert validate_nice_basis(T, ["c", "w"]).passed
    rep = validate_nice_basis(T, ["c", "c^2"])
    assert not rep.passed and rep.clauses["i"] is False and rep.witnesses["span_dimension"] == 3
    rep = validate_nice_basis(T, ["c", "w", "1"])
    assert not rep.passed and rep.clauses["outside_K"] is False
    rep = validate_nice_basis(T, ["c", "w", "2*c"])
    assert rep.clauses["iii"] is False and rep.witnesses["dependency"]["index"] == 2


def test_quasi_galois(towers):
    assert quasi_galois_check(towers["s3"]).verdict
    assert quasi_galois_check(towers["elliptic"]).verdict
    v = quasi_galois_check(towers["cuberoot"])
    assert not v.verdict and v.per_generator["c"]["roots_in_L"] == 1
