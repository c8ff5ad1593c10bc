from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qflag.poly import (INHOMOGENEOUS, ZERO, ParseError, Polynomial, RegistryMismatch, UPoly, Var,
                        VarRegistry, coeff_extract, exquo, poly_arith, weighted_degree)

NAMES = ["x", "y", "z", "u", "v", "w"]
REG = VarRegistry.generic(NAMES, [1, 1, 2, 1, 3, 1])


def polys(reg=REG, max_terms=6, max_exp=3):
    exps = st.tuples(*[st.integers(0, max_exp) for _ in reg.vars])
    coeffs = st.fractions(min_value=-20, max_value=20, max_denominator=6)
    return st.dictionaries(exps, coeffs, max_size=max_terms).map(lambda d: Polynomial(reg, d))


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Polynomial.constant(REG, 0)
    assert a * 1 == a


@settings(max_examples=60, deadline=None)
@given(polys())
def test_text_and_json_round_trip(p):
    text = p.to_text()
    again = Polynomial.parse(text, REG)
    assert again == p
    assert again.to_text() == text
    assert Polynomial.from_json(p.to_json(), REG) == p


@settings(max_examples=40, deadline=None)
@given(polys(max_terms=4), polys(max_terms=4))
def test_exact_division_recovers_factor(a, b):
    if not b:
        return
    assert exquo(a * b, b) == a


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), polys(max_terms=3), polys(max_terms=3))
def test_degree_is_additive(d1, d2, a, b):
    a = _homogeneous_part(a, d1)
    b = _homogeneous_part(b, d2)
    if a and b:
        assert weighted_degree(a * b) == weighted_degree(a) + weighted_degree(b)


def _homogeneous_part(p, d):
    return Polynomial(p.registry, {e: c for e, c in p.terms.items() if p.registry.degree(e) == d})


def test_additive_inverse_and_difference_of_squares():
    r = VarRegistry.generic(["a", "b", "x"])
    a, b, x = (Polynomial.variable(r, n) for n in "abx")
    assert (x + 1) + (-1) * (x + 1) == 0
    assert (a + b) * (a - b) == a ** 2 - b ** 2
    assert (x + a) * (x + b) == x ** 2 + (a + b) * x + a * b


def test_weighted_degree_markers():
    r = VarRegistry([Var("a", "chern", (0, 1), 1), Var("b", "chern", (1, 1), 1), Var("q", "quantum", (1,), 2)])
    a, b, q = (Polynomial.variable(r, n) for n in "abq")
    assert weighted_degree(Polynomial.constant(r, 0)) == ZERO
    assert weighted_degree(a * b + q) == 2
    assert weighted_degree(a + q) == INHOMOGENEOUS


def test_coeff_extract():
    r = VarRegistry([Var("a", "chern", (0, 1), 1), Var("b", "chern", (1, 1), 1), Var("q", "quantum", (1,), 2)])
    p = Polynomial.parse("q*a + b", r)
    assert coeff_extract(p, (1,)) == Polynomial.variable(r, "a")
    assert coeff_extract(p, (0,)) == Polynomial.variable(r, "b")


def test_canonical_text():
    r = VarRegistry.generic(["c", "d"])
    assert Polynomial.parse("-3/2*c^2 + d - d", r).to_text() == "-3/2*c^2"
    assert str(Polynomial.constant(r, 0)) == "0"
    assert str(Polynomial.parse("(c+d)^2", r)) == "c^2 + 2*c*d + d^2"


def test_parse_errors_carry_position():
    r = VarRegistry.generic(["c"])
    with pytest.raises(ParseError) as exc:
        Polynomial.parse("c + e", r)
    assert exc.value.position == 4
    with pytest.raises(ParseError):
        Polynomial.parse("c +", r)
    with pytest.raises(ParseError):
        Polynomial.parse("c / c", r)


def test_registry_mismatch_and_float_coefficients():
    r1 = VarRegistry.generic(["a"])
    r2 = VarRegistry.generic(["b"])
    with pytest.raises(RegistryMismatch):
        poly_arith(Polynomial.variable(r1, "a"), Polynomial.variable(r2, "b"), "add")
    with pytest.raises(TypeError):
        Polynomial.constant(r1, 0.5)


def test_registry_validation():
    with pytest.raises(ValueError):
        VarRegistry.generic(["a", "a"])
    with pytest.raises(ValueError):
        VarRegistry([Var("a", "chern", (0, 1), 0)])
    with pytest.raises(ValueError):
        VarRegistry([Var("q", "quantum", (1,), 2), Var("a", "chern", (0, 1), 1)])


def test_block_order_puts_chern_above_parameters():
    r = VarRegistry([Var("a", "chern", (0, 1), 1), Var("q", "quantum", (1,), 2)])
    p = Polynomial.parse("q + a^2", r)
    assert p.lead_exp() == (2, 0)


def test_substitute_and_evaluate():
    r = VarRegistry.generic(["a", "b"])
    p = Polynomial.parse("a^2*b + 3", r)
    assert p.evaluate({"a": 2}) == Polynomial.parse("4*b + 3", r)
    assert p.evaluate({"a": Fraction(1, 2), "b": 4}).constant_value() == 4
    assert p.substitute({"b": Polynomial.parse("a + 1", r)}) == Polynomial.parse("a^3 + a^2 + 3", r)
    assert p.diff("a") == Polynomial.parse("2*a*b", r)


def test_exquo_rejects_inexact():
    r = VarRegistry.generic(["a", "b"])
    with pytest.raises(ArithmeticError):
        exquo(Polynomial.parse("a^2 + b", r), Polynomial.parse("a", r))
    with pytest.raises(ZeroDivisionError):
        exquo(Polynomial.parse("a", r), Polynomial.constant(r, 0))


def test_upoly_product():
    r = VarRegistry.generic(["a", "b"])
    a, b = Polynomial.variable(r, "a"), Polynomial.variable(r, "b")
    prod = UPoly(r, [a, 1]) * UPoly(r, [b, 1])
    assert prod.degree == 2 and prod.is_monic()
    assert prod.coeff(1) == a + b and prod.coeff(0) == a * b
    assert prod.to_text() == "x^2 + (a + b)*x + a*b"
