from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from msk.polynomial import Polynomial, PolynomialSyntaxError, monomials_up_to, parse_polynomial
from tests.oracles import to_sympy
from tests.strategies import polynomials

NAMES = ("x", "y", "z")
SYMS = sympy.symbols("x y z")


def test_parse_basic():
    p = parse_polynomial("x^2 - 3/2*x*y + 4", NAMES)
    assert p.terms == {(2, 0, 0): 1, (1, 1, 0): Fraction(-3, 2), (0, 0, 0): 4}


def test_parse_parentheses_and_powers():
    p = parse_polynomial("(x + y)^2", NAMES)
    assert p == parse_polynomial("x^2 + 2*x*y + y^2", NAMES)


@pytest.mark.parametrize("text, column", [("x +", 4), ("x * * y", 5), ("w", 1), ("1/0", 3)])
def test_syntax_errors_carry_a_column(text, column):
    with pytest.raises(PolynomialSyntaxError) as info:
        parse_polynomial(text, NAMES)
    assert info.value.column == column


@given(polynomials(), polynomials())
def test_ring_operations_match_sympy(p, q):
    assert to_sympy(p * q, SYMS) == sympy.expand(to_sympy(p, SYMS) * to_sympy(q, SYMS))
    assert to_sympy(p + q, SYMS) == sympy.expand(to_sympy(p, SYMS) + to_sympy(q, SYMS))
    assert to_sympy(p - q, SYMS) == sympy.expand(to_sympy(p, SYMS) - to_sympy(q, SYMS))


@given(polynomials(), st.integers(0, 2))
def test_derivative_matches_sympy(p, i):
    assert to_sympy(p.diff(i), SYMS) == sympy.diff(to_sympy(p, SYMS), SYMS[i])


@given(polynomials())
def test_string_round_trip(p):
    assert parse_polynomial(p.to_str(NAMES), NAMES) == p


@given(polynomials(), polynomials(), polynomials(), polynomials(max_degree=1))
def test_compose_matches_substitution(p, a, b, c):
    expected = to_sympy(p, SYMS).subs(
        dict(zip(SYMS, [to_sympy(a, SYMS), to_sympy(b, SYMS), to_sympy(c, SYMS)])), simultaneous=True)
    assert to_sympy(p.compose([a, b, c]), SYMS) == sympy.expand(expected)


@given(polynomials(), polynomials())
def test_exact_divide_recovers_factor(p, q):
    if q.is_zero():
        return
    assert (p * q).exact_divide(q) == p


def test_exact_divide_rejects_remainder():
    x = Polynomial.variable(3, 0)
    assert (x + 1).exact_divide(x) is None


@pytest.mark.parametrize("nvars, degree", [(0, 3), (1, 2), (2, 2), (3, 3)])
def test_monomial_enumeration_is_complete(nvars, degree):
    monos = monomials_up_to(nvars, degree)
    assert len(monos) == len(set(monos)) == sympy.binomial(nvars + degree, degree)
    assert all(sum(e) <= degree for e in monos)
