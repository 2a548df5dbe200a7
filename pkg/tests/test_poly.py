import random
from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, strategies as st

from _util import polys
from hhci.coeff import QQ, ZZ, IntegersModN, PrimeField
from hhci.errors import InputError, ParseError, UnknownVariable
from hhci.poly import (
    Poly, content_ideal, delta_quotient, divided_partial, divmod_univariate, gcd_univariate, parse_poly,
)

GF2, GF3 = PrimeField(2), PrimeField(3)
XY = ["x", "y"]


def P(text, ring=ZZ, names=XY):
    return parse_poly(text, names, ring)


def test_parse_examples():
    f = P("x^2 - 4*x*y + y^2 - 1")
    assert f.terms == {(2, 0): 1, (1, 1): -4, (0, 2): 1, (0, 0): -1}
    assert not P("0")
    g = parse_poly("15*x^3 + 10*x + 6", ["x"], IntegersModN(30))
    assert g.terms == {(3,): 15, (1,): 10, (0,): 6}
    assert parse_poly("45*x", ["x"], IntegersModN(30)).terms == {(1,): 15}


def test_parse_grammar():
    assert P("(x+y)^2") == P("x^2 + 2*x*y + y^2")
    assert P("-(x - y)") == P("y - x")
    assert P("x^0") == P("1")
    assert parse_poly("1/2*x", ["x"], QQ).terms == {(1,): Fraction(1, 2)}
    assert parse_poly("x/2", ["x"], GF3).terms == {(1,): 2}
    assert str(P("x^2 - 4*x*y + y^2 - 1")) == "x^2 - 4*x*y + y^2 - 1"


@pytest.mark.parametrize("text", ["x +", "2x", "x^-1", "x^y", "(x", "x**2", "x $ y", ""])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        P(text)


def test_parse_unknown_variable_and_division():
    with pytest.raises(UnknownVariable):
        P("z + 1")
    with pytest.raises(InputError):
        P("x/2")
    with pytest.raises(InputError):
        parse_poly("x", ["x", "x"], ZZ)


@given(polys())
def test_print_parse_roundtrip(f):
    names = ["x", "y", "z"][:f.nvars]
    assert parse_poly(f.to_string(names), names, f.ring) == f


def _sym(f, gens):
    return sum(int(c) * sympy.prod(g ** k for g, k in zip(gens, e)) for e, c in f.terms.items())


@given(polys(ring=ZZ, nvars=2), polys(ring=ZZ, nvars=2))
def test_arithmetic_against_sympy(f, g):
    x, y = sympy.symbols("x y")
    prod = f * g
    assert sympy.expand(_sym(prod, (x, y)) - _sym(f, (x, y)) * _sym(g, (x, y))) == 0
    assert sympy.expand(_sym(f - g, (x, y)) - (_sym(f, (x, y)) - _sym(g, (x, y)))) == 0


@given(st.data())
def test_ring_axioms(data):
    ring = data.draw(st.sampled_from([QQ, ZZ, GF2, GF3, IntegersModN(6)]))
    f, g, h = (data.draw(polys(ring=ring, nvars=2, max_deg=3, max_terms=4)) for _ in range(3))
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    assert f - f == Poly.zero(ring, 2)
    assert (f + g) ** 2 == f * f + g * f + f * g + g * g


def test_divided_partial_examples():
    x = ["x"]
    assert divided_partial(parse_poly("x^2", x, ZZ), (2,)) == Poly.const(ZZ, 1, 1)
    assert divided_partial(parse_poly("x^3", x, ZZ), (2,)) == parse_poly("3*x", x, ZZ)
    for n in range(2, 9):
        f = parse_poly(f"x^{n} - 1", x, ZZ)
        d = divided_partial(f, (2,))
        assert d == Poly.monomial(ZZ, (n - 2,), comb(n, 2))
        if n % 2 == 0:
            dn = divided_partial(f.map_ring(IntegersModN(n)), (2,))
            assert dn == Poly.monomial(IntegersModN(n), (n - 2,), n // 2)
    # characteristic 2: the divided second derivative of x^2 survives
    assert divided_partial(parse_poly("x^2", x, GF2), (2,)) == Poly.const(GF2, 1, 1)


@given(polys(ring=ZZ, nvars=2, max_deg=5), st.integers(0, 3), st.integers(0, 3))
def test_divided_partial_times_factorial(f, a, b):
    """a! b! times the divided partial equals the ordinary iterated partial."""
    ordinary = f
    for _ in range(a):
        ordinary = ordinary.derivative(0)
    for _ in range(b):
        ordinary = ordinary.derivative(1)
    fact = sympy.factorial(a) * sympy.factorial(b)
    assert divided_partial(f, (a, b)).scale(int(fact)) == ordinary


def test_content_ideal():
    assert content_ideal(parse_poly("17*x", ["x"], ZZ)) == [17]
    assert content_ideal(parse_poly("x^5 - 1", ["x"], ZZ)) == [1, -1]
    assert content_ideal(Poly.zero(ZZ, 1)) == []


def test_delta_quotient():
    x = ["x"]
    for n in range(1, 6):
        D = delta_quotient(parse_poly(f"x^{n}", x, ZZ))
        assert D.terms == {(n - 1 - i, i): 1 for i in range(n)}
    assert not delta_quotient(parse_poly("7", x, ZZ))
    D = delta_quotient(parse_poly("x^2", x, ZZ))
    assert D == parse_poly("x + y", XY, ZZ)


@given(polys(ring=ZZ, nvars=1, max_deg=6))
def test_delta_quotient_identity(f):
    x1, x2 = Poly.var(ZZ, 2, 0), Poly.var(ZZ, 2, 1)
    D = delta_quotient(f)
    assert f.compose([x2]) - f.compose([x1]) == (x2 - x1) * D
    # on the diagonal D is the derivative
    assert D.compose([Poly.var(ZZ, 1, 0)] * 2) == f.derivative(0)


def test_gcd_examples():
    x = ["x"]
    f = parse_poly("x^3 - x^2", x, QQ)
    assert gcd_univariate(f, f.derivative(0)) == parse_poly("x", x, QQ)
    g = parse_poly("x^2", x, GF2)
    assert gcd_univariate(g, g.derivative(0)) == g


@given(st.sampled_from([QQ, GF2, GF3, PrimeField(5)]), st.data())
def test_gcd_divides_and_combines(ring, data):
    f = data.draw(polys(ring=ring, nvars=1, max_deg=5))
    g = data.draw(polys(ring=ring, nvars=1, max_deg=5))
    d = gcd_univariate(f, g)
    if not f and not g:
        assert not d
        return
    assert not divmod_univariate(f, d)[1]
    assert not divmod_univariate(g, d)[1]
    # compare degrees with sympy over the same field
    x = sympy.symbols("x")
    opts = {"modulus": ring.modulus} if ring.modulus else {"domain": "QQ"}

    def to_sym(p):
        return sympy.Poly(sum(sympy.Rational(c) * x ** e[0] for e, c in p.terms.items()) + 0 * x, x, **opts)

    assert sympy.gcd(to_sym(f), to_sym(g)).degree() == d.degree()


@given(polys(ring=ZZ, nvars=1, max_deg=6), st.integers(1, 4))
def test_divmod_by_monic(f, k):
    rng = random.Random(k)
    g = Poly(ZZ, 1, {(k,): 1, (rng.randint(0, k - 1),): rng.randint(-3, 3)})
    q, r = divmod_univariate(f, g)
    assert q * g + r == f
    assert r.degree() < k
