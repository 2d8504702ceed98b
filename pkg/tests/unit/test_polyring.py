import pytest
from sympy.polys.domains import GF, QQ

from ktres.algebra.polyring import (
    as_poly,
    constant_term,
    field_name,
    format_poly,
    leading_monomial,
    make_ring,
    monomial_lcm,
    monomial_quotient,
    parse_field,
    parse_poly,
    poly_arith,
)
from ktres.exceptions import InputError, PolynomialSyntaxError, RingMismatchError


def test_parse_field():
    """
    Test the coefficient field specifications.

    Parameters
    ----------
    None

    Returns
    -------
    None
    """
    assert parse_field("QQ") == QQ
    assert parse_field(" GF(7) ") == GF(7)
    assert field_name(GF(7)) == "GF(7)"
    assert field_name(QQ) == "QQ"
    with pytest.raises(InputError):
        parse_field("GF(4)")
    with pytest.raises(InputError):
        parse_field("RR")


def test_make_ring_rejects_bad_variables():
    with pytest.raises(InputError):
        make_ring(("x", "x"))
    with pytest.raises(InputError):
        make_ring(())
    with pytest.raises(InputError):
        make_ring(("x-1",))


def test_parse_and_format(ring_xy):
    """
    Test that parsing accepts powers with ``^`` and implicit products.

    Parameters
    ----------
    ring_xy : PolyRing
        The ring QQ[x, y].

    Returns
    -------
    None
    """
    x, y = ring_xy.gens
    assert parse_poly(ring_xy, "x^2*y - 3*y") == x**2 * y - 3 * y
    assert parse_poly(ring_xy, "x^2 y") == x**2 * y
    assert parse_poly(ring_xy, "0") == ring_xy.zero
    text = format_poly(x**2 * y - 3 * y)
    assert "**" not in text
    assert parse_poly(ring_xy, text) == x**2 * y - 3 * y


def test_parse_errors(ring_xy):
    with pytest.raises(PolynomialSyntaxError):
        parse_poly(ring_xy, "")
    with pytest.raises(PolynomialSyntaxError):
        parse_poly(ring_xy, "x^2 +")
    with pytest.raises(PolynomialSyntaxError) as info:
        parse_poly(ring_xy, "x*q")
    assert info.value.column == 3
    with pytest.raises(PolynomialSyntaxError):
        parse_poly(ring_xy, "1/x")


def test_monomials(ring_xy):
    x, y = ring_xy.gens
    assert leading_monomial(x**2 * y) == (2, 1)
    assert monomial_lcm((2, 0), (1, 1)) == (2, 1)
    assert monomial_quotient((2, 1), (1, 1)) == (1, 0)
    assert monomial_quotient((1, 0), (0, 1)) is None
    with pytest.raises(InputError):
        leading_monomial(2 * x)
    with pytest.raises(InputError):
        leading_monomial(x + y)


def test_arithmetic(ring_xy):
    x, y = ring_xy.gens
    assert poly_arith("add", x, y) == x + y
    assert poly_arith("mul", x, y) == x * y
    assert poly_arith("scalar", x, 3) == 3 * x
    other = make_ring(("x", "z"))
    with pytest.raises(RingMismatchError):
        poly_arith("add", x, other.gens[0])


def test_constant_term_and_coercion(ring_xy):
    x, _ = ring_xy.gens
    assert constant_term(x + 3) == 3
    assert constant_term(x) == 0
    assert constant_term(5) == 5
    assert as_poly(ring_xy, 2) == ring_xy(2)
    assert as_poly(ring_xy, x) is x


def test_prime_field_arithmetic():
    ring = make_ring(("x",), "GF(3)")
    x = ring.gens[0]
    assert parse_poly(ring, "3*x + 1") == ring.one
    assert (x + 1) ** 3 == x**3 + 1
