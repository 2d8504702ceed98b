"""
Polynomial ring module.

Exact polynomial arithmetic over the rationals or a prime field, backed by the
sparse polynomial rings of sympy with the degree-reverse-lexicographic order.
Monomials are exponent tuples, polynomials are ``PolyElement`` instances.
"""
import logging
from functools import lru_cache
from tokenize import TokenError
from typing import Literal, Optional, Tuple, Union

from sympy import isprime
from sympy.core.sympify import SympifyError
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)
from sympy.polys.domains import GF, QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.monomials import monomial_div, monomial_lcm as _monomial_lcm
from sympy.polys.orderings import grevlex
from sympy.polys.rings import PolyElement, PolyRing

from ktres.exceptions import InputError, PolynomialSyntaxError, RingMismatchError

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]
Poly = PolyElement
Scalar = Union[int, PolyElement]

_TRANSFORMATIONS = standard_transformations + (implicit_multiplication, convert_xor)


def parse_field(spec: str) -> Domain:
    """
    Parse a coefficient field specification.

    Parameters
    ----------
    spec : str
        ``"QQ"`` for the rationals or ``"GF(p)"`` for a prime field.

    Returns
    -------
    Domain
        The sympy domain.
    """
    text = spec.strip().replace(" ", "")
    if text.upper() in ("QQ", "Q"):
        return QQ
    if text.upper().startswith("GF(") and text.endswith(")"):
        try:
            p = int(text[3:-1])
        except ValueError:
            raise InputError(f"Invalid prime field {spec!r}")
        if not isprime(p):
            raise InputError(f"Field characteristic {p} is not prime")
        return GF(p)
    raise InputError(f"Unsupported coefficient field {spec!r}; use QQ or GF(p)")


def field_name(domain: Domain) -> str:
    """Inverse of :func:`parse_field`."""
    if domain == QQ:
        return "QQ"
    return f"GF({domain.mod})"


@lru_cache(maxsize=None)
def make_ring(variables: Tuple[str, ...], field: str = "QQ") -> PolyRing:
    """
    Build (or fetch) the polynomial ring in the given variables.

    Parameters
    ----------
    variables : Tuple[str, ...]
        Variable names, in the order that defines the monomial order.
    field : str, optional
        Coefficient field, ``"QQ"`` by default.

    Returns
    -------
    PolyRing
        A ring with the degree-reverse-lexicographic order.
    """
    if not variables:
        raise InputError("A polynomial ring needs at least one variable")
    if len(set(variables)) != len(variables):
        raise InputError(f"Repeated variable names in {variables}")
    for name in variables:
        if not name.isidentifier():
            raise InputError(f"Invalid variable name {name!r}")
    return PolyRing(",".join(variables), parse_field(field), grevlex)


def parse_poly(ring: PolyRing, text: str) -> Poly:
    """
    Parse a polynomial written as ``x^2*y - 3*z`` (``*`` optional).

    Parameters
    ----------
    ring : PolyRing
        The target ring; only its variables may appear.
    text : str
        The polynomial text.

    Returns
    -------
    Poly
        The parsed polynomial.

    Raises
    ------
    PolynomialSyntaxError
        On syntax errors, unknown identifiers or non-polynomial expressions.
    """
    if not text.strip():
        raise PolynomialSyntaxError(text, "empty expression")
    local_dict = {str(symbol): symbol for symbol in ring.symbols}
    try:
        expr = parse_expr(text, local_dict=local_dict, transformations=_TRANSFORMATIONS)
    except SyntaxError as exc:
        raise PolynomialSyntaxError(text, "invalid syntax", exc.offset)
    except (SympifyError, TokenError, TypeError, ValueError, AttributeError) as exc:
        raise PolynomialSyntaxError(text, str(exc))

    unknown = sorted(str(s) for s in expr.free_symbols if s not in ring.symbols)
    if unknown:
        column = min(text.find(name) for name in unknown) + 1
        raise PolynomialSyntaxError(
            text, f"unknown variable(s) {', '.join(unknown)}", column
        )
    try:
        return ring.from_expr(expr)
    except ValueError:
        raise PolynomialSyntaxError(text, "not a polynomial")


def format_poly(p: Scalar) -> str:
    """Print a polynomial in the syntax accepted by :func:`parse_poly`."""
    return str(p).replace("**", "^")


def check_same_ring(*polys: Poly) -> PolyRing:
    """Return the common ring of the given polynomials, or raise."""
    rings = {p.ring for p in polys}
    if len(rings) != 1:
        raise RingMismatchError("Operands belong to different polynomial rings")
    return rings.pop()


def monomial_lcm(m1: Monomial, m2: Monomial) -> Monomial:
    """Componentwise maximum of two exponent tuples."""
    if len(m1) != len(m2):
        raise RingMismatchError(f"Monomials {m1} and {m2} have different lengths")
    return _monomial_lcm(m1, m2)


def monomial_quotient(m1: Monomial, m2: Monomial) -> Optional[Monomial]:
    """
    Divide two monomials.

    Returns ``None`` when ``m2`` does not divide ``m1``.
    """
    if len(m1) != len(m2):
        raise RingMismatchError(f"Monomials {m1} and {m2} have different lengths")
    return monomial_div(m1, m2)


def monomial_poly(ring: PolyRing, m: Monomial) -> Poly:
    """The polynomial with a single term ``1 * m``."""
    return ring.term_new(m, ring.domain.one)


def leading_monomial(p: Poly) -> Monomial:
    """Leading exponent tuple of a polynomial that is a single monomial."""
    if len(p) != 1 or p.LC != p.ring.domain.one:
        raise InputError(f"{format_poly(p)} is not a monomial")
    return p.LM


def poly_arith(
    op: Literal["add", "mul", "scalar"], p: Poly, q: Union[Poly, int]
) -> Poly:
    """
    Exact arithmetic on two operands of the same ring.

    Parameters
    ----------
    op : {"add", "mul", "scalar"}
        Sum, product, or product with a field element.
    p : Poly
        Left operand.
    q : Poly or int
        Right operand; a rational number for ``"scalar"``.

    Returns
    -------
    Poly
        The result, with zero terms pruned.
    """
    if op == "scalar":
        return p * p.ring.domain.convert(q)
    check_same_ring(p, q)
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    raise InputError(f"Unknown polynomial operation {op!r}")


def constant_term(p: Scalar):
    """Coefficient of the constant monomial, as a field element."""
    if isinstance(p, PolyElement):
        return p.const()
    return p


def as_poly(ring: PolyRing, value: Scalar) -> Poly:
    """Coerce an integer or a polynomial into ``ring``."""
    if isinstance(value, PolyElement) and value.ring == ring:
        return value
    return ring(value)
