import pytest

from hedgehog.errors import NotHomogeneousCubic, ParseError
from hedgehog.linalg import QQ
from hedgehog.parse import (parse_cubic, parse_poly, parse_rational,
                            poly_to_str)
from hedgehog.poly import ALPHA, T, X, Poly


def test_parse_reference_cubic():
    F = parse_cubic("x1*x2*x4 - x1*x5^2 + x2*x3^2 + x3*x5*x6 + x4*x6^2")
    assert F.homogeneous_degree() == 3
    assert len(F.terms) == 5


def test_parse_rejects_inhomogeneous():
    with pytest.raises(NotHomogeneousCubic):
        parse_cubic("x1 + x2^3")


def test_parse_rejects_double_star():
    with pytest.raises(ParseError) as exc:
        parse_cubic("x1**3")
    assert exc.value.position == 3


def test_parse_rejects_juxtaposition():
    with pytest.raises(ParseError):
        parse_poly("x1 x2")


def test_parse_rejects_non_x_variables_in_cubic():
    with pytest.raises(NotHomogeneousCubic):
        parse_cubic("a1^3")


def test_parse_rejects_zero():
    with pytest.raises(NotHomogeneousCubic):
        parse_cubic("x1^3 - x1^3")


def test_rational_coefficients():
    p = parse_poly("1/2*x1^2 - 3*x2^2")
    assert p.coefficient(((X[0], 2),)) == QQ(1, 2)


def test_unary_minus_leading_term():
    p = parse_poly("-x1^3 + x2^3")
    assert p.coefficient(((X[0], 3),)) == -1


def test_whitespace_ignored():
    assert parse_poly(" x1 * x2  -  x3^2 ") == parse_poly("x1*x2-x3^2")


def test_t_variable_parses():
    p = parse_poly("t^2*a1 - b3")
    assert p.total_degree((T,)) == 2


def test_operator_variables_parse():
    p = parse_poly("a1*a2*a4")
    assert p == Poly.monomial(((ALPHA[0], 1), (ALPHA[1], 1), (ALPHA[3], 1)))


def test_print_parse_round_trip():
    texts = [
        "x1*x2*x4 - x1*x5^2 + x2*x3^2 + x3*x5*x6 + x4*x6^2",
        "1/3*x1^3 - 2*x2*x3*x4 + x6^3",
        "a1^2 - 1/2*a2*a3 + 7",
    ]
    for text in texts:
        p = parse_poly(text)
        assert parse_poly(poly_to_str(p)) == p


def test_poly_to_str_canonical_order():
    p = parse_poly("x2^3 + x1*x2^2")
    # graded-lex descending: x1*x2^2 precedes x2^3
    assert poly_to_str(p) == "x1*x2^2 + x2^3"


def test_parse_rational_values():
    assert parse_rational("3") == 3
    assert parse_rational("-7/2") == QQ(-7, 2)
    with pytest.raises(ParseError):
        parse_rational("x")
    with pytest.raises(ParseError):
        parse_rational("1/0")
