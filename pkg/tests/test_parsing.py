import random
from fractions import Fraction

import pytest

from malcev.pi.errors import ExpressionSyntaxError, OutOfRange
from malcev.pi.freealg.poly import FreePoly, render
from malcev.pi.parsing.expr import (
    MAX_NESTING,
    AComm,
    Comm,
    Prod,
    Scaled,
    Sum,
    Var,
    expand,
    parse,
    parse_poly,
    render_expr,
)


def test_parse_sum_of_products():
    e = parse("x1*x2*x3 - x1*x3*x2")
    assert e == Sum((Prod((Var(1), Var(2), Var(3))), Scaled(Fraction(-1), Prod((Var(1), Var(3), Var(2))))))


def test_parse_brackets():
    assert parse("[x1,x2]") == Comm(Var(1), Var(2))
    assert parse("1/2*{ [x1,x2], x3 }") == Scaled(Fraction(1, 2), AComm(Comm(Var(1), Var(2)), Var(3)))


def test_aliases_and_multidigit_generators():
    assert parse("a*h") == Prod((Var(1), Var(8)))
    assert parse("x12") == Var(12)


def test_expand_brackets():
    assert expand(Comm(Var(1), Var(2))) == FreePoly.from_letters({(1, 2): 1, (2, 1): -1})
    assert expand(AComm(AComm(Var(1), Var(2)), Var(3))) == FreePoly.from_letters(
        {(1, 2, 3): 1, (2, 1, 3): 1, (3, 1, 2): 1, (3, 2, 1): 1}
    )


def test_type_three_identity_text():
    p = parse_poly("x1*x2*x3+x2*x1*x3-x2*x3*x1-x3*x2*x1")
    assert p == parse_poly("a*b*c + b*a*c - b*c*a - c*b*a")
    assert len(p) == 4


def test_unary_minus_binds_to_factor():
    assert parse_poly("-x1*x2") == FreePoly.from_letters({(1, 2): -1})
    assert parse_poly("-(x1 + x2)*x3") == FreePoly.from_letters({(1, 3): -1, (2, 3): -1})


@pytest.mark.parametrize("text, position", [
    ("x1 +", 4),
    ("[x1 x2]", 4),
    ("x1 ** x2", 4),
    ("x1 & x2", 3),
    ("1/0*x1", 2),
    ("x", 1),
])
def test_syntax_errors_report_position(text, position):
    with pytest.raises(ExpressionSyntaxError) as excinfo:
        parse(text)
    assert excinfo.value.position == position


def test_bare_scalar_is_rejected():
    with pytest.raises(ExpressionSyntaxError):
        parse("3 + x1")
    assert parse_poly("0") == 0


def test_generator_zero_is_out_of_range():
    with pytest.raises(OutOfRange):
        parse("x0*x1")


def test_render_round_trip(rng):
    for _ in range(50):
        terms = {}
        for _ in range(rng.randint(1, 5)):
            word = tuple(rng.randint(1, 12) for _ in range(rng.randint(1, 4)))
            terms[word] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        p = FreePoly.from_letters(terms)
        assert parse_poly(render(p)) == p


def test_render_expr_reads_back():
    e = parse("{[a,b],c} - 3/2*[a,{b,c}]")
    assert parse_poly(render_expr(e)) == expand(e)


def test_mutated_strings_never_crash():
    rng = random.Random(7)
    source = "{[a,b],c} - 3/2*[a,{b,c}] + x4*(x1 - x2)"
    alphabet = "x0123456789abc+-*/[]{}(), "
    for _ in range(300):
        chars = list(source)
        chars[rng.randrange(len(chars))] = rng.choice(alphabet)
        text = "".join(chars)
        try:
            expand(parse(text))
        except (ExpressionSyntaxError, OutOfRange):
            pass
    for text in ("(" * 2000 + "a" + ")" * 2000, "-" * 2000 + "a", "[" * 2000 + "a"):
        with pytest.raises(ExpressionSyntaxError):
            parse_poly(text)


def test_nesting_limit():
    deep = "(" * (MAX_NESTING - 1) + "a" + ")" * (MAX_NESTING - 1)
    assert parse_poly(deep) == FreePoly.generator(1)
    with pytest.raises(ExpressionSyntaxError, match="levels of nesting"):
        parse_poly("(" + deep + ")")
