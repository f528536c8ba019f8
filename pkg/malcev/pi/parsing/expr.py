"""
Bracket expressions: parse text such as ``1/2*{[x1,x2],x3} - a*b*c`` into an
AST and expand it into a FreePoly.

Grammar (whitespace ignored)::

    expr      := term (("+" | "-") term)*
    term      := factor ("*" factor)*
    factor    := rational | generator | alias | "[" expr "," expr "]"
               | "{" expr "," expr "}" | "(" expr ")" | "-" factor
    generator := "x" digits
    alias     := "a" .. "h"            (a = x1, b = x2, ..., h = x8)
    rational  := digits ("/" digits)?

Products need an explicit ``*`` so that ``x12`` is always generator 12. The
algebra has no unit: a term made only of a nonzero number is rejected, while
the literal ``0`` is the zero polynomial.
Brackets, parentheses and unary minus nest at most MAX_NESTING deep.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, NamedTuple, Optional, Tuple, Union

from malcev.pi.errors import ExpressionSyntaxError, OutOfRange
from malcev.pi.freealg.poly import (
    FreePoly,
    anticommutator,
    commutator,
    format_rational,
    poly_product,
    poly_scale,
    poly_sum,
)

ALIASES = {letter: index for index, letter in enumerate("abcdefgh", start=1)}
MAX_NESTING = 100


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Scalar:
    value: Fraction


@dataclass(frozen=True)
class Sum:
    terms: Tuple["BracketExpr", ...]


@dataclass(frozen=True)
class Prod:
    factors: Tuple["BracketExpr", ...]

    def __post_init__(self):
        if len(self.factors) < 2:
            raise ValueError("Prod needs at least two factors.")


@dataclass(frozen=True)
class Comm:
    left: "BracketExpr"
    right: "BracketExpr"


@dataclass(frozen=True)
class AComm:
    left: "BracketExpr"
    right: "BracketExpr"


@dataclass(frozen=True)
class Scaled:
    coeff: Fraction
    body: "BracketExpr"


BracketExpr = Union[Var, Scalar, Sum, Prod, Comm, AComm, Scaled]


class Token(NamedTuple):
    kind: str  # "num", "gen", "op", "end"
    value: object
    position: int


_OPERATORS = set("+-*/[]{}(),")


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            tokens.append(Token("num", int(text[start:i]), start))
        elif ch == "x":
            start = i
            i += 1
            while i < n and text[i].isdigit():
                i += 1
            if i == start + 1:
                raise ExpressionSyntaxError(i, "generator digits after 'x'", text)
            index = int(text[start + 1:i])
            if index < 1:
                raise OutOfRange(index)
            tokens.append(Token("gen", index, start))
        elif ch in ALIASES:
            tokens.append(Token("gen", ALIASES[ch], i))
            i += 1
        elif ch in _OPERATORS:
            tokens.append(Token("op", ch, i))
            i += 1
        else:
            raise ExpressionSyntaxError(i, "a generator, number, bracket or operator", text)
    tokens.append(Token("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0
        self.depth = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def is_op(self, symbol: str) -> bool:
        return self.current.kind == "op" and self.current.value == symbol

    def expect(self, symbol: str) -> Token:
        if not self.is_op(symbol):
            raise ExpressionSyntaxError(self.current.position, f"'{symbol}'", self.text)
        return self.advance()

    def nest(self, token: Token) -> None:
        self.depth += 1
        if self.depth > MAX_NESTING:
            raise ExpressionSyntaxError(token.position, f"at most {MAX_NESTING} levels of nesting", self.text)

    def parse(self) -> BracketExpr:
        node = self.expr()
        if self.current.kind != "end":
            raise ExpressionSyntaxError(self.current.position, "an operator or end of input", self.text)
        return node

    def expr(self) -> BracketExpr:
        terms = [self.term()]
        while self.is_op("+") or self.is_op("-"):
            sign = self.advance().value
            term = self.term()
            terms.append(_scaled(Fraction(-1), term) if sign == "-" else term)
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> BracketExpr:
        start = self.current.position
        factors = [self.factor()]
        while self.is_op("*"):
            self.advance()
            factors.append(self.factor())
        return _normalize_term(factors, start, self.text)

    def factor(self) -> BracketExpr:
        token = self.current
        self.nest(token)
        node = self._factor(token)
        self.depth -= 1
        return node

    def _factor(self, token: Token) -> BracketExpr:
        if token.kind == "num":
            self.advance()
            numerator = token.value
            if self.is_op("/"):
                self.advance()
                denominator = self.current
                if denominator.kind != "num":
                    raise ExpressionSyntaxError(denominator.position, "a denominator", self.text)
                if denominator.value == 0:
                    raise ExpressionSyntaxError(denominator.position, "a nonzero denominator", self.text)
                self.advance()
                return Scalar(Fraction(numerator, denominator.value))
            return Scalar(Fraction(numerator))
        if token.kind == "gen":
            self.advance()
            return Var(token.value)
        if self.is_op("-"):
            self.advance()
            return _scaled(Fraction(-1), self.factor())
        if self.is_op("("):
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        for opening, closing, node in (("[", "]", Comm), ("{", "}", AComm)):
            if self.is_op(opening):
                self.advance()
                left = self.expr()
                self.expect(",")
                right = self.expr()
                self.expect(closing)
                return node(left, right)
        raise ExpressionSyntaxError(token.position, "a factor", self.text)


def _scaled(coeff: Fraction, body: BracketExpr) -> BracketExpr:
    if isinstance(body, Scalar):
        return Scalar(coeff * body.value)
    if isinstance(body, Scaled):
        coeff, body = coeff * body.coeff, body.body
    return body if coeff == 1 else Scaled(coeff, body)


def _normalize_term(factors: List[BracketExpr], position: int, text: str) -> BracketExpr:
    """Collect numeric factors into one leading coefficient."""
    coeff = Fraction(1)
    bodies: List[BracketExpr] = []
    for factor in factors:
        if isinstance(factor, Scaled):
            coeff *= factor.coeff
            factor = factor.body
        if isinstance(factor, Scalar):
            coeff *= factor.value
        elif isinstance(factor, Prod):
            bodies.extend(factor.factors)
        else:
            bodies.append(factor)
    if not bodies:
        if coeff:
            raise ExpressionSyntaxError(position, "a generator (the algebra has no unit)", text)
        return Scalar(Fraction(0))
    body = bodies[0] if len(bodies) == 1 else Prod(tuple(bodies))
    return _scaled(coeff, body)


def parse(text: str) -> BracketExpr:
    """
    Parse ``text`` into a BracketExpr.

    :raises ExpressionSyntaxError: malformed input, with the failing position.
    :raises OutOfRange: a generator written as ``x0``.
    """
    return _Parser(text).parse()


def expand(e: BracketExpr) -> FreePoly:
    if isinstance(e, Var):
        return FreePoly.generator(e.index)
    if isinstance(e, Scalar):
        if e.value:
            raise ValueError("A nonzero scalar has no value in a non-unital algebra.")
        return FreePoly.zero()
    if isinstance(e, Sum):
        return poly_sum(expand(t) for t in e.terms)
    if isinstance(e, Prod):
        return poly_product([expand(f) for f in e.factors])
    if isinstance(e, Comm):
        return commutator(expand(e.left), expand(e.right))
    if isinstance(e, AComm):
        return anticommutator(expand(e.left), expand(e.right))
    if isinstance(e, Scaled):
        return poly_scale(e.coeff, expand(e.body))
    raise TypeError(f"Not a bracket expression: {e!r}")


def parse_poly(text: str) -> FreePoly:
    return expand(parse(text))


def render_expr(e: BracketExpr, names: Optional[dict] = None) -> str:
    """Text for ``e`` that ``parse`` reads back to an equal expansion."""
    if isinstance(e, Var):
        return names[e.index] if names else f"x{e.index}"
    if isinstance(e, Scalar):
        return format_rational(e.value)
    if isinstance(e, Sum):
        out = ""
        for term in e.terms:
            text = render_expr(term, names)
            if not out:
                out = text
            elif text.startswith("-"):
                out += f" - {text[1:]}"
            else:
                out += f" + {text}"
        return out
    if isinstance(e, Prod):
        return "*".join(_wrap_sum(f, names) for f in e.factors)
    if isinstance(e, Comm):
        return f"[{render_expr(e.left, names)}, {render_expr(e.right, names)}]"
    if isinstance(e, AComm):
        return f"{{{render_expr(e.left, names)}, {render_expr(e.right, names)}}}"
    if isinstance(e, Scaled):
        body = _wrap_sum(e.body, names)
        if e.coeff == -1:
            return f"-{body}"
        if e.coeff < 0:
            return f"-{format_rational(-e.coeff)}*{body}"
        return f"{format_rational(e.coeff)}*{body}"
    raise TypeError(f"Not a bracket expression: {e!r}")


def _wrap_sum(e: BracketExpr, names) -> str:
    text = render_expr(e, names)
    return f"({text})" if isinstance(e, (Sum, Scaled)) else text
