"""
Normal forms in the relatively free third-type algebra, written in
commutators and anticommutators.

Degrees 1 to 3 are charted by the oracle over the bracket shapes below. From
degree 4 on every bracket containing a commutator vanishes and anticommutators
sort, so a word w of degree n is 1/2^(n-1) times the left-nested
anticommutator of its sorted letters. That closed form is checked against the
oracle at multilinear degrees 4 and 5 before it is used.
"""
import threading
from fractions import Fraction
from typing import List, Optional

from malcev.pi.freealg.poly import FreePoly
from malcev.pi.freealg.words import Multidegree
from malcev.pi.normalforms.base import As3Poly, BaseNormalForm, ElementPoly
from malcev.pi.oracle.tideal import AS3
from malcev.pi.parsing.expr import AComm, BracketExpr, Comm, Var, expand

COLLAPSE_DEGREE = 4
SELF_TEST_DEGREES = (4, 5)


def _compact(e: BracketExpr) -> str:
    if isinstance(e, Var):
        return f"x{e.index}"
    opening, closing = ("[", "]") if isinstance(e, Comm) else ("{", "}")
    return f"{opening}{_compact(e.left)},{_compact(e.right)}{closing}"


class As3Elem:
    """A basis bracket over the nondecreasing letter tuple ``letters``."""

    __slots__ = ("letters",)
    kind = "bracket"
    tag = ""
    rank = 0

    def __init__(self, letters):
        letters = tuple(letters)
        if list(letters) != sorted(letters):
            raise ValueError(f"{type(self).__name__} letters must be nondecreasing, got {letters}.")
        object.__setattr__(self, "letters", letters)
        self._check()

    def _check(self):
        pass

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.token == other.token

    def __hash__(self) -> int:
        return hash(self.token)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.render()})"

    @property
    def multidegree(self) -> Multidegree:
        return Multidegree.of(self.letters)

    @property
    def degree(self) -> int:
        return len(self.letters)

    def to_expr(self) -> BracketExpr:
        raise NotImplementedError

    def expand(self) -> FreePoly:
        return expand(self.to_expr())

    @property
    def weight(self) -> Fraction:
        """Sum of the coefficients of the expansion; 0 whenever a commutator occurs."""
        return sum(self.expand().terms.values(), Fraction(0))

    def render(self) -> str:
        return _compact(self.to_expr())

    @property
    def token(self) -> str:
        return f"{self.tag}:" + ".".join(map(str, self.letters))

    def sort_key(self) -> tuple:
        return (self.degree, self.multidegree.counts, 0, self.rank, self.letters)


class Gen(As3Elem):
    tag = "g"
    kind = "word"

    def _check(self):
        if len(self.letters) != 1:
            raise ValueError("Gen holds exactly one generator.")

    def to_expr(self):
        return Var(self.letters[0])


class Deg2Comm(As3Elem):
    tag = "c"

    def _check(self):
        if len(self.letters) != 2 or self.letters[0] == self.letters[1]:
            raise ValueError("Deg2Comm needs two distinct letters i < j.")

    def to_expr(self):
        i, j = self.letters
        return Comm(Var(i), Var(j))


class Deg2AComm(As3Elem):
    tag = "a"
    rank = 1

    def _check(self):
        if len(self.letters) != 2:
            raise ValueError("Deg2AComm needs two letters i <= j.")

    def to_expr(self):
        i, j = self.letters
        return AComm(Var(i), Var(j))


class Deg3(As3Elem):
    """
    One of the four degree-3 shapes over k1 <= k2 <= k3:
    0: {[k1,k2],k3}  1: {[k1,k3],k2}  2: {{k1,k2},k3}  3: {{k1,k3},k2}
    """

    __slots__ = ("shape",)

    def __init__(self, shape: int, letters):
        if shape not in (0, 1, 2, 3):
            raise ValueError(f"Unknown degree-3 shape {shape}.")
        object.__setattr__(self, "shape", shape)
        super().__init__(letters)

    def _check(self):
        if len(self.letters) != 3:
            raise ValueError("Deg3 needs three letters.")

    @property
    def tag(self) -> str:
        return f"t{self.shape}"

    @property
    def rank(self) -> int:
        return self.shape

    def to_expr(self):
        k1, k2, k3 = (Var(k) for k in self.letters)
        inner, outer = ((k2, k3), (k3, k2))[self.shape % 2]
        node = Comm if self.shape < 2 else AComm
        return AComm(node(k1, inner), outer)


class SortedWord(As3Elem):
    """{{...{{x_l1, x_l2}, x_l3}...}, x_ln} with l1 <= ... <= ln, n >= 4."""

    tag = "s"

    def _check(self):
        if len(self.letters) < COLLAPSE_DEGREE:
            raise ValueError("SortedWord needs at least four letters.")

    def to_expr(self):
        node = Var(self.letters[0])
        for letter in self.letters[1:]:
            node = AComm(node, Var(letter))
        return node

    @property
    def weight(self) -> Fraction:
        return Fraction(2) ** (self.degree - 1)


_TOKENS = {"g": Gen, "c": Deg2Comm, "a": Deg2AComm, "s": SortedWord}


def element_from_token(token: str) -> As3Elem:
    tag, _, body = token.partition(":")
    letters = tuple(int(x) for x in body.split("."))
    if tag in _TOKENS:
        return _TOKENS[tag](letters)
    if len(tag) == 2 and tag[0] == "t":
        return Deg3(int(tag[1]), letters)
    raise ValueError(f"Not a third-type basis element token: '{token}'.")


def bracket_candidates(d: Multidegree) -> List[As3Elem]:
    """The listed basis shapes over the sorted letters of ``d``, vanishing and repeated ones dropped."""
    letters = d.letters()
    if d.total == 1:
        return [Gen(letters)]
    if d.total == 2:
        return ([Deg2Comm(letters)] if letters[0] != letters[1] else []) + [Deg2AComm(letters)]
    if d.total == 3:
        out, seen = [], []
        for shape in range(4):
            element = Deg3(shape, letters)
            expansion = element.expand()
            if expansion and expansion not in seen:
                seen.append(expansion)
                out.append(element)
        return out
    return [SortedWord(letters)]


class As3NormalForm(BaseNormalForm):
    """
    Normal forms, basis enumeration and multiplication for the third type.

    :param self_test: check the degree >= 4 closed form against the oracle before using it.
    """

    allows_completion = False

    def __init__(self, oracle=None, self_test: bool = True):
        super().__init__(
            name="as3",
            description="Normal forms in the relatively free algebra of abc+bac-bca-cba = 0, "
                        "in commutator/anticommutator brackets.",
            instruction="""
- **Actions and Parameters**:
    - `nf`: Normal form of a polynomial in the bracket basis.
      - Parameters:
        - `text` (str): The expression, e.g. "x2*x1*x3*x4".
        - `via` (str | optional): "structural" (default) or "oracle".
    - `basis`: Basis brackets of one multidegree.
      - Parameters:
        - `multidegree` (str): e.g. "1:2,2:1".
    - `mul`: Product of two basis brackets.
      - Parameters:
        - `a`, `b`: basis elements as returned by `basis`.
            """,
            variety=AS3,
            oracle=oracle,
        )
        self.self_test = self_test
        self._collapse: Optional[bool] = None if self_test else True
        self._collapse_lock = threading.Lock()

    def chart_candidates(self, d: Multidegree):
        return bracket_candidates(d)

    def collapse_verified(self) -> bool:
        """Run (once) the oracle self-test of the degree >= 4 closed form."""
        if self._collapse is None:
            with self._collapse_lock:
                if self._collapse is None:
                    self._collapse = self._run_self_test()
        return self._collapse

    def _run_self_test(self) -> bool:
        for n in SELF_TEST_DEGREES:
            d = Multidegree.multilinear(n)
            chart = self.chart(d)
            expected = ElementPoly.single(SortedWord(d.letters()), Fraction(1, 2 ** (n - 1)))
            for word in d.words():
                if chart.coordinates(FreePoly._wrap({word: Fraction(1)})) != expected:
                    self._log_event(
                        f"Closed form fails for {word.render()}; degree >= {COLLAPSE_DEGREE} uses oracle charts",
                        "error",
                    )
                    return False
        self._log_event("Degree >= 4 closed form agrees with the oracle at multilinear 4 and 5", "debug")
        return True

    def nf_structural(self, part: FreePoly, d: Multidegree) -> As3Poly:
        if d.total < COLLAPSE_DEGREE or not self.collapse_verified():
            return self.chart(d).coordinates(part)
        total = sum(part.terms.values(), Fraction(0))
        return ElementPoly.single(SortedWord(d.letters()), total / 2 ** (d.total - 1))

    def basis_enum(self, d: Multidegree):
        if d.total >= COLLAPSE_DEGREE and self.collapse_verified():
            return [SortedWord(d.letters())]
        return self.chart(d).basis

    def structure_mul(self, a, b) -> As3Poly:
        """
        From total degree 4 on the commutator part of a*b vanishes and the
        anticommutator part is the merged sorted word: a*b = (wt(a)wt(b)/2^(n-1)) SortedWord,
        which is 1/2 SortedWord for anticommutator-type factors and 0 otherwise.
        """
        d = a.multidegree + b.multidegree
        if d.total >= COLLAPSE_DEGREE and self.collapse_verified():
            return ElementPoly.single(SortedWord(d.letters()), a.weight * b.weight / 2 ** (d.total - 1))
        return self.product_nf(a, b)

    def element_from_token(self, token: str):
        return element_from_token(token)

    def verify_polarization(self):
        """Check the polarized identities and the degree-4 derivation chain; see ``polarization_report``."""
        from malcev.pi.oracle.identities import polarization_report

        return polarization_report(self.oracle)
