"""
Normal forms in the relatively free second-type algebra.

From degree 5 on a word depends only on its first letter, its last letter and
its letter multiset, so it is a Pair(multiset, first, last). With i1 < i2 < i3
the three smallest distinct generators, the pairs (i1, r), (r, i1) for r != i1
and (i2, i3) form a basis, and any other pair rewrites onto them with the
three- and five-term rules of ``rewrite_pair``. Lower degrees, and multisets
with fewer than three distinct generators, are charted by the oracle.
"""
from fractions import Fraction
from typing import Dict, List, Tuple

from malcev.pi.errors import DegenerateMultiset, DegreeTooSmall
from malcev.pi.freealg.poly import FreePoly
from malcev.pi.freealg.words import Multidegree, Word
from malcev.pi.normalforms.base import As2Poly, BaseNormalForm, ElementPoly, LowDeg
from malcev.pi.oracle.tideal import AS2

PAIR_DEGREE = 5

# Word shapes of the degree 3 and 4 basis over sorted letters k1 <= k2 <= k3, l1 <= ... <= l4
DEGREE3_SHAPES = [(1, 0, 2), (0, 2, 1), (2, 0, 1), (1, 2, 0), (2, 1, 0)]
DEGREE4_SHAPES = [
    (0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 3, 1), (0, 3, 1, 2), (0, 3, 2, 1),
    (1, 2, 3, 0), (2, 3, 0, 1), (2, 3, 1, 0), (3, 2, 1, 0),
]


class Pair:
    """The class of the words f * (any interior order) * l with letter multiset ``multiset``."""

    __slots__ = ("multiset", "first", "last")
    kind = "pair"

    def __init__(self, multiset: Multidegree, first: int, last: int):
        if multiset.total < PAIR_DEGREE:
            raise DegreeTooSmall(multiset.total, PAIR_DEGREE)
        if not multiset.contains((first, last)):
            raise ValueError(f"({first}, {last}) does not fit the multiset {multiset.render()}.")
        object.__setattr__(self, "multiset", multiset)
        object.__setattr__(self, "first", first)
        object.__setattr__(self, "last", last)

    def __setattr__(self, name, value):
        raise AttributeError("Pair is immutable")

    def __eq__(self, other) -> bool:
        return (isinstance(other, Pair) and self.first == other.first and self.last == other.last
                and self.multiset == other.multiset)

    def __hash__(self) -> int:
        return hash(("p", self.multiset, self.first, self.last))

    def __repr__(self) -> str:
        return f"Pair{self.render()}"

    @property
    def multidegree(self) -> Multidegree:
        return self.multiset

    @property
    def degree(self) -> int:
        return self.multiset.total

    def interior(self) -> Tuple[int, ...]:
        rest = self.multiset.remove((self.first, self.last))
        return tuple(g for g in sorted(rest) for _ in range(rest[g]))

    def word(self) -> Word:
        return Word.trusted((self.first,) + self.interior() + (self.last,))

    def expand(self) -> FreePoly:
        return FreePoly._wrap({self.word(): Fraction(1)})

    def render(self) -> str:
        return f"(x{self.first}, x{self.last} | {self.multiset.render()})"

    def short(self) -> str:
        return f"(x{self.first},x{self.last})"

    @property
    def token(self) -> str:
        return f"p:{self.first}.{self.last}@{self.multiset.render()}"

    def sort_key(self) -> tuple:
        low = self.multiset.generators[0]
        group = 0 if self.first == low else 1 if self.last == low else 2
        return (self.degree, self.multiset.counts, 1, group, self.first, self.last)


def word_to_pair(w: Word) -> Tuple[Multidegree, int, int]:
    """
    Forget the interior of a word of length >= 5.

    :raises DegreeTooSmall: for shorter words.
    """
    if len(w) < PAIR_DEGREE:
        raise DegreeTooSmall(len(w), PAIR_DEGREE)
    return w.multidegree(), w.first, w.last


def leading_generators(d: Multidegree) -> Tuple[int, int, int]:
    generators = d.generators
    if len(generators) < 3:
        raise DegenerateMultiset(
            f"Multiset {d.render()} has {len(generators)} distinct generator(s); three are needed."
        )
    return generators[0], generators[1], generators[2]


def basis_pairs(d: Multidegree) -> List[Pair]:
    """(i1, r), (r, i1) for r != i1, then (i2, i3)."""
    i1, i2, i3 = leading_generators(d)
    others = [r for r in d.generators if r != i1]
    return [Pair(d, i1, r) for r in others] + [Pair(d, r, i1) for r in others] + [Pair(d, i2, i3)]


def is_basis_pair(d: Multidegree, first: int, last: int) -> bool:
    i1, i2, i3 = leading_generators(d)
    return (first == i1) != (last == i1) or (first, last) == (i2, i3)


def rewrite_pair(d: Multidegree, f: int, l: int) -> As2Poly:  # noqa: E741
    """
    Write the pair (f, l) of the multiset ``d`` in basis pairs.

    All rules are instances of (a,e) = (a,d) - (b,d) + (b,e) over letters of ``d``.

    :raises DegenerateMultiset: if ``d`` has fewer than three distinct generators.
    """
    i1, i2, i3 = leading_generators(d)
    Pair(d, f, l)

    def combo(*terms: Tuple[int, int, int]) -> As2Poly:
        out: Dict[Pair, Fraction] = {}
        for sign, a, b in terms:
            key = Pair(d, a, b)
            out[key] = out.get(key, 0) + sign
        return ElementPoly._wrap(out)

    if is_basis_pair(d, f, l):
        return combo((1, f, l))
    if f == i1 and l == i1:
        return combo((1, i1, i3), (1, i2, i1), (-1, i2, i3))
    if f == i2:
        return combo((1, i2, i3), (-1, i1, i3), (1, i1, l))
    if l == i3:
        return combo((1, f, i1), (-1, i2, i1), (1, i2, i3))
    return combo((1, f, i1), (-1, i2, i1), (1, i2, i3), (-1, i1, i3), (1, i1, l))


def degenerate_candidates(d: Multidegree) -> List[Pair]:
    """Every valid pair of a multiset with one or two distinct generators, basis-like ones first."""
    generators = d.generators
    i1 = generators[0]
    valid = [(f, l) for f in generators for l in generators if d.contains((f, l))]  # noqa: E741
    ordered = [(i1, r) for r in generators] + [(r, i1) for r in generators if r != i1]
    ordered += [pair for pair in valid if pair not in ordered]
    return [Pair(d, f, l) for f, l in ordered if (f, l) in valid]


def low_degree_candidates(d: Multidegree) -> List[LowDeg]:
    letters = d.letters()
    if d.total == 1:
        shapes = [(0,)]
    elif d.total == 2:
        shapes = [(0, 1), (1, 0)]
    elif d.total == 3:
        shapes = DEGREE3_SHAPES
    else:
        shapes = DEGREE4_SHAPES
    seen = []
    for shape in shapes:
        word = tuple(letters[i] for i in shape)
        if word not in seen:
            seen.append(word)
    return [LowDeg(Word.trusted(w)) for w in seen]


def element_from_token(token: str):
    kind, _, body = token.partition(":")
    if kind == "w":
        return LowDeg(Word(int(x) for x in body.split(".")))
    if kind == "p":
        ends, _, multiset = body.partition("@")
        first, last = (int(x) for x in ends.split("."))
        return Pair(Multidegree.parse(multiset), first, last)
    raise ValueError(f"Not a second-type basis element token: '{token}'.")


class As2NormalForm(BaseNormalForm):
    """
    Normal forms, basis enumeration and multiplication for the second type.
    """

    def __init__(self, oracle=None):
        super().__init__(
            name="as2",
            description="Normal forms in the relatively free algebra of abc-acb-bac+bca+cab-cba = 0. "
                        "Degree >= 5 classes are pairs (first letter, last letter) over the letter multiset.",
            instruction="""
- **Actions and Parameters**:
    - `nf`: Normal form of a polynomial in the pair/word basis.
      - Parameters:
        - `text` (str): The expression, e.g. "a*b*c*d*e - a*b*d*c*e".
        - `via` (str | optional): "structural" (default) or "oracle".
    - `basis`: Basis elements of one multidegree.
      - Parameters:
        - `multidegree` (str): e.g. "1:1,2:1,3:1,4:1,5:1".
    - `mul`: Product of two basis elements.
      - Parameters:
        - `a`, `b`: basis elements as returned by `basis`.
            """,
            variety=AS2,
            oracle=oracle,
        )

    @staticmethod
    def is_generic(d: Multidegree) -> bool:
        return d.total >= PAIR_DEGREE and len(d.generators) >= 3

    def chart_candidates(self, d: Multidegree):
        if d.total < PAIR_DEGREE:
            return low_degree_candidates(d)
        if self.is_generic(d):
            return basis_pairs(d)
        return degenerate_candidates(d)

    def nf_structural(self, part: FreePoly, d: Multidegree) -> As2Poly:
        if not self.is_generic(d):
            return self.chart(d).coordinates(part)
        return ElementPoly.total(
            rewrite_pair(d, word.first, word.last).scale(coeff) for word, coeff in part.items()
        )

    def basis_enum(self, d: Multidegree):
        if self.is_generic(d):
            return basis_pairs(d)
        return self.chart(d).basis

    def structure_mul(self, a, b) -> As2Poly:
        d = a.multidegree + b.multidegree
        if self.is_generic(d):
            return rewrite_pair(d, a.first, b.last)
        return self.product_nf(a, b)

    def element_from_token(self, token: str):
        return element_from_token(token)
