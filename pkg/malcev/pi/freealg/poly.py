"""
Sparse polynomials of the free associative algebra over the rationals.

A FreePoly maps Word -> Fraction and never stores a zero coefficient. All
operations return new polynomials; nothing is mutated after construction.
"""
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from sympy.combinatorics import Permutation

from malcev.pi.errors import MissingAssignment, MixedMultidegree, OutOfRange
from malcev.pi.freealg.words import Multidegree, Word, multidegree_of

Rational = Union[int, Fraction]
Letters = Tuple[int, ...]


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("Coefficients are exact rationals; floats are not accepted.")
    return Fraction(value)


def format_rational(value: Fraction) -> str:
    """Canonical text of a rational: ``"3"``, ``"-1/2"``."""
    return str(Fraction(value))


class FreePoly:
    """An immutable sparse polynomial: a finite map Word -> Fraction."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping] = None):
        cleaned: Dict[Word, Fraction] = {}
        for word, coeff in (terms or {}).items():
            if not isinstance(word, Word):
                word = Word(word)
            coeff = as_rational(coeff)
            if coeff:
                total = cleaned.get(word, 0) + coeff
                if total:
                    cleaned[word] = total
                else:
                    cleaned.pop(word, None)
        self._terms = cleaned
        self._hash = None

    @classmethod
    def _wrap(cls, terms: Dict[Word, Fraction]) -> "FreePoly":
        poly = object.__new__(cls)
        poly._terms = {w: c for w, c in terms.items() if c}
        poly._hash = None
        return poly

    @classmethod
    def from_letters(cls, terms: Mapping[Letters, Rational]) -> "FreePoly":
        """Build from raw letter tuples that are already known to be valid."""
        return cls._wrap({Word.trusted(tuple(k)): as_rational(v) for k, v in terms.items()})

    @classmethod
    def zero(cls) -> "FreePoly":
        return cls._wrap({})

    @classmethod
    def monomial(cls, letters: Iterable[int], coeff: Rational = 1) -> "FreePoly":
        return cls({Word(letters): coeff})

    @classmethod
    def generator(cls, index: int) -> "FreePoly":
        return cls.monomial((index,))

    @property
    def terms(self) -> Mapping[Word, Fraction]:
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, word) -> Fraction:
        if not isinstance(word, Word):
            word = Word(word)
        return self._terms.get(word, Fraction(0))

    def __iter__(self) -> Iterator[Word]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, FreePoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "FreePoly") -> "FreePoly":
        return poly_add(self, other)

    def __sub__(self, other: "FreePoly") -> "FreePoly":
        return poly_add(self, poly_scale(-1, other))

    def __neg__(self) -> "FreePoly":
        return poly_scale(-1, self)

    def __mul__(self, other) -> "FreePoly":
        if isinstance(other, FreePoly):
            return poly_mul(self, other)
        return poly_scale(other, self)

    def __rmul__(self, other) -> "FreePoly":
        return poly_scale(other, self)

    def __repr__(self) -> str:
        return f"FreePoly({render(self)})"

    @property
    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def words(self) -> List[Word]:
        """Support of the polynomial, deglex-greatest first."""
        return sorted(self._terms, key=Word.sort_key, reverse=True)

    def leading_word(self) -> Word:
        if not self._terms:
            raise ValueError("The zero polynomial has no leading word.")
        return max(self._terms, key=Word.sort_key)

    def generators(self) -> Tuple[int, ...]:
        return tuple(sorted({letter for w in self._terms for letter in w.letters}))

    @property
    def is_homogeneous(self) -> bool:
        return len({multidegree_of(w) for w in self._terms}) <= 1

    @property
    def is_multilinear(self) -> bool:
        return all(len(set(w.letters)) == len(w) for w in self._terms)

    def multidegree(self) -> Multidegree:
        """The common multidegree of all terms; MixedMultidegree when there is none."""
        degrees = {multidegree_of(w) for w in self._terms}
        if len(degrees) != 1:
            raise MixedMultidegree(
                "Polynomial has no single multidegree "
                f"({', '.join(sorted(d.render() for d in degrees)) or 'zero polynomial'})."
            )
        return degrees.pop()


def poly_add(p: FreePoly, q: FreePoly) -> FreePoly:
    terms = dict(p._terms)
    for word, coeff in q._terms.items():
        terms[word] = terms.get(word, 0) + coeff
    return FreePoly._wrap(terms)


def poly_sum(polys: Iterable[FreePoly]) -> FreePoly:
    terms: Dict[Word, Fraction] = {}
    for p in polys:
        for word, coeff in p._terms.items():
            terms[word] = terms.get(word, 0) + coeff
    return FreePoly._wrap(terms)


def poly_scale(c: Rational, p: FreePoly) -> FreePoly:
    c = as_rational(c)
    if not c:
        return FreePoly.zero()
    return FreePoly._wrap({w: c * coeff for w, coeff in p._terms.items()})


def poly_mul(p: FreePoly, q: FreePoly) -> FreePoly:
    terms: Dict[Word, Fraction] = {}
    for u, a in p._terms.items():
        for v, b in q._terms.items():
            w = Word.trusted(u.letters + v.letters)
            terms[w] = terms.get(w, 0) + a * b
    return FreePoly._wrap(terms)


def poly_product(factors: Sequence[FreePoly]) -> FreePoly:
    if not factors:
        raise ValueError("An empty product has no value in a non-unital algebra.")
    result = factors[0]
    for factor in factors[1:]:
        result = poly_mul(result, factor)
    return result


def commutator(p: FreePoly, q: FreePoly) -> FreePoly:
    return poly_add(poly_mul(p, q), poly_scale(-1, poly_mul(q, p)))


def anticommutator(p: FreePoly, q: FreePoly) -> FreePoly:
    return poly_add(poly_mul(p, q), poly_mul(q, p))


def substitute(p: FreePoly, assignment: Mapping[int, FreePoly]) -> FreePoly:
    """
    Apply the algebra endomorphism x_i -> assignment[i].

    :raises MissingAssignment: if a generator of ``p`` has no image.
    """
    images: Dict[Word, FreePoly] = {}
    terms: Dict[Word, Fraction] = {}
    for word, coeff in p._terms.items():
        image = images.get(word)
        if image is None:
            factors = []
            for letter in word.letters:
                if letter not in assignment:
                    raise MissingAssignment(letter)
                factors.append(assignment[letter])
            image = images[word] = poly_product(factors)
        for w, c in image._terms.items():
            terms[w] = terms.get(w, 0) + coeff * c
    return FreePoly._wrap(terms)


def as_permutation(sigma) -> Permutation:
    return sigma if isinstance(sigma, Permutation) else Permutation(list(sigma))


def act_permutation(sigma, p: FreePoly) -> FreePoly:
    """
    Relabel x_i -> x_{sigma(i)}.

    ``sigma`` is a sympy ``Permutation`` on {0, ..., n-1} acting on x_1..x_n
    (x_i is point i-1), or its array form. Sympy composes left to right, so
    ``act(tau * sigma, p) == act(sigma, act(tau, p))``.

    :raises OutOfRange: if ``p`` involves x_k with k > n.
    """
    sigma = as_permutation(sigma)
    image = sigma.array_form
    n = len(image)
    terms: Dict[Word, Fraction] = {}
    for word, coeff in p._terms.items():
        letters = []
        for letter in word.letters:
            if letter > n:
                raise OutOfRange(letter, n)
            letters.append(image[letter - 1] + 1)
        terms[Word.trusted(tuple(letters))] = coeff
    return FreePoly._wrap(terms)


def homogeneous_component(p: FreePoly, d: Multidegree) -> FreePoly:
    return FreePoly._wrap({w: c for w, c in p._terms.items() if multidegree_of(w) == d})


def homogeneous_components(p: FreePoly) -> Dict[Multidegree, FreePoly]:
    """Split ``p`` by multidegree; keys come out in increasing multidegree order."""
    parts: Dict[Multidegree, Dict[Word, Fraction]] = {}
    for w, c in p._terms.items():
        parts.setdefault(multidegree_of(w), {})[w] = c
    return {d: FreePoly._wrap(parts[d]) for d in sorted(parts)}


def render_term(coeff: Fraction, body: str) -> Tuple[str, str]:
    """Sign and magnitude text of one term, with unit coefficients elided."""
    sign = "-" if coeff < 0 else "+"
    magnitude = abs(coeff)
    if magnitude == 1:
        return sign, body
    return sign, f"{format_rational(magnitude)}*{body}"


def join_terms(pieces: Iterable[Tuple[str, str]]) -> str:
    out = ""
    for sign, text in pieces:
        if not out:
            out = f"-{text}" if sign == "-" else text
        else:
            out += f" {sign} {text}"
    return out or "0"


def render(p: FreePoly) -> str:
    """Canonical text, deglex-greatest word first, words as explicit ``*`` products."""
    return join_terms(render_term(p._terms[w], w.render()) for w in p.words())
