"""
Words and multidegrees of the free non-unital associative algebra on x1, x2, ...

A Word is a nonempty tuple of generator indices (1-based). Words are totally
ordered degree-then-lexicographically ("deglex"); the greatest word of a
polynomial is its leading word throughout the library.
"""
from collections import Counter
from functools import total_ordering
from math import factorial
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple

from sympy.utilities.iterables import multiset_permutations

from malcev.pi.errors import InvalidMultidegree, OutOfRange

GenIndex = int


def check_generator(index: int) -> int:
    if isinstance(index, bool) or not isinstance(index, int) or index < 1:
        raise OutOfRange(index)
    return index


@total_ordering
class Word:
    """An immutable nonempty word x_{i1} x_{i2} ... x_{in}."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[int]):
        letters = tuple(letters)
        if not letters:
            raise ValueError("A Word must contain at least one letter (the algebra has no unit).")
        for letter in letters:
            check_generator(letter)
        object.__setattr__(self, "letters", letters)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def trusted(cls, letters: Tuple[int, ...]) -> "Word":
        """Wrap an already validated letter tuple without re-checking it."""
        word = object.__new__(cls)
        object.__setattr__(word, "letters", letters)
        return word

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, item):
        return self.letters[item]

    def __hash__(self) -> int:
        return hash(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __lt__(self, other: "Word") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"Word({self.render()})"

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return len(self.letters), self.letters

    @property
    def degree(self) -> int:
        return len(self.letters)

    @property
    def first(self) -> int:
        return self.letters[0]

    @property
    def last(self) -> int:
        return self.letters[-1]

    def concat(self, other: "Word") -> "Word":
        return Word.trusted(self.letters + other.letters)

    def relabel(self, mapping: Mapping[int, int]) -> "Word":
        return Word(mapping[letter] for letter in self.letters)

    def multidegree(self) -> "Multidegree":
        return Multidegree.of(self.letters)

    def render(self) -> str:
        return "*".join(f"x{letter}" for letter in self.letters)


def word_concat(a: Word, b: Word) -> Word:
    return a.concat(b)


@total_ordering
class Multidegree:
    """
    A finite multiset of generators: generator -> positive multiplicity.

    Stored as a sorted tuple of (generator, multiplicity) pairs so it can key
    caches and serialize deterministically.
    """

    __slots__ = ("counts",)

    def __init__(self, counts: Mapping[int, int]):
        items = []
        for generator, multiplicity in sorted(counts.items()):
            check_generator(generator)
            if multiplicity < 0:
                raise InvalidMultidegree(f"Negative multiplicity for x{generator}.")
            if multiplicity:
                items.append((generator, int(multiplicity)))
        if not items:
            raise InvalidMultidegree("A Multidegree must have total degree >= 1.")
        object.__setattr__(self, "counts", tuple(items))

    def __setattr__(self, name, value):
        raise AttributeError("Multidegree is immutable")

    @classmethod
    def of(cls, letters: Iterable[int]) -> "Multidegree":
        return cls(Counter(letters))

    @classmethod
    def multilinear(cls, n: int) -> "Multidegree":
        return cls({i: 1 for i in range(1, n + 1)})

    @classmethod
    def parse(cls, text: str) -> "Multidegree":
        """Read ``"1:2,2:1"`` (generator:multiplicity, comma separated)."""
        counts: Dict[int, int] = {}
        for chunk in text.replace(" ", "").split(","):
            if not chunk:
                continue
            generator, _, multiplicity = chunk.partition(":")
            try:
                g = int(generator.lstrip("x"))
                counts[g] = counts.get(g, 0) + (int(multiplicity) if multiplicity else 1)
            except ValueError:
                raise InvalidMultidegree(f"Cannot read multidegree component '{chunk}'.") from None
        return cls(counts)

    def __hash__(self) -> int:
        return hash(self.counts)

    def __eq__(self, other) -> bool:
        return isinstance(other, Multidegree) and self.counts == other.counts

    def __lt__(self, other: "Multidegree") -> bool:
        return (self.total, self.counts) < (other.total, other.counts)

    def __repr__(self) -> str:
        return f"Multidegree({self.render()})"

    def __add__(self, other: "Multidegree") -> "Multidegree":
        merged = dict(self.counts)
        for generator, multiplicity in other.counts:
            merged[generator] = merged.get(generator, 0) + multiplicity
        return Multidegree(merged)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.counts)

    def count(self, generator: int) -> int:
        return dict(self.counts).get(generator, 0)

    @property
    def total(self) -> int:
        return sum(m for _, m in self.counts)

    @property
    def generators(self) -> Tuple[int, ...]:
        return tuple(g for g, _ in self.counts)

    @property
    def is_multilinear(self) -> bool:
        return all(m == 1 for _, m in self.counts)

    def letters(self) -> Tuple[int, ...]:
        """The multiset as a nondecreasing letter sequence."""
        return tuple(g for g, m in self.counts for _ in range(m))

    def contains(self, letters: Iterable[int]) -> bool:
        """True when ``letters`` (with multiplicity) form a sub-multiset."""
        need = Counter(letters)
        mine = dict(self.counts)
        return all(mine.get(g, 0) >= m for g, m in need.items())

    def remove(self, letters: Iterable[int]) -> Dict[int, int]:
        """Multiplicities left after taking ``letters`` out (may be empty)."""
        rest = dict(self.counts)
        for letter in letters:
            rest[letter] -= 1
        return {g: m for g, m in rest.items() if m}

    def free_dimension(self) -> int:
        """Number of distinct words with this multidegree (a multinomial coefficient)."""
        result = factorial(self.total)
        for _, m in self.counts:
            result //= factorial(m)
        return result

    def words(self) -> List[Word]:
        """All words of this multidegree, deglex-greatest first."""
        words = [Word.trusted(tuple(p)) for p in multiset_permutations(list(self.letters()))]
        words.sort(key=Word.sort_key, reverse=True)
        return words

    def render(self) -> str:
        return ",".join(f"{g}:{m}" for g, m in self.counts)


def multidegree_of(w: Word) -> Multidegree:
    return w.multidegree()
