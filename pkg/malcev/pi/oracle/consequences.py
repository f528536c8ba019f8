"""
Consequences u*f(m1, m2, m3)*v of a multilinear degree-3 identity f.

Every tuple (u, m1, m2, m3, v) of the right multidegree is read off a word
w = u m1 m2 m3 v of that multidegree together with a split of w into five
consecutive pieces, the middle three nonempty and u, v possibly absent. By
multilinearity of f and characteristic 0 these span the T-ideal slice.
"""
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterator, List, Sequence, Tuple

from malcev.pi.errors import DegreeTooSmall, NotMultilinear
from malcev.pi.freealg.poly import FreePoly
from malcev.pi.freealg.words import Multidegree

Letters = Tuple[int, ...]
Pattern = List[Tuple[Tuple[int, int, int], Fraction]]


def identity_pattern(f: FreePoly) -> Pattern:
    """
    Read a multilinear degree-3 polynomial in x1, x2, x3 as (order, coeff) pairs.

    ``order`` lists which argument sits in each position, 0-based: the word
    x3*x1*x2 becomes (2, 0, 1).
    """
    if not f or f.degree != 3 or not f.is_homogeneous or f.multidegree() != Multidegree.multilinear(3):
        raise NotMultilinear("A defining identity must be multilinear of degree 3 in x1, x2, x3.")
    return [(tuple(letter - 1 for letter in word.letters), coeff) for word, coeff in f.items()]


def splits(length: int) -> Iterator[Tuple[int, int, int, int]]:
    """Cut points 0 <= a < b < c < e <= length giving u=w[:a], m1..m3, v=w[e:]."""
    for a in range(0, length - 2):
        for b, c in combinations(range(a + 1, length), 2):
            for e in range(c + 1, length + 1):
                yield a, b, c, e


def iter_consequences(pattern: Pattern, words: Sequence[Letters]) -> Iterator[Dict[Letters, Fraction]]:
    """Yield each consequence as a letter-tuple -> coefficient map, monic in its greatest word."""
    if not words:
        return
    length = len(words[0])
    cuts = list(splits(length))
    for w in words:
        for a, b, c, e in cuts:
            u, v = w[:a], w[e:]
            parts = (w[a:b], w[b:c], w[c:e])
            row: Dict[Letters, Fraction] = {}
            for order, coeff in pattern:
                key = u + parts[order[0]] + parts[order[1]] + parts[order[2]] + v
                row[key] = row.get(key, 0) + coeff
            row = {k: x for k, x in row.items() if x}
            if not row:
                continue
            lead = max(row)
            scale = 1 / Fraction(row[lead])
            yield {k: x * scale for k, x in row.items()}


def consequence_rows(f: FreePoly, d: Multidegree) -> List[Dict[Letters, Fraction]]:
    """Deduplicated consequence rows of ``f`` at ``d``, in generation order."""
    if d.total < 3:
        raise DegreeTooSmall(d.total, 3)
    seen = set()
    rows = []
    words = [w.letters for w in d.words()]
    for row in iter_consequences(identity_pattern(f), words):
        key = frozenset(row.items())
        if key not in seen:
            seen.add(key)
            rows.append(row)
    return rows


def generate_consequences(v, d: Multidegree) -> List[FreePoly]:
    """
    All consequences of the variety ``v``'s defining identity at multidegree ``d``.

    :raises DegreeTooSmall: if ``d`` has total degree below 3.
    """
    identity = v.identity if hasattr(v, "identity") else v
    return [FreePoly.from_letters(row) for row in consequence_rows(identity, d)]
