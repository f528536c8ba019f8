"""
Exact sparse Gaussian elimination over the rationals.

Rows are ``dict[int, Fraction]`` over integer column indices. Column 0 is the
greatest column, so a row's pivot is its smallest index. Rows are first added
in semi-echelon form (each new row is reduced only far enough to find a free
pivot) and ``finalize`` interreduces once into fully reduced echelon form.
"""
from fractions import Fraction
from heapq import heapify, heappop, heappush
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from malcev.pi.errors import MixedMultidegree
from malcev.pi.freealg.poly import FreePoly
from malcev.pi.freealg.words import Multidegree, Word

Row = Dict[int, Fraction]
Combination = Dict[int, Fraction]


def _axpy(target: Dict[int, Fraction], coeff: Fraction, source: Mapping[int, Fraction]) -> None:
    """target -= coeff * source, dropping cancelled entries."""
    for key, value in source.items():
        new = target.get(key, 0) - coeff * value
        if new:
            target[key] = new
        else:
            target.pop(key, None)


class Eliminator:
    """
    Incremental row reduction with optional provenance.

    With ``track=True`` every pivot row carries the combination of input rows
    (by the id passed to ``add``) it was built from.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.pivots: Dict[int, Row] = {}
        self.origins: Dict[int, Combination] = {}
        self.finalized = False

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row: Mapping[int, Fraction], origin: Optional[int] = None) -> bool:
        """Insert ``row``; returns True when it raised the rank."""
        work = dict(row)
        combo: Combination = {origin: Fraction(1)} if self.track else {}
        heap = list(work)
        heapify(heap)
        while heap:
            column = heappop(heap)
            coeff = work.get(column)
            if not coeff:
                continue
            pivot = self.pivots.get(column)
            if pivot is None:
                scale = 1 / Fraction(coeff)
                self.pivots[column] = {k: v * scale for k, v in work.items()}
                if self.track:
                    self.origins[column] = {k: v * scale for k, v in combo.items()}
                self.finalized = False
                return True
            for key in pivot:
                if key not in work:
                    heappush(heap, key)
            _axpy(work, coeff, pivot)
            if self.track:
                _axpy(combo, coeff, self.origins[column])
        return False

    def finalize(self) -> None:
        """Interreduce the pivot rows into fully reduced echelon form."""
        if self.finalized:
            return
        for column in sorted(self.pivots, reverse=True):
            row = self.pivots[column]
            for key in sorted(k for k in row if k != column and k in self.pivots):
                coeff = row.get(key)
                if coeff:
                    _axpy(row, coeff, self.pivots[key])
                    if self.track:
                        _axpy(self.origins[column], coeff, self.origins[key])
        self.finalized = True

    def reduce(self, row: Mapping[int, Fraction]) -> Tuple[Row, Combination]:
        """
        Reduce ``row`` against the finalized pivots.

        :return: the remainder (supported on non-pivot columns) and the
                 combination of pivot rows that was subtracted, by pivot column.
        """
        self.finalize()
        work = dict(row)
        used: Combination = {}
        for column in sorted(k for k in row if k in self.pivots):
            coeff = work.get(column)
            if coeff:
                _axpy(work, coeff, self.pivots[column])
                used[column] = coeff
        return work, used


class RelationBasis:
    """
    Fully reduced row echelon form of relation polynomials at one multidegree.

    ``columns`` lists the words of the multidegree, deglex-greatest first; each
    row is monic in its leading (greatest) word and no row contains another
    row's leading word.
    """

    def __init__(self, multidegree: Optional[Multidegree], columns: Sequence[Word], eliminator: Eliminator,
                 sources: Optional[List[FreePoly]] = None):
        eliminator.finalize()
        self.multidegree = multidegree
        self.columns = list(columns)
        self.index = {w: i for i, w in enumerate(self.columns)}
        self._eliminator = eliminator
        self.sources = sources
        self._rows: Optional[List[FreePoly]] = None

    @property
    def rank(self) -> int:
        return self._eliminator.rank

    @property
    def free_dimension(self) -> int:
        return len(self.columns)

    @property
    def tracks_provenance(self) -> bool:
        return self._eliminator.track

    @property
    def pivot_columns(self) -> List[int]:
        return sorted(self._eliminator.pivots)

    def row_maps(self) -> List[Row]:
        """The rows as column -> coefficient maps, in pivot order."""
        return [self._eliminator.pivots[c] for c in self.pivot_columns]

    @property
    def rows(self) -> List[FreePoly]:
        if self._rows is None:
            self._rows = [self.to_poly(self._eliminator.pivots[c]) for c in self.pivot_columns]
        return self._rows

    @property
    def leading(self) -> Dict[Word, int]:
        return {self.columns[c]: i for i, c in enumerate(self.pivot_columns)}

    def non_leading_words(self) -> List[Word]:
        """Coset labels: the words that lead no row, greatest first."""
        pivots = self._eliminator.pivots
        return [w for i, w in enumerate(self.columns) if i not in pivots]

    def to_row(self, p: FreePoly) -> Row:
        row: Row = {}
        for word, coeff in p.items():
            column = self.index.get(word)
            if column is None:
                raise MixedMultidegree(
                    f"Word {word.render()} does not have multidegree "
                    f"{self.multidegree.render() if self.multidegree else 'of an empty basis'}."
                )
            row[column] = coeff
        return row

    def to_poly(self, row: Mapping[int, Fraction]) -> FreePoly:
        return FreePoly._wrap({self.columns[c]: v for c, v in row.items()})

    def reduce(self, p: FreePoly) -> FreePoly:
        if not p:
            return FreePoly.zero()
        remainder, _ = self._eliminator.reduce(self.to_row(p))
        return self.to_poly(remainder)

    def certificate(self, p: FreePoly) -> Optional[List[Tuple[FreePoly, Fraction]]]:
        """
        Express ``p`` as a rational combination of the source rows.

        :return: ``[(source, coefficient), ...]`` or None when ``p`` is not in the span.
        :raises ValueError: if the basis was built without provenance.
        """
        if not self.tracks_provenance:
            raise ValueError("This relation basis was built without provenance tracking.")
        if not p:
            return []
        remainder, used = self._eliminator.reduce(self.to_row(p))
        if remainder:
            return None
        combination: Combination = {}
        for column, coeff in used.items():
            for source, weight in self._eliminator.origins[column].items():
                combination[source] = combination.get(source, 0) + coeff * weight
        return [(self.sources[i], c) for i, c in sorted(combination.items()) if c]


def echelonize(rows: Iterable[FreePoly], track: bool = False) -> RelationBasis:
    """
    Row-reduce polynomials sharing one multidegree.

    :raises MixedMultidegree: when the nonzero rows do not share a multidegree.
    """
    rows = [r for r in rows if r]
    if not rows:
        return RelationBasis(None, [], Eliminator(track), [] if track else None)
    multidegree = rows[0].multidegree()
    for r in rows[1:]:
        if r.multidegree() != multidegree:
            raise MixedMultidegree(
                f"Rows of multidegree {multidegree.render()} and {r.multidegree().render()} mixed."
            )
    columns = multidegree.words()
    eliminator = Eliminator(track)
    basis = RelationBasis(multidegree, columns, eliminator, rows if track else None)
    for i, r in enumerate(rows):
        eliminator.add(basis.to_row(r), i)
    eliminator.finalize()
    return basis


def reduce(p: FreePoly, basis: RelationBasis) -> FreePoly:
    """
    Canonical representative of ``p`` modulo the span of ``basis``.

    :raises MixedMultidegree: if ``p`` is not of the basis's multidegree.
    """
    return basis.reduce(p)
