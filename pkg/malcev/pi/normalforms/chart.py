"""
Coordinates in a chosen basis of one quotient slice, computed by elimination.

Columns are the words of the multidegree followed by one tag column T_i per
candidate basis element b_i; rows are the relation basis plus b_i - T_i.
Words outrank tags, and among tags the earliest candidate ranks lowest, so
after full reduction:

* the tags that lead no row mark the greedy independent subset of the
  candidates (in listed order);
* words that lead no row are labels the candidates failed to cover;
* reducing a polynomial leaves it supported on exactly those two sets.
"""
from fractions import Fraction
from typing import Dict, List, Sequence

from malcev.pi.errors import MalcevError, MixedMultidegree
from malcev.pi.freealg.poly import FreePoly
from malcev.pi.oracle.echelon import Eliminator, RelationBasis
from malcev.pi.normalforms.base import ElementPoly, LowDeg
from malcev.pi.utils.events import EventLogger


class IncompleteBasis(MalcevError):
    """The candidate elements do not span a quotient slice."""


class CosetChart(EventLogger):
    def __init__(self, relations: RelationBasis, candidates: Sequence[object], allow_completion: bool = True):
        self.multidegree = relations.multidegree
        self.columns = relations.columns
        self.index = relations.index
        width = len(self.columns)
        count = len(candidates)
        self.candidates = list(candidates)
        # tag of candidate i; the first candidate gets the largest (lowest-ranked) column
        self._tag = {i: width + count - 1 - i for i in range(count)}
        self._eliminator = Eliminator()

        for row in relations.row_maps():
            self._eliminator.add(row)
        for i, element in enumerate(self.candidates):
            row = relations.to_row(element.expand())
            row[self._tag[i]] = Fraction(-1)
            self._eliminator.add(row)
        self._eliminator.finalize()

        pivots = self._eliminator.pivots
        self._labels: Dict[int, object] = {}
        chosen = [i for i in range(count) if self._tag[i] not in pivots]
        for i in chosen:
            self._labels[self._tag[i]] = self.candidates[i]
        completion = [c for c in range(width) if c not in pivots]
        if completion and not allow_completion:
            raise IncompleteBasis(
                f"Candidates leave {len(completion)} word(s) uncovered at {self.multidegree.render()}."
            )
        for c in completion:
            self._labels[c] = LowDeg(self.columns[c])
        self.basis: List[object] = [self.candidates[i] for i in chosen] + [LowDeg(self.columns[c]) for c in completion]
        if completion:
            self._log_event(
                f"{self.multidegree.render()}: {len(completion)} completion word(s) added to the basis", "debug"
            )

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def coordinates(self, p: FreePoly) -> ElementPoly:
        """Write the homogeneous ``p`` in this chart's basis."""
        if not p:
            return ElementPoly()
        row = {}
        for word, coeff in p.items():
            column = self.index.get(word)
            if column is None:
                raise MixedMultidegree(f"Word {word.render()} is not of multidegree {self.multidegree.render()}.")
            row[column] = coeff
        remainder, _ = self._eliminator.reduce(row)
        return ElementPoly._wrap({self._labels[c]: v for c, v in remainder.items()})
