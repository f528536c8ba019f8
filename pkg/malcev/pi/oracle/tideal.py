"""
The T-ideal oracle: relation bases per (variety, multidegree), coset reduction,
membership with certificates and quotient dimensions.
"""
import threading
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from malcev.pi.freealg.poly import FreePoly, homogeneous_components, poly_sum, render
from malcev.pi.freealg.words import Multidegree
from malcev.pi.errors import LimitExceeded
from malcev.pi.oracle.consequences import consequence_rows, identity_pattern
from malcev.pi.oracle.echelon import Eliminator, RelationBasis
from malcev.pi.parsing.expr import parse_poly
from malcev.pi.utils.events import EventLogger


@dataclass(frozen=True)
class Variety:
    """
    A variety of associative algebras given by one multilinear degree-3 identity.

    ``canonical`` is the rendered identity; caches are keyed by it so that two
    custom varieties with the same identity share relation bases.
    """
    name: str
    identity: FreePoly = field(compare=False)
    description: str = field(default="", compare=False)
    custom: bool = field(default=False, compare=False)
    canonical: str = field(default="", init=False)

    def __post_init__(self):
        identity_pattern(self.identity)
        object.__setattr__(self, "canonical", render(self.identity))

    @classmethod
    def from_text(cls, name: str, text: str, description: str = "", custom: bool = False) -> "Variety":
        return cls(name, parse_poly(text), description, custom)

    @classmethod
    def custom_identity(cls, text: str) -> "Variety":
        identity = parse_poly(text)
        return cls(f"CUSTOM[{render(identity)}]", identity, "User-supplied degree-3 identity.", True)


AS1 = Variety.from_text(
    "AS1", "a*b*c + a*c*b + b*a*c + b*c*a + c*a*b + c*b*a",
    "First type: the full symmetrization of abc vanishes; nilpotent of index 6.",
)
AS2 = Variety.from_text(
    "AS2", "a*b*c - a*c*b - b*a*c + b*c*a + c*a*b - c*b*a",
    "Second type: the alternating sum of abc vanishes; degree >= 5 words depend on their end letters only.",
)
AS3 = Variety.from_text(
    "AS3", "a*b*c + b*a*c - b*c*a - c*b*a",
    "Third type: abc+bac-bca-cba = 0; degree >= 4 behaves like a free commutative algebra.",
)


@dataclass
class Verdict:
    """Outcome of ``is_identity(..., certificate=True)``."""
    holds: bool
    certificates: Dict[Multidegree, List[Tuple[FreePoly, Fraction]]] = field(default_factory=dict)
    failing: List[Multidegree] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.holds


class TIdealOracle(EventLogger):
    """
    Brute-force ground truth for membership in a variety's T-ideal.

    Relation bases are cached per (identity, multidegree, provenance). The
    cache has one writer at a time; finished bases are read without locking.

    :param max_degree: refuse multidegrees of larger total degree (None: no limit).
    """

    def __init__(self, max_degree: Optional[int] = None):
        self.max_degree = max_degree
        self._bases: Dict[Tuple[str, Multidegree, bool], RelationBasis] = {}
        self._lock = threading.Lock()

    def basis(self, v: Variety, d: Multidegree, certificate: bool = False) -> RelationBasis:
        key = (v.canonical, d, certificate)
        cached = self._bases.get(key)
        if cached is not None:
            return cached
        if not certificate:
            tracked = self._bases.get((v.canonical, d, True))
            if tracked is not None:
                return tracked
        with self._lock:
            cached = self._bases.get(key)
            if cached is None:
                cached = self._bases[key] = self._build(v, d, certificate)
        return cached

    def _build(self, v: Variety, d: Multidegree, track: bool) -> RelationBasis:
        if self.max_degree is not None and d.total > self.max_degree:
            raise LimitExceeded(d.total, self.max_degree)
        columns = d.words()
        eliminator = Eliminator(track)
        if d.total < 3:
            return RelationBasis(d, columns, eliminator, [] if track else None)

        started = time.perf_counter()
        rows = consequence_rows(v.identity, d)
        basis = RelationBasis(d, columns, eliminator, None)
        index = {w.letters: i for i, w in enumerate(columns)}
        full = len(columns)
        for i, row in enumerate(rows):
            eliminator.add({index[k]: c for k, c in row.items()}, i)
            if eliminator.rank == full and not track:
                break
        if track:
            basis.sources = [FreePoly.from_letters(row) for row in rows]
        eliminator.finalize()
        self._log_event(
            f"{v.name} at {d.render()}: {len(rows)} consequences, rank {eliminator.rank}/{full}, "
            f"{time.perf_counter() - started:.2f}s",
            "info",
        )
        return basis

    def reduce(self, p: FreePoly, v: Variety) -> FreePoly:
        """Reduce every homogeneous component of ``p`` to its canonical representative."""
        return poly_sum(self.basis(v, d).reduce(part) for d, part in homogeneous_components(p).items())

    def dim_quotient(self, v: Variety, d: Multidegree) -> int:
        basis = self.basis(v, d)
        return basis.free_dimension - basis.rank

    def is_identity(self, p: FreePoly, v: Variety, certificate: bool = False) -> Union[bool, Verdict]:
        """
        True iff every homogeneous component of ``p`` lies in the T-ideal of ``v``.

        With ``certificate=True`` a Verdict is returned carrying, per component,
        the consequences and rational coefficients that sum to it.
        """
        if not certificate:
            return not self.reduce(p, v)
        verdict = Verdict(True)
        for d, part in homogeneous_components(p).items():
            combination = self.basis(v, d, certificate=True).certificate(part)
            if combination is None:
                verdict.holds = False
                verdict.failing.append(d)
            else:
                verdict.certificates[d] = combination
        return verdict

    def cached_bases(self) -> int:
        return len(self._bases)


_default_oracle = TIdealOracle()


def default_oracle() -> TIdealOracle:
    return _default_oracle


def dim_quotient(v: Variety, d: Multidegree, oracle: Optional[TIdealOracle] = None) -> int:
    return (oracle or _default_oracle).dim_quotient(v, d)


def is_identity(p: FreePoly, v: Variety, certificate: bool = False,
                oracle: Optional[TIdealOracle] = None) -> Union[bool, Verdict]:
    return (oracle or _default_oracle).is_identity(p, v, certificate)
