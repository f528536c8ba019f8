"""
Run catalogued identities through the oracle, and their perturbed mutants.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from malcev.pi.defaults.identities import (
    CORRUPTED_POLARIZATION,
    DERIVATION,
    POLARIZATION,
    VANISHING,
    IdentityEntry,
    identities_for,
)
from malcev.pi.freealg.poly import FreePoly
from malcev.pi.freealg.words import Multidegree
from malcev.pi.oracle.tideal import AS3, TIdealOracle, Variety, default_oracle
from malcev.pi.parsing.expr import BracketExpr, Prod, Scalar, Scaled, Sum, Var, expand, parse


@dataclass
class IdentityResult:
    name: str
    text: str
    expected: bool
    holds: bool
    certificates: Dict[Multidegree, List[Tuple[FreePoly, Fraction]]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.holds == self.expected


def _generators(e: BracketExpr) -> List[int]:
    """Generator indices of ``e`` in order of first appearance."""
    if isinstance(e, Var):
        return [e.index]
    if isinstance(e, Scalar):
        return []
    if isinstance(e, Scaled):
        return _generators(e.body)
    children = e.terms if isinstance(e, Sum) else e.factors if isinstance(e, Prod) else (e.left, e.right)
    out: List[int] = []
    for child in children:
        out += [g for g in _generators(child) if g not in out]
    return out


def mutate(text: str) -> FreePoly:
    """
    Perturb one coefficient: add 1 to the coefficient of the greatest word of
    the expansion. An expansion that is identically zero gets the word of its
    generators, in order of first appearance, instead.
    """
    e = parse(text)
    p = expand(e)
    if p:
        return p + FreePoly.monomial(p.leading_word().letters)
    return FreePoly.monomial(_generators(e))


def check_entry(entry: IdentityEntry, variety: Variety, oracle: TIdealOracle,
                poly: Optional[FreePoly] = None, expected: Optional[bool] = None,
                name: Optional[str] = None) -> IdentityResult:
    poly = expand(parse(entry.text)) if poly is None else poly
    verdict = oracle.is_identity(poly, variety, certificate=True)
    return IdentityResult(
        name=name or entry.name,
        text=entry.text,
        expected=entry.expected if expected is None else expected,
        holds=verdict.holds,
        certificates=verdict.certificates,
    )


def run_identity_suite(variety: Variety, oracle: Optional[TIdealOracle] = None,
                       entries: Optional[Iterable[IdentityEntry]] = None) -> List[IdentityResult]:
    """Check every catalogue entry of ``variety`` (or the given ``entries``) with certificates."""
    oracle = oracle or default_oracle()
    entries = identities_for(variety.name) if entries is None else entries
    return [check_entry(entry, variety, oracle) for entry in entries]


def run_mutation_suite(variety: Variety, oracle: Optional[TIdealOracle] = None,
                       entries: Optional[Iterable[IdentityEntry]] = None) -> List[IdentityResult]:
    """Every mutant of an expected identity is expected to fail."""
    oracle = oracle or default_oracle()
    entries = identities_for(variety.name) if entries is None else entries
    return [
        check_entry(entry, variety, oracle, poly=mutate(entry.text), expected=False, name=f"{entry.name}~mutant")
        for entry in entries
        if entry.expected
    ]


def polarization_report(oracle: Optional[TIdealOracle] = None) -> List[IdentityResult]:
    """The polarized third-type identities, the degree-4 vanishing list and its derivation, and one corrupted form."""
    entries = POLARIZATION + VANISHING + DERIVATION + [CORRUPTED_POLARIZATION]
    return run_identity_suite(AS3, oracle, entries)
