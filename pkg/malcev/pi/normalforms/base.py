"""
Shared pieces of the normal-form engines: the ElementPoly container, the
LowDeg word element and the BaseNormalForm engine contract.
"""
import threading
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from malcev.pi.freealg.poly import (
    FreePoly,
    as_rational,
    format_rational,
    homogeneous_components,
    poly_scale,
    poly_sum,
)
from malcev.pi.freealg.words import Multidegree, Word, multidegree_of
from malcev.pi.oracle.tideal import TIdealOracle, Variety
from malcev.pi.parsing.expr import parse_poly
from malcev.pi.utils.events import EventLogger

VIA = ("structural", "oracle")


class LowDeg:
    """A basis element that is a single word."""

    __slots__ = ("word",)
    kind = "word"

    def __init__(self, word):
        object.__setattr__(self, "word", word if isinstance(word, Word) else Word(word))

    def __setattr__(self, name, value):
        raise AttributeError("LowDeg is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, LowDeg) and self.word == other.word

    def __hash__(self) -> int:
        return hash(("w", self.word))

    def __repr__(self) -> str:
        return f"LowDeg({self.word.render()})"

    @property
    def multidegree(self) -> Multidegree:
        return multidegree_of(self.word)

    @property
    def degree(self) -> int:
        return len(self.word)

    @property
    def first(self) -> int:
        return self.word.first

    @property
    def last(self) -> int:
        return self.word.last

    def expand(self) -> FreePoly:
        return FreePoly._wrap({self.word: Fraction(1)})

    def render(self) -> str:
        return self.word.render()

    @property
    def token(self) -> str:
        return "w:" + ".".join(map(str, self.word.letters))

    def sort_key(self) -> tuple:
        return (self.degree, self.multidegree.counts, 0, tuple(-x for x in self.word.letters))


class ElementPoly:
    """
    A finite map basis element -> Fraction with no zero coefficients.

    Used for As2Poly and As3Poly alike: the element classes decide rendering,
    ordering and expansion.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping] = None):
        cleaned: Dict[object, Fraction] = {}
        for element, coeff in (terms or {}).items():
            coeff = as_rational(coeff)
            if coeff:
                cleaned[element] = coeff
        self._terms = cleaned

    @classmethod
    def _wrap(cls, terms: Dict[object, Fraction]) -> "ElementPoly":
        poly = object.__new__(cls)
        poly._terms = {e: c for e, c in terms.items() if c}
        return poly

    @classmethod
    def single(cls, element, coeff=1) -> "ElementPoly":
        return cls({element: coeff})

    @classmethod
    def total(cls, polys: Iterable["ElementPoly"]) -> "ElementPoly":
        terms: Dict[object, Fraction] = {}
        for p in polys:
            for e, c in p._terms.items():
                terms[e] = terms.get(e, 0) + c
        return cls._wrap(terms)

    def items(self):
        return self._terms.items()

    def elements(self) -> List[object]:
        return sorted(self._terms, key=lambda e: e.sort_key())

    def sorted_items(self) -> List[Tuple[object, Fraction]]:
        return [(e, self._terms[e]) for e in self.elements()]

    def coefficient(self, element) -> Fraction:
        return self._terms.get(element, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, ElementPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "ElementPoly") -> "ElementPoly":
        return ElementPoly.total([self, other])

    def __sub__(self, other: "ElementPoly") -> "ElementPoly":
        return ElementPoly.total([self, other.scale(-1)])

    def __neg__(self) -> "ElementPoly":
        return self.scale(-1)

    def __rmul__(self, c) -> "ElementPoly":
        return self.scale(c)

    def scale(self, c) -> "ElementPoly":
        c = as_rational(c)
        return ElementPoly._wrap({e: c * v for e, v in self._terms.items()})

    def __repr__(self) -> str:
        return f"ElementPoly({self.render()})"

    def expand(self) -> FreePoly:
        return poly_sum(poly_scale(c, e.expand()) for e, c in self._terms.items())

    def render(self) -> str:
        """``"1/8 {{{x1,x2},x3},x4} - x1*x2"``: coefficient, a space, the element."""
        out = ""
        for element, coeff in self.sorted_items():
            magnitude = abs(coeff)
            text = element.render() if magnitude == 1 else f"{format_rational(magnitude)} {element.render()}"
            if not out:
                out = f"-{text}" if coeff < 0 else text
            else:
                out += f" {'-' if coeff < 0 else '+'} {text}"
        return out or "0"

    def records(self) -> List[dict]:
        return [
            {"coeff": format_rational(c), "element": e.render(), "kind": e.kind}
            for e, c in self.sorted_items()
        ]


As2Poly = ElementPoly
As3Poly = ElementPoly


class BaseNormalForm(EventLogger):
    """
    Base class for normal-form engines.

    Subclasses supply ``chart_candidates`` (the basis candidates of a slice,
    in preference order), ``nf_structural``, ``basis_enum`` and
    ``structure_mul``. Oracle charts and product constants are cached here.
    """

    allows_completion = True

    def __init__(self, name, description, instruction, variety: Variety, oracle: Optional[TIdealOracle] = None):
        self.name = name
        self.description = description
        self.instruction = instruction
        self.variety = variety
        self.oracle = oracle or TIdealOracle()
        self._charts: Dict[Multidegree, object] = {}
        self._constants: Dict[Tuple[object, object], ElementPoly] = {}
        self._lock = threading.RLock()

    # -- to implement -----------------------------------------------------

    def chart_candidates(self, d: Multidegree) -> List[object]:
        raise NotImplementedError("This method should be implemented in a subclass.")

    def nf_structural(self, part: FreePoly, d: Multidegree) -> ElementPoly:
        raise NotImplementedError("This method should be implemented in a subclass.")

    def basis_enum(self, d: Multidegree) -> List[object]:
        raise NotImplementedError("This method should be implemented in a subclass.")

    def structure_mul(self, a, b) -> ElementPoly:
        raise NotImplementedError("This method should be implemented in a subclass.")

    def element_from_token(self, token: str):
        raise NotImplementedError("This method should be implemented in a subclass.")

    # -- shared -----------------------------------------------------------

    def chart(self, d: Multidegree):
        from malcev.pi.normalforms.chart import CosetChart

        chart = self._charts.get(d)
        if chart is None:
            with self._lock:
                chart = self._charts.get(d)
                if chart is None:
                    chart = self._charts[d] = CosetChart(
                        self.oracle.basis(self.variety, d),
                        self.chart_candidates(d),
                        allow_completion=self.allows_completion,
                    )
        return chart

    def nf(self, p: FreePoly, via: str = "structural") -> ElementPoly:
        """Coordinates of ``p`` in the engine's basis, one homogeneous component at a time."""
        if via not in VIA:
            raise ValueError(f"Unknown path '{via}'; choose one of {', '.join(VIA)}.")
        parts = []
        for d, part in homogeneous_components(p).items():
            if via == "oracle":
                parts.append(self.chart(d).coordinates(part))
            else:
                parts.append(self.nf_structural(part, d))
        return ElementPoly.total(parts)

    def nf_oracle(self, p: FreePoly) -> ElementPoly:
        return self.nf(p, via="oracle")

    def product_nf(self, a, b) -> ElementPoly:
        """nf of the word-level product, remembered as a structure constant."""
        key = (a, b)
        cached = self._constants.get(key)
        if cached is None:
            cached = self.nf(a.expand() * b.expand())
            with self._lock:
                self._constants[key] = cached
        return cached

    def multiply(self, x: ElementPoly, y: ElementPoly) -> ElementPoly:
        """Bilinear extension of ``structure_mul``."""
        return ElementPoly.total(
            self.structure_mul(a, b).scale(ca * cb) for a, ca in x.items() for b, cb in y.items()
        )

    def export_constants(self) -> Dict[Tuple[object, object], ElementPoly]:
        with self._lock:
            return dict(self._constants)

    def import_constants(self, constants: Mapping[Tuple[object, object], ElementPoly]) -> None:
        with self._lock:
            self._constants.update(constants)

    def low_degree_products(self, generators: int, max_total: int) -> Dict[Tuple[object, object], ElementPoly]:
        """Compute ``structure_mul`` for every basis pair of total degree <= ``max_total``."""
        elements = [e for d in multidegrees_up_to(generators, max_total - 1) for e in self.basis_enum(d)]
        for a in elements:
            for b in elements:
                if a.degree + b.degree <= max_total:
                    self.product_nf(a, b)
        return self.export_constants()

    def run(self, payload={}, action="nf"):
        """
        Execute the engine's actions.
        :param payload: dict - ``text`` or ``poly`` for nf, ``multidegree`` for basis,
                        ``a`` and ``b`` for mul.
        :param action: str - The action to perform.
        :return: ElementPoly, list of elements, or a message for unknown actions.
        """
        if action == "nf":
            poly = payload.get("poly")
            if poly is None:
                poly = parse_poly(payload["text"])
            return self.nf(poly, via=payload.get("via", "structural"))
        elif action == "basis":
            d = payload["multidegree"]
            return self.basis_enum(d if isinstance(d, Multidegree) else Multidegree.parse(d))
        elif action == "mul":
            return self.structure_mul(payload["a"], payload["b"])
        else:
            return (
                f"Unsupported action: {action}. Available actions are:\n\n"
                f"{self.instruction}"
            )


def multidegrees_up_to(generators: int, max_total: int) -> List[Multidegree]:
    """Every multidegree on x1..x_generators with total in 1..max_total."""
    out: List[Multidegree] = []

    def extend(prefix: List[int], remaining: int):
        if len(prefix) == generators:
            if sum(prefix):
                out.append(Multidegree(dict(enumerate(prefix, start=1))))
            return
        for m in range(remaining + 1):
            extend(prefix + [m], remaining - m)

    extend([], max_total)
    return sorted(out)

