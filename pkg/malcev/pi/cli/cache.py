"""
Line-oriented on-disk store for structure constants.

    # malcev-cache v1
    # identity: x1*x2*x3 + ...
    1:1,2:1 | g:1 | g:2 | 1/2 c:1.2; 1/2 a:1.2

A record is "product multidegree | left element | right element | terms",
terms being "coeff token" pairs joined by "; " (or "0").
"""
import os
import re
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from malcev.pi.errors import CacheCorrupt, MalcevError
from malcev.pi.freealg.poly import format_rational
from malcev.pi.freealg.words import Multidegree
from malcev.pi.normalforms.base import BaseNormalForm, ElementPoly
from malcev.pi.utils.events import EventLogger

MAGIC = "# malcev-cache v"
IDENTITY = "# identity: "

Constants = Dict[Tuple[object, object], ElementPoly]


def format_terms(poly: ElementPoly) -> str:
    if not poly:
        return "0"
    return "; ".join(f"{format_rational(c)} {e.token}" for e, c in poly.sorted_items())


def format_record(a, b, poly: ElementPoly) -> str:
    return f"{(a.multidegree + b.multidegree).render()} | {a.token} | {b.token} | {format_terms(poly)}"


class CacheFile(EventLogger):
    """
    The structure-constant cache of one engine's variety.

    :param path: File location.
    :param engine: The normal-form engine whose constants are stored.
    :param version: Record format version written to and expected in the header.
    """

    def __init__(self, path, engine: BaseNormalForm, version: int = 1):
        self.path = Path(path)
        self.engine = engine
        self.version = version

    @property
    def header(self) -> List[str]:
        return [f"{MAGIC}{self.version}", f"{IDENTITY}{self.engine.variety.canonical}"]

    def _parse_terms(self, text: str) -> ElementPoly:
        if text == "0":
            return ElementPoly()
        terms = {}
        for chunk in text.split(";"):
            coeff, token = chunk.strip().split(" ", 1)
            element = self.engine.element_from_token(token)
            terms[element] = terms.get(element, 0) + Fraction(coeff)
        return ElementPoly(terms)

    def _parse_record(self, line: str, line_no: int) -> Tuple[object, object, ElementPoly]:
        parts = line.split(" | ")
        if len(parts) != 4:
            raise CacheCorrupt(self.path, line_no, f"expected 4 fields, found {len(parts)}")
        try:
            multidegree = Multidegree.parse(parts[0])
            a = self.engine.element_from_token(parts[1])
            b = self.engine.element_from_token(parts[2])
            poly = self._parse_terms(parts[3])
        except (ValueError, ZeroDivisionError) as exc:
            raise CacheCorrupt(self.path, line_no, str(exc)) from exc
        if a.multidegree + b.multidegree != multidegree:
            raise CacheCorrupt(self.path, line_no, "multidegree does not match the elements")
        return a, b, poly

    def read(self) -> Optional[Constants]:
        """
        Parse the file.

        :return: The constants, or None (a cache miss) when the file is absent
                 or was written for another format version or identity.
        :raises CacheCorrupt: on the first unreadable record.
        """
        if not self.path.exists():
            self._log_event(f"No cache at {self.path}", "info")
            return None
        with open(self.path, "r", encoding="utf-8") as f:
            lines = f.read().splitlines()
        if len(lines) < 2 or not lines[0].startswith(MAGIC):
            raise CacheCorrupt(self.path, 1, "missing header")
        if lines[0] != self.header[0]:
            self._log_event(f"{self.path}: format '{lines[0]}' is not v{self.version}; recomputing", "warning")
            return None
        if lines[1] != self.header[1]:
            self._log_event(f"{self.path}: written for another identity; recomputing", "warning")
            return None
        constants: Constants = {}
        for line_no, line in enumerate(lines[2:], start=3):
            if not line.strip() or line.startswith("#"):
                continue
            a, b, poly = self._parse_record(line, line_no)
            constants[(a, b)] = poly
        return constants

    def load(self) -> Optional[int]:
        """Import the stored constants into the engine; returns their count, or None on a miss."""
        constants = self.read()
        if constants is None:
            return None
        self.engine.import_constants(constants)
        self._log_event(f"Loaded {len(constants)} constants from {self.path}", "info")
        return len(constants)

    def serialize(self, constants: Constants) -> str:
        records = sorted(
            (a.multidegree + b.multidegree, a.token, b.token, format_record(a, b, poly))
            for (a, b), poly in constants.items()
        )
        return "\n".join(self.header + [r[-1] for r in records]) + "\n"

    def store(self) -> int:
        """
        Write the engine's constants, keeping every record already on disk.
        The file is replaced atomically.
        """
        constants: Constants = {}
        try:
            constants.update(self.read() or {})
        except MalcevError as exc:
            self._log_event(f"Ignoring unreadable cache: {exc}", "warning")
        constants.update(self.engine.export_constants())

        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, temp = tempfile.mkstemp(dir=self.path.parent, prefix=f".{self.path.name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                f.write(self.serialize(constants))
            os.replace(temp, self.path)
        except BaseException:
            if os.path.exists(temp):
                os.unlink(temp)
            raise
        self._log_event(f"Stored {len(constants)} constants in {self.path}", "info")
        return len(constants)


def default_cache_path(cache_dir: Path, engine: BaseNormalForm) -> Path:
    # custom engines are named after their identity
    stem = re.sub(r"[^A-Za-z0-9_.-]+", "_", engine.name).strip("_")
    return Path(cache_dir) / f"{stem}.cache"
