import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict

from malcev.pi.freealg.poly import FreePoly, format_rational, render
from malcev.pi.freealg.words import Multidegree
from malcev.pi.normalforms.base import ElementPoly


def _encode(value: Any):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, Multidegree):
        return value.render()
    if isinstance(value, FreePoly):
        return render(value)
    if isinstance(value, ElementPoly):
        return value.records()
    raise TypeError(f"Cannot serialize {type(value).__name__}")


@dataclass
class OutputRecord:
    """One command's result; JSON output has sorted keys and rationals as "p/q" strings."""
    command: str
    variety: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    result: Any = None

    def to_json(self) -> str:
        payload = {"command": self.command, "variety": self.variety, "inputs": self.inputs, "result": self.result}
        return json.dumps(payload, sort_keys=True, indent=2, default=_encode)
