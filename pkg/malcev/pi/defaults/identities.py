from typing import List, NamedTuple, Optional


class IdentityEntry(NamedTuple):
    name: str
    variety: str
    text: str
    group: str
    expected: bool = True


# -- second type ----------------------------------------------------------

AS2_IDENTITIES = [
    IdentityEntry("as2-defining", "AS2", "a*b*c - a*c*b - b*a*c + b*c*a + c*a*b - c*b*a", "defining"),
    IdentityEntry("as2-degree4-exchange", "AS2",
                  "d*c*a*b - d*c*b*a - c*d*a*b + c*d*b*a - a*d*c*b + a*c*d*b", "exchange"),
    IdentityEntry("as2-interior-swap-1", "AS2", "a*b*c*d*e - a*b*d*c*e", "interior"),
    IdentityEntry("as2-interior-swap-2", "AS2", "a*b*c*d*e - a*c*b*d*e", "interior"),
    IdentityEntry("as2-tail-exchange", "AS2", "a*b*c*d*e - a*b*c*e*d + b*c*a*e*d - b*c*a*d*e", "exchange"),
    # (a,e) - (a,d) + (b,d) - (b,e) with interiors sorted
    IdentityEntry("as2-pair-exchange", "AS2", "a*b*c*d*e - a*b*c*e*d + b*a*c*e*d - b*a*c*d*e", "exchange"),
]

# -- third type -----------------------------------------------------------

POLARIZATION = [
    IdentityEntry("polarization-1", "AS3", "[{a,c},b] - {[a,b],c} + {a,[b,c]}", "polarization"),
    IdentityEntry("polarization-2", "AS3", "[b,[a,c]] - {{a,b},c} + {a,{b,c}}", "polarization"),
    IdentityEntry("polarization-3", "AS3",
                  "{a,{b,c}} - 3/2*{[a,c],b} - 3/2*{[a,b],c} - 1/2*{{a,c},b} - 1/2*{{a,b},c}", "polarization"),
    IdentityEntry("polarization-4", "AS3",
                  "{a,[b,c]} + 1/2*{[a,c],b} - 1/2*{[a,b],c} - 1/2*{{a,c},b} + 1/2*{{a,b},c}", "polarization"),
]

CORRUPTED_POLARIZATION = IdentityEntry(
    "polarization-3-corrupted", "AS3",
    "{a,{b,c}} - 1/2*{[a,c],b} - 3/2*{[a,b],c} - 1/2*{{a,c},b} - 1/2*{{a,b},c}", "polarization", expected=False,
)

ANTICOMMUTATOR_SORTING = [
    IdentityEntry("anticommutator-sorting-1", "AS3", "{{{a,b},c},d} - {{{a,c},b},d}", "sorting"),
    IdentityEntry("anticommutator-sorting-2", "AS3", "{{{a,b},c},d} - {{{a,b},d},c}", "sorting"),
    IdentityEntry("anticommutator-sorting-3", "AS3", "{{{a,b},c},d} - {{a,b},{c,d}}", "sorting"),
]

_VANISHING_2X2 = ["[[a,b],[c,d]]", "[[a,b],{c,d}]", "[{a,b},{c,d}]", "{{a,b},[c,d]}", "{[a,b],[c,d]}"]
_VANISHING_DEG4 = [
    "[[[a,b],c],d]", "{[[a,b],c],d}", "[{[a,b],c},d]", "[[{a,b},c],d]",
    "[{{a,b},c},d]", "{[{a,b},c],d}", "{{[a,b],c},d}",
]

VANISHING = [
    IdentityEntry(f"vanishing-2x2-{i}", "AS3", text, "vanishing") for i, text in enumerate(_VANISHING_2X2, 1)
] + [
    IdentityEntry(f"vanishing-deg4-{i}", "AS3", text, "vanishing") for i, text in enumerate(_VANISHING_DEG4, 1)
]

# Intermediate steps of the degree-4 vanishing argument, each written as "lhs - rhs".
_DERIVATION = [
    "{b,[a,[c,d]]} - {b,{{c,a},d}} + {b,{c,{a,d}}}",
    "{b,[a,[c,d]]}",
    "[b,[a,{c,d}]] - {{a,b},{c,d}} + {a,{b,{c,d}}}",
    "[b,[a,{c,d}]]",
    "[{b,d},[a,c]] - {{a,{b,d}},c} + {a,{{b,d},c}}",
    "[{b,d},[a,c]]",
    "{{a,d},{b,c}} - 3/2*{[{a,d},c],b} - 3/2*{[{a,d},b],c} - {{{a,d},b},c}",
    "{[{a,d},c],b} + {[{a,d},b],c}",
    "[[b,d],[a,c]] - {{[b,d],a},c} + {{[b,d],c},a}",
    "{{[b,d],a},c} - {{[b,d],c},a}",
    "{[a,d],[b,c]}",
    "[{a,[c,d]},b] - {[a,b],[c,d]} + {a,[b,[c,d]]}",
    "[b,{a,[c,d]}]",
    "{{a,b},[c,d]} - {a,{b,[c,d]}}",
    "{{[a,b],c},d} - {{[a,b],d},c}",
    "{[a,{c,d}],b} + {[a,b],{c,d}}",
    "{d,{[a,c],b}} + {d,{[a,b],c}}",
    "[{{a,b},c},d] - 2*{[{a,b},d],c}",
    "{[{a,b},d],c} - {[{a,c},d],b}",
    "2*[{a,c},{b,d}] - {[a,{b,d}],c}",
    "[a,{b,{c,d}}] - {[a,{c,d}],b} - {[a,b],{c,d}}",
    "[a,{b,{c,d}}] - {{[a,b],c},d}",
    "[a,{b,{c,d}}] - 2*{b,[a,{c,d}]}",
]

DERIVATION = [
    IdentityEntry(f"derivation-{i}", "AS3", text, "derivation") for i, text in enumerate(_DERIVATION, 1)
]

# commutator-first, anticommutator-second; decided by the oracle
MIXED_CANDIDATE = IdentityEntry("mixed-anticommutator-candidate", "AS3", "{[a,b],{c,d}}", "candidate")

AS3_IDENTITIES = (
    [IdentityEntry("as3-defining", "AS3", "a*b*c + b*a*c - b*c*a - c*b*a", "defining")]
    + POLARIZATION + ANTICOMMUTATOR_SORTING + VANISHING + DERIVATION + [MIXED_CANDIDATE]
)

# -- first type -----------------------------------------------------------

AS1_IDENTITIES = [
    IdentityEntry("as1-defining", "AS1", "a*b*c + a*c*b + b*a*c + b*c*a + c*a*b + c*b*a", "defining"),
]

CATALOGUE = AS1_IDENTITIES + AS2_IDENTITIES + AS3_IDENTITIES


def identities_for(variety: str, group: Optional[str] = None) -> List[IdentityEntry]:
    """Catalogue entries of ``variety`` (by name, case-insensitive), optionally of one group."""
    key = variety.strip().upper()
    return [e for e in CATALOGUE if e.variety == key and (group is None or e.group == group)]
