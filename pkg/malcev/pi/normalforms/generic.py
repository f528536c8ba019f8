from typing import Optional

from malcev.pi.freealg.poly import FreePoly
from malcev.pi.freealg.words import Multidegree, Word
from malcev.pi.normalforms.as2 import As2NormalForm
from malcev.pi.normalforms.as3 import As3NormalForm
from malcev.pi.normalforms.base import BaseNormalForm, ElementPoly, LowDeg
from malcev.pi.oracle.tideal import AS2, AS3, TIdealOracle, Variety


class OracleNormalForm(BaseNormalForm):
    """
    Normal forms for any variety with no structural theory: the basis of each
    slice is its set of non-leading words and every path goes through the oracle.
    """

    def __init__(self, variety: Variety, oracle: Optional[TIdealOracle] = None):
        super().__init__(
            name=variety.name.lower(),
            description=f"Oracle normal forms for {variety.name}: {variety.canonical} = 0.",
            instruction="""
- **Actions and Parameters**:
    - `nf`: Normal form as a combination of non-leading words.
      - Parameters:
        - `text` (str): The expression.
    - `basis`: Non-leading words of one multidegree.
      - Parameters:
        - `multidegree` (str): e.g. "1:1,2:1,3:1".
    - `mul`: Product of two basis words.
      - Parameters:
        - `a`, `b`: basis elements as returned by `basis`.
            """,
            variety=variety,
            oracle=oracle,
        )

    def chart_candidates(self, d: Multidegree):
        return []

    def nf_structural(self, part: FreePoly, d: Multidegree) -> ElementPoly:
        return self.chart(d).coordinates(part)

    def basis_enum(self, d: Multidegree):
        return self.chart(d).basis

    def structure_mul(self, a, b) -> ElementPoly:
        return self.product_nf(a, b)

    def element_from_token(self, token: str):
        kind, _, body = token.partition(":")
        if kind != "w":
            raise ValueError(f"Not a word token: '{token}'.")
        return LowDeg(Word(int(x) for x in body.split(".")))


def engine_for(variety: Variety, oracle: Optional[TIdealOracle] = None, self_test: bool = True) -> BaseNormalForm:
    """The structural engine of the second or third type, the oracle engine otherwise."""
    if variety.canonical == AS2.canonical:
        return As2NormalForm(oracle)
    if variety.canonical == AS3.canonical:
        return As3NormalForm(oracle, self_test=self_test)
    return OracleNormalForm(variety, oracle)
