from difflib import SequenceMatcher
from typing import Dict, List, Optional

from malcev.pi.errors import UnknownVariety
from malcev.pi.oracle.tideal import AS1, AS2, AS3, Variety

CUSTOM_PREFIX = "custom="


class VarietyRegistry:
    """
    A registry of named varieties with keyword search over their descriptions.
    Names are matched case-insensitively; ``custom=<expr>`` builds a CUSTOM variety.
    """

    def __init__(self, varieties: Optional[List[Variety]] = None):
        """
        Initialize the VarietyRegistry.

        :param varieties: Varieties to register; defaults to AS1, AS2 and AS3.
        """
        self.varieties: Dict[str, Variety] = {}
        for variety in (varieties if varieties is not None else [AS1, AS2, AS3]):
            self.register_variety(variety)

    @staticmethod
    def _key(name: str) -> str:
        return name.strip().upper()

    def register_variety(self, variety: Variety):
        """
        Register a new variety.

        :param variety: The Variety to register. It must have a description.
        :raises ValueError: If the name is already registered or the description is empty.
        """
        key = self._key(variety.name)
        if key in self.varieties:
            raise ValueError(f"Variety '{variety.name}' is already registered.")
        if not variety.description:
            raise ValueError(f"Variety '{variety.name}' must have a description.")
        self.varieties[key] = variety

    def get_variety(self, name: str) -> Variety:
        """
        Retrieve a variety by its name, or build one from ``custom=<expr>``.

        :param name: Name of the variety to retrieve.
        :return: The registered Variety.
        :raises UnknownVariety: If no variety has that name.
        """
        if name.strip().lower().startswith(CUSTOM_PREFIX):
            return Variety.custom_identity(name.strip()[len(CUSTOM_PREFIX):])
        variety = self.varieties.get(self._key(name))
        if variety is None:
            known = ", ".join(sorted(self.varieties))
            raise UnknownVariety(f"Unknown variety '{name}'. Known: {known}, or custom=<identity>.")
        return variety

    def count_varieties(self) -> int:
        """
        Count all registered varieties.

        :return: A count of varieties.
        """
        return len(self.varieties)

    def list_varieties(self) -> List[str]:
        """
        List all registered varieties.

        :return: A list of "name - identity" lines.
        """
        return [f"{v.name} - {v.canonical}" for v in self.varieties.values()]

    def remove_variety(self, name: str):
        """
        Remove a variety by its name.

        :param name: Name of the variety to remove.
        :raises UnknownVariety: If the variety does not exist.
        """
        key = self._key(name)
        if key not in self.varieties:
            raise UnknownVariety(f"Variety '{name}' is not registered.")
        del self.varieties[key]

    def search_varieties(self, query: str, top_k: int = 5) -> List[dict]:
        """
        Search varieties by similarity of the query to their names and descriptions.

        :param query: Text to match.
        :param top_k: Number of top results to return.
        :return: A list of matches, best first.
        """
        # An exact name short-circuits the ranking
        if self._key(query) in self.varieties:
            variety = self.varieties[self._key(query)]
            return [{"name": variety.name, "description": variety.description, "identity": variety.canonical}]

        query = query.lower()

        def score(variety: Variety) -> float:
            text = f"{variety.name} {variety.description}".lower()
            words = set(query.split())
            overlap = sum(1 for word in words if word in text) / max(len(words), 1)
            return overlap + SequenceMatcher(None, query, text).ratio()

        ranked = sorted(self.varieties.values(), key=lambda v: (-score(v), v.name))[:top_k]
        return [{"name": v.name, "description": v.description, "identity": v.canonical} for v in ranked]
