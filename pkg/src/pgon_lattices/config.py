from dataclasses import dataclass

from .diophantine import DEFAULT_BUDGET
from .groups import ENUMERATION_LIMIT


@dataclass(frozen=True)
class SearchConfig:
    sign_bound: int = 24  # log2 of the largest exhaustive sign enumeration
    even_b_bound: int = 64
    unimod_budget: int = DEFAULT_BUDGET
    enumeration_limit: int = ENUMERATION_LIMIT
    small_search_bound: int = 20  # log2 of the enumeration size for small-coefficient searches
    piece_node_limit: int = 10**6
