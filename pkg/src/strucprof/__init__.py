"""Monomorphic decompositions and exact profiles of finite relational structures."""

from .equivalence import (
    Partition,
    a_equivalent,
    autonomous_partition,
    components,
    interval_decomposition,
    is_monomorphic_decomposition,
    k_equivalent,
    k_hypomorphic,
)
from .errors import StrucprofError
from .families import (
    AMCTemplate,
    FamilyGenerator,
    amc_build,
    lex_sum,
    obstruction_search,
    parse_family,
    ten_graph,
)
from .profile import ProfileTable, classify_growth, profile_exact, profile_table
from .series import RationalSeries, growth_root, series_expand, w_sequence
from .structures import (
    RelStructure,
    canonical_code,
    complement,
    embeds,
    graph,
    is_isomorphic,
    make_structure,
    parse_structure,
    restrict,
)

__all__ = [
    "AMCTemplate", "FamilyGenerator", "Partition", "ProfileTable", "RationalSeries",
    "RelStructure", "StrucprofError", "a_equivalent", "amc_build", "autonomous_partition",
    "canonical_code", "classify_growth", "complement", "components", "embeds", "graph",
    "growth_root", "interval_decomposition", "is_isomorphic", "is_monomorphic_decomposition",
    "k_equivalent", "k_hypomorphic", "lex_sum", "make_structure", "obstruction_search",
    "parse_family", "parse_structure", "profile_exact", "profile_table", "restrict",
    "series_expand", "ten_graph", "w_sequence",
]
