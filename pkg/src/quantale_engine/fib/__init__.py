"""Finite-category kernel: categories, fibrations, mates, enriched audits."""
from .fincat import (
    FinAdjunction,
    FinCategory,
    FinFunctor,
    Morph,
    NatTrans,
    chain,
    from_poset,
    identity_functor,
    is_cartesian,
    is_cocartesian,
    monotone_maps,
    poset_adjunctions,
    terminal_category,
)
from .indexed import (
    Fibration,
    IndexedCategory,
    grothendieck,
    indexed_of_fibration,
    roundtrip_isomorphism,
    strict_indexed,
    thin_indexed,
)
from .adjunction import (
    FibredAdjunctionReport,
    FibrewiseAdjunction,
    check_fibred_adjunction,
    check_opfibred_right_adjoints,
    is_map_of_adjunctions,
    mate_of_square,
    mate_of_square_back,
    thin_fibrewise_adjunctions,
    thin_total_functor,
)
from .enriched import (
    EnrichedFibrationData,
    EnrichedFibrationReport,
    check_enriched_fibration,
    export_enriched_instance,
)

__all__ = [
    "FinAdjunction",
    "FinCategory",
    "FinFunctor",
    "Morph",
    "NatTrans",
    "chain",
    "from_poset",
    "identity_functor",
    "is_cartesian",
    "is_cocartesian",
    "monotone_maps",
    "poset_adjunctions",
    "terminal_category",
    "Fibration",
    "IndexedCategory",
    "grothendieck",
    "indexed_of_fibration",
    "roundtrip_isomorphism",
    "strict_indexed",
    "thin_indexed",
    "FibredAdjunctionReport",
    "FibrewiseAdjunction",
    "check_fibred_adjunction",
    "check_opfibred_right_adjoints",
    "is_map_of_adjunctions",
    "mate_of_square",
    "mate_of_square_back",
    "thin_fibrewise_adjunctions",
    "thin_total_functor",
    "EnrichedFibrationData",
    "EnrichedFibrationReport",
    "check_enriched_fibration",
    "export_enriched_instance",
]
