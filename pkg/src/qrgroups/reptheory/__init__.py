"""Exact character tables, minimal degrees, and root-subspace decompositions."""

from .dixon import CharacterTable, character_table
from .degrees import (FaithfulSearch, faithful_search, kernel_elements,
                      min_faithful_degree, min_nontrivial_degree)
from .oracle import regular_degree_multiplicities
from .roots import RootDecomposition, RootEntry, conjugated_root, root_decomposition

__all__ = [
    "CharacterTable",
    "character_table",
    "min_nontrivial_degree",
    "min_faithful_degree",
    "faithful_search",
    "FaithfulSearch",
    "kernel_elements",
    "regular_degree_multiplicities",
    "RootDecomposition",
    "RootEntry",
    "root_decomposition",
    "conjugated_root",
]
