"""Finite group construction: matrix, permutation, and abelian backends."""

from .table import GroupDescriptor, GroupTable, DEFAULT_ELEMENT_BUDGET
from .matrix import build_sl, build_sp, stabilizer_subgroup, sl_order, sp_order
from .perm import (build_alt, build_sym, build_tree_level, point_stabilizer,
                   tree_element_parts, tree_level_order)
from .abelian import build_abelian, build_quaternion
from .classes import ClassData, conjugacy_classes
from .code import even_weight_code, alt_invariant_subspace_scan, InvariantScan

__all__ = [
    "GroupDescriptor",
    "GroupTable",
    "DEFAULT_ELEMENT_BUDGET",
    "build_sl",
    "build_sp",
    "build_alt",
    "build_sym",
    "build_tree_level",
    "build_abelian",
    "build_quaternion",
    "stabilizer_subgroup",
    "point_stabilizer",
    "tree_element_parts",
    "sl_order",
    "sp_order",
    "tree_level_order",
    "ClassData",
    "conjugacy_classes",
    "even_weight_code",
    "alt_invariant_subspace_scan",
    "InvariantScan",
]
