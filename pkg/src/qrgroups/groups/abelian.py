"""Abelian product groups and the order-8 quaternion group.

Abelian groups are given by invariant factors (m_1, ..., m_r) and stored
as additive tuples.  Q8 is built from its left-regular permutation action
so the generic table machinery applies unchanged.
"""

from __future__ import annotations

from math import prod

import numpy as np

from ..errors import TooLarge, UnsupportedParameters
from .table import (DEFAULT_ELEMENT_BUDGET, GroupDescriptor, GroupTable,
                    PermBackend, VectorBackend, closure_from_generators)


def build_abelian(factors, element_budget: int = DEFAULT_ELEMENT_BUDGET) -> GroupTable:
    factors = tuple(int(f) for f in factors)
    if not factors or any(f < 1 for f in factors):
        raise UnsupportedParameters("factors must be a nonempty list of positive integers")
    expected = prod(factors)
    if expected > element_budget:
        raise TooLarge(f"order {expected} exceeds the element budget {element_budget}")
    backend = VectorBackend(factors)
    gens = []
    for i, f in enumerate(factors):
        if f > 1:
            vec = np.zeros(len(factors), dtype=np.int64)
            vec[i] = 1
            gens.append(backend.encode(vec))

    def descriptor(order: int, generator_count: int) -> GroupDescriptor:
        return GroupDescriptor(family="abelian", factors=factors, order=order,
                               generator_count=generator_count)

    return closure_from_generators(backend, gens, descriptor, element_budget,
                                   expected_order=expected)


# Q8 multiplication on {1, -1, i, -i, j, -j, k, -k} indexed 0..7.
_Q8_PRODUCTS = [
    [0, 1, 2, 3, 4, 5, 6, 7],
    [1, 0, 3, 2, 5, 4, 7, 6],
    [2, 3, 1, 0, 6, 7, 5, 4],
    [3, 2, 0, 1, 7, 6, 4, 5],
    [4, 5, 7, 6, 1, 0, 2, 3],
    [5, 4, 6, 7, 0, 1, 3, 2],
    [6, 7, 4, 5, 3, 2, 1, 0],
    [7, 6, 5, 4, 2, 3, 0, 1],
]


def build_quaternion(element_budget: int = DEFAULT_ELEMENT_BUDGET) -> GroupTable:
    """The quaternion group Q8 via its left-regular permutation action."""
    backend = PermBackend(8)
    products = np.array(_Q8_PRODUCTS, dtype=np.int64)
    gens = [backend.encode(products[2]), backend.encode(products[4])]

    def descriptor(order: int, generator_count: int) -> GroupDescriptor:
        return GroupDescriptor(family="quaternion", order=order,
                               generator_count=generator_count)

    return closure_from_generators(backend, gens, descriptor, element_budget,
                                   expected_order=8)
