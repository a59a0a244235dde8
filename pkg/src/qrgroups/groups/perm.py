"""Alternating, symmetric, and depth-2 tree automorphism quotients.

The depth-2 tree group acts on the (k+1)*k points (block, child).  An
element is a pair (pi, (tau_0..tau_k)): pi permutes the k+1 blocks and
tau_b acts inside block b.  The group built here is the index-4 part of
the full wreath product cut out by pi even and prod sgn(tau_b) = +1; the
sign of the induced point permutation factors as sgn(pi)^k * prod sgn(tau_b),
so both level actions are even.
"""

from __future__ import annotations

from math import factorial

import numpy as np

from ..errors import TooLarge, UnsupportedParameters
from .table import (DEFAULT_ELEMENT_BUDGET, GroupDescriptor, GroupTable,
                    PermBackend, closure_from_generators)

ALT_SYM_MAX_POINTS = 10


def cycle_images(points: int, cycle: tuple[int, ...]) -> np.ndarray:
    """Image array of the cycle (c_0 c_1 ... c_r) on {0..points-1}."""
    images = np.arange(points, dtype=np.int64)
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        images[a] = b
    return images


def alt_generator_images(m: int) -> list[np.ndarray]:
    """3-cycles (0 1 i), i = 2..m-1, generating Alt_m."""
    return [cycle_images(m, (0, 1, i)) for i in range(2, m)]


def sym_generator_images(m: int) -> list[np.ndarray]:
    if m < 2:
        return []
    gens = [cycle_images(m, (0, 1))]
    if m > 2:
        gens.append(cycle_images(m, tuple(range(m))))
    return gens


def _build_perm(points: int, images: list[np.ndarray], descriptor_args: dict,
                element_budget: int, expected_order: int) -> GroupTable:
    if expected_order > element_budget:
        raise TooLarge(
            f"order {expected_order} exceeds the element budget {element_budget}")
    backend = PermBackend(points)
    gens = [backend.encode(img) for img in images]

    def descriptor(order: int, generator_count: int) -> GroupDescriptor:
        return GroupDescriptor(order=order, generator_count=generator_count,
                               **descriptor_args)

    return closure_from_generators(backend, gens, descriptor, element_budget,
                                   expected_order=expected_order)


def build_alt(m: int, element_budget: int = DEFAULT_ELEMENT_BUDGET) -> GroupTable:
    if m < 1:
        raise UnsupportedParameters("need at least one point")
    if m > ALT_SYM_MAX_POINTS:
        raise TooLarge(f"alternating groups supported up to m = {ALT_SYM_MAX_POINTS}")
    expected = max(1, factorial(m) // 2)
    images = alt_generator_images(m) if m >= 3 else []
    return _build_perm(m, images, {"family": "alt", "k": m},
                       element_budget, expected)


def build_sym(m: int, element_budget: int = DEFAULT_ELEMENT_BUDGET) -> GroupTable:
    if m < 1:
        raise UnsupportedParameters("need at least one point")
    if m > ALT_SYM_MAX_POINTS:
        raise TooLarge(f"symmetric groups supported up to m = {ALT_SYM_MAX_POINTS}")
    return _build_perm(m, sym_generator_images(m), {"family": "sym", "k": m},
                       element_budget, factorial(m))


def tree_level_order(k: int, depth: int) -> int:
    if depth == 1:
        return factorial(k + 1) // 2
    return (factorial(k + 1) // 2) * factorial(k) ** (k + 1) // 2


def build_tree_level(k: int, depth: int,
                     element_budget: int = DEFAULT_ELEMENT_BUDGET) -> GroupTable:
    """Even tree automorphisms truncated at the given depth.

    depth 1 is Alt_{k+1} on the k+1 first-level subtrees.  depth 2 acts on
    the (k+1)*k leaves, generated by block rotations from Alt_{k+1},
    within-block rotations from Alt_k, and one even pair of transpositions
    spanning two blocks.
    """
    if k < 2:
        raise UnsupportedParameters("tree quotients need k >= 2")
    if depth not in (1, 2):
        raise UnsupportedParameters("only depths 1 and 2 are constructed")
    expected = tree_level_order(k, depth)
    if depth == 1:
        images = alt_generator_images(k + 1)
        return _build_perm(k + 1, images, {"family": "tree", "k": k, "depth": 1},
                           element_budget, expected)

    points = (k + 1) * k
    images: list[np.ndarray] = []
    for top in alt_generator_images(k + 1):
        img = np.arange(points, dtype=np.int64)
        for block in range(k + 1):
            for child in range(k):
                img[block * k + child] = top[block] * k + child
        images.append(img)
    if k >= 3:
        for tau in alt_generator_images(k):
            img = np.arange(points, dtype=np.int64)
            img[:k] = tau
            images.append(img)
    # an odd tau in block 0 paired with an odd tau in block 1
    pair = np.arange(points, dtype=np.int64)
    pair[[0, 1]] = [1, 0]
    pair[[k, k + 1]] = [k + 1, k]
    images.append(pair)
    return _build_perm(points, images, {"family": "tree", "k": k, "depth": 2},
                       element_budget, expected)


def point_stabilizer(table: GroupTable, point: int = 0) -> tuple[list[int], int]:
    """Ordinals fixing one point, with the index (= orbit size for transitive G)."""
    stack = table.element_stack()
    ordinals = np.nonzero(stack[:, point] == point)[0]
    size = len(ordinals)
    if size == 0 or table.order % size:
        raise RuntimeError("stabilizer size does not divide the group order")
    return ordinals.tolist(), table.order // size


def permutation_parity(images: np.ndarray) -> int:
    """+1 for even, -1 for odd."""
    images = np.asarray(images, dtype=np.int64)
    seen = np.zeros(len(images), dtype=bool)
    parity = 1
    for start in range(len(images)):
        if seen[start]:
            continue
        length = 0
        cur = start
        while not seen[cur]:
            seen[cur] = True
            cur = int(images[cur])
            length += 1
        if length % 2 == 0:
            parity = -parity
    return parity


def tree_element_parts(table: GroupTable, ordinal: int
                       ) -> tuple[np.ndarray, list[np.ndarray]]:
    """Split a depth-2 tree element into its block permutation and fibers."""
    desc = table.descriptor
    if desc.family != "tree" or desc.depth != 2:
        raise UnsupportedParameters("expected a depth-2 tree group element")
    k = desc.k
    images = table.backend.decode(table.elements[ordinal])
    pi = np.empty(k + 1, dtype=np.int64)
    taus = []
    for block in range(k + 1):
        target_block = int(images[block * k]) // k
        pi[block] = target_block
        tau = np.array([int(images[block * k + c]) - target_block * k
                        for c in range(k)], dtype=np.int64)
        taus.append(tau)
    return pi, taus
