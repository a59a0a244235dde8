"""Minimal nontrivial and minimal faithful representation degrees.

m(G) reads straight off the character table.  m_f(G) minimizes the total
degree over sets of irreducibles whose kernels intersect trivially; the
branch-and-bound walks characters in ascending degree, only branches on
characters that strictly shrink the running kernel intersection (any
minimal optimal set has that property in every order), and prunes once
the partial sum plus one more character cannot beat the incumbent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import TrivialGroup
from ..groups.classes import ClassData
from .dixon import CharacterTable


def min_nontrivial_degree(table: CharacterTable) -> int:
    if table.class_count == 1:
        raise TrivialGroup("no nontrivial irreducible exists")
    trivial = table.trivial_index()
    return min(d for i, d in enumerate(table.degrees) if i != trivial)


def kernel_elements(table: CharacterTable, classes: ClassData,
                    character: int) -> list[int]:
    """Ordinals of all elements on which the character equals its degree."""
    kernel_classes = table.kernels[character]
    mask = np.isin(classes.assignment, kernel_classes)
    return np.nonzero(mask)[0].tolist()


@dataclass
class FaithfulSearch:
    total_degree: int
    witness: tuple[int, ...]
    single_minimum: int | None
    nodes: int


def faithful_search(table: CharacterTable, classes: ClassData) -> FaithfulSearch:
    r = table.class_count
    if r == 1:
        raise TrivialGroup("the trivial group has no faithful degree to minimize")

    masks = []
    for kernel in table.kernels:
        mask = 0
        for k in kernel:
            mask |= 1 << k
        masks.append(mask)
    full = (1 << r) - 1
    target = 1  # identity class only

    order = sorted(range(r), key=lambda c: (table.degrees[c], c))
    degrees = table.degrees

    single = [degrees[c] for c in range(r) if masks[c] == target]
    single_minimum = min(single) if single else None

    # Greedy incumbent: cheapest character that shrinks, repeated.
    incumbent_set: list[int] = []
    running = full
    incumbent = 0
    for c in order:
        shrunk = running & masks[c]
        if shrunk != running:
            running = shrunk
            incumbent += degrees[c]
            incumbent_set.append(c)
            if running == target:
                break
    if running != target:
        raise RuntimeError("irreducible kernels do not intersect trivially")

    best = incumbent
    best_set = tuple(sorted(incumbent_set))
    nodes = 0

    def dfs(pos: int, mask: int, total: int, chosen: list[int]) -> None:
        nonlocal best, best_set, nodes
        nodes += 1
        if mask == target:
            if total < best or (total == best and tuple(sorted(chosen)) < best_set):
                best = total
                best_set = tuple(sorted(chosen))
            return
        if pos >= r:
            return
        c = order[pos]
        if total + degrees[c] >= best:
            return
        shrunk = mask & masks[c]
        if shrunk != mask:
            chosen.append(c)
            dfs(pos + 1, shrunk, total + degrees[c], chosen)
            chosen.pop()
        dfs(pos + 1, mask, total, chosen)

    dfs(0, full, 0, [])
    return FaithfulSearch(total_degree=best, witness=best_set,
                          single_minimum=single_minimum, nodes=nodes)


def min_faithful_degree(table: CharacterTable, classes: ClassData) -> int:
    return faithful_search(table, classes).total_degree
