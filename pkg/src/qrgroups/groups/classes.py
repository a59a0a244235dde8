"""Conjugacy classes, class-multiplication coefficients, and the exponent.

Classes are numbered in order of their smallest member ordinal, so the
identity class is always index 0 and the numbering is deterministic.
The coefficient tensor a[i][j][k] counts pairs (x, y) with x in class i,
y in class j and x*y equal to the fixed representative of class k; these
are the structure constants of the class sums in the group-algebra
center, which drive the character computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

import numpy as np

from .table import GroupTable


@dataclass
class ClassData:
    assignment: np.ndarray
    sizes: np.ndarray
    representatives: np.ndarray
    inverse_class: np.ndarray
    representative_orders: np.ndarray
    exponent: int
    coefficients: np.ndarray | None = field(default=None, repr=False)

    @property
    def count(self) -> int:
        return len(self.sizes)

    def class_of(self, ordinal: int) -> int:
        return int(self.assignment[ordinal])

    def members(self, class_index: int) -> np.ndarray:
        return np.nonzero(self.assignment == class_index)[0]


def conjugacy_classes(table: GroupTable) -> ClassData:
    order = table.order
    backend = table.backend
    stack = table.element_stack()
    gen_mats = [backend.decode(table.elements[g]) for g in table.generators]
    gen_inv_mats = [backend.decode(table.elements[table.inv(g)])
                    for g in table.generators]

    assignment = np.full(order, -1, dtype=np.int64)
    reps = []
    next_class = 0
    for seed in range(order):
        if assignment[seed] >= 0:
            continue
        assignment[seed] = next_class
        reps.append(seed)
        frontier = np.array([seed], dtype=np.int64)
        while len(frontier):
            found = []
            batch = stack[frontier]
            for g, gi in zip(gen_mats, gen_inv_mats):
                conj = backend.compose_stack(
                    backend.left_compose_stack(g, batch), gi)
                for ordinal in table.ordinals_of(conj):
                    if assignment[ordinal] < 0:
                        assignment[ordinal] = next_class
                        found.append(ordinal)
            frontier = np.array(found, dtype=np.int64)
        next_class += 1

    sizes = np.bincount(assignment, minlength=next_class)
    representatives = np.array(reps, dtype=np.int64)
    inverse_class = assignment[table.inverse[representatives]]
    rep_orders = np.array([table.element_order(int(r)) for r in representatives],
                          dtype=np.int64)
    exponent = lcm(*rep_orders.tolist()) if len(rep_orders) else 1
    return ClassData(assignment=assignment, sizes=sizes,
                     representatives=representatives, inverse_class=inverse_class,
                     representative_orders=rep_orders, exponent=exponent)


def class_coefficients(table: GroupTable, classes: ClassData) -> np.ndarray:
    """The tensor a[i][j][k], computed exactly by one group sweep per class."""
    if classes.coefficients is not None:
        return classes.coefficients
    r = classes.count
    assignment = classes.assignment
    coeffs = np.empty((r, r, r), dtype=np.int64)
    for k, rep in enumerate(classes.representatives):
        # x * y = rep forces y = x^{-1} * rep; bin over (class x, class y)
        y_ordinals = table.mul_column(table.inverse, int(rep))
        joint = assignment * r + assignment[y_ordinals]
        coeffs[:, :, k] = np.bincount(joint, minlength=r * r).reshape(r, r)
    classes.coefficients = coeffs
    return coeffs


def power_class_map(table: GroupTable, classes: ClassData) -> np.ndarray:
    """P[k, s] = class index of rep_k^s for s = 0..exponent-1."""
    e = classes.exponent
    r = classes.count
    out = np.empty((r, e), dtype=np.int64)
    for k, rep in enumerate(classes.representatives):
        period = int(classes.representative_orders[k])
        cycle = np.empty(period, dtype=np.int64)
        cur = 0
        for s in range(period):
            cycle[s] = classes.assignment[cur]
            cur = table.mul(cur, int(rep))
        out[k] = cycle[np.arange(e) % period]
    return out
