"""Floating-point cross-check of the exact degree computation.

A random class-sum combination is central, so in the regular
representation it acts as the scalar central character on each isotypic
component, whose dimension is the squared degree.  Clustering the eigenvalues of
that |G| x |G| matrix therefore recovers the multiset of degrees without
any exact arithmetic, giving an independent oracle for small groups.
"""

from __future__ import annotations

from math import isqrt

import numpy as np

from ..errors import TooLarge
from ..groups.classes import ClassData
from ..groups.table import GroupTable

ORACLE_MAX_ORDER = 200


def regular_degree_multiplicities(table: GroupTable, classes: ClassData,
                                  seed: int = 0, attempts: int = 6) -> list[int]:
    order = table.order
    if order > ORACLE_MAX_ORDER:
        raise TooLarge(f"oracle restricted to |G| <= {ORACLE_MAX_ORDER}")
    kernel_index = table.xyinv_table()
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        weights = rng.standard_normal(classes.count)
        values = weights[classes.assignment]
        matrix = values[kernel_index]
        eigenvalues = np.linalg.eigvals(matrix)
        centers: list[complex] = []
        counts: list[int] = []
        for ev in eigenvalues:
            for idx, center in enumerate(centers):
                if abs(ev - center) < 1e-6 * max(1.0, abs(center)):
                    counts[idx] += 1
                    break
            else:
                centers.append(complex(ev))
                counts.append(1)
        degrees = []
        good = True
        for size in counts:
            root = isqrt(size)
            if root * root != size:
                good = False
                break
            degrees.append(root)
        if good and sum(counts) == order and len(degrees) == classes.count:
            return sorted(degrees)
    raise RuntimeError("eigenvalue clusters never separated into squares")
