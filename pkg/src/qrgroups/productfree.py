"""Product-free subset search: exact branch and bound, cosets, greedy.

A set A is product-free when no x, y in A (x = y allowed) have x*y in A.
The exact search is intended for orders up to 64 and provides a matching
oracle for the closed-form abelian density formula.  Two structural facts
carry most of the pruning weight: |A| <= |G|/2 always (A and aA are
disjoint), and a nontrivial coset of any proper subgroup is product-free.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotProper, ResourceExhausted, UnsupportedParameters
from .groups.abelian import build_abelian
from .groups.table import GroupTable
from .quasirandom import BoundReport, green_ruzsa_pf, verify_bound

EXACT_MAX_ORDER = 64
DEFAULT_NODE_BUDGET = 10**7


@dataclass(frozen=True)
class SearchResult:
    witness: tuple[int, ...]
    size: int
    density: Fraction
    optimal: bool
    nodes: int
    seconds: float

    def to_json(self, group: str, seed: int | None = None,
                include_witness: bool = True) -> dict:
        out = {
            "group": group,
            "size": self.size,
            "density": {"num": self.density.numerator,
                        "den": self.density.denominator},
            "optimal": self.optimal,
            "nodes": self.nodes,
            "seed": seed,
        }
        if include_witness:
            out["witness"] = list(self.witness)
        return out


def verify_product_free(table: GroupTable, ordinals) -> bool:
    members = sorted(set(int(o) for o in ordinals))
    if not members:
        return True
    inside = np.zeros(table.order, dtype=bool)
    inside[members] = True
    arr = np.asarray(members, dtype=np.int64)
    for x in members:
        if inside[table.left_translate(x, arr)].any():
            return False
    return True


def _products_table(table: GroupTable) -> list[list[int]]:
    return table.product_table().tolist()


def _greedy_pass(table: GroupTable, prods: list[list[int]], order,
                 start=()) -> list[int]:
    """One in-order pass; sound because conflicts never go away as A grows."""
    chosen: list[int] = []
    chosen_set: set[int] = set()
    product_mask = 0
    identity = table.identity

    def add(g: int) -> None:
        nonlocal product_mask
        chosen.append(g)
        chosen_set.add(g)
        for a in chosen:
            product_mask |= (1 << prods[a][g]) | (1 << prods[g][a])

    for g in start:
        add(int(g))
    for c in order:
        c = int(c)
        if c == identity or c in chosen_set:
            continue
        if product_mask >> c & 1 or prods[c][c] in chosen_set:
            continue
        if any(prods[a][c] in chosen_set or prods[c][a] in chosen_set
               for a in chosen):
            continue
        add(c)
    return chosen


def greedy_product_free(table: GroupTable, seed: int | None = None,
                        start=()) -> SearchResult:
    """Maximal (not maximum) set; candidate order shuffled when seeded."""
    t0 = time.perf_counter()
    start = tuple(sorted(set(int(o) for o in start)))
    if start and not verify_product_free(table, start):
        raise ValueError("starting set is not product-free")
    order = list(range(table.order))
    if seed is not None:
        np.random.default_rng(seed).shuffle(order)
    prods = _products_table(table)
    chosen = _greedy_pass(table, prods, order, start)
    assert verify_product_free(table, chosen)
    return SearchResult(witness=tuple(sorted(chosen)), size=len(chosen),
                        density=Fraction(len(chosen), table.order),
                        optimal=False, nodes=len(chosen),
                        seconds=time.perf_counter() - t0)


def coset_product_free(table: GroupTable, subgroup) -> SearchResult:
    """Nontrivial coset xH of a proper subgroup; density 1/[G:H]."""
    t0 = time.perf_counter()
    members = sorted(set(int(o) for o in subgroup))
    inside = set(members)
    if table.identity not in inside:
        raise ValueError("subgroup must contain the identity")
    arr = np.asarray(members, dtype=np.int64)
    for a in members:
        if any(int(prod) not in inside for prod in table.left_translate(a, arr)):
            raise ValueError("given set is not closed under the product")
    if len(members) == table.order:
        raise NotProper("need a proper subgroup")
    x = next(i for i in range(table.order) if i not in inside)
    witness = tuple(sorted(int(o) for o in table.left_translate(x, arr)))
    assert verify_product_free(table, witness)
    return SearchResult(witness=witness, size=len(witness),
                        density=Fraction(len(witness), table.order),
                        optimal=False, nodes=0,
                        seconds=time.perf_counter() - t0)


def _interval_pullback(table: GroupTable, coord: int, modulus: int, low: int,
                       high: int) -> list[int]:
    """Ordinals whose coordinate reduces into [low, high] mod modulus.

    Reduction is a homomorphism only when modulus divides that factor, so
    callers must pick the coordinate accordingly.
    """
    backend = table.backend
    out = []
    for ordinal in range(table.order):
        vec = backend.decode(table.elements[ordinal])
        if low <= vec[coord] % modulus <= high:
            out.append(ordinal)
    return out


def _valuation(n: int, q: int) -> int:
    count = 0
    while n % q == 0:
        n //= q
        count += 1
    return count


def _exponent_pullback(table: GroupTable, exponent: int) -> list[int]:
    """Middle third of Z/exponent pulled back along a surjection.

    One coordinate of maximal q-adic valuation is chosen per prime q, and
    the weighted coordinate sum then maps onto the full cyclic quotient.
    """
    k = (exponent - 1) // 3
    if k == 0:
        return []
    factors = table.descriptor.factors
    weights = [0] * len(factors)
    for q in _prime_factors(exponent):
        power = q ** _valuation(exponent, q)
        index = max(range(len(factors)),
                    key=lambda i: _valuation(factors[i], q))
        weights[index] += exponent // power
    backend = table.backend
    out = []
    for ordinal in range(table.order):
        vec = backend.decode(table.elements[ordinal])
        image = sum(w * int(v) for w, v in zip(weights, vec)) % exponent
        if k + 1 <= image <= 2 * k:
            out.append(ordinal)
    return out


def _abelian_warm_start(table: GroupTable) -> list[int]:
    """Pull the known-optimal interval witness back along a quotient map."""
    factors = table.descriptor.factors
    for p in sorted(set(int(q) for f in factors for q in _prime_factors(f))):
        if p % 3 == 2:
            coord = next(i for i, f in enumerate(factors) if f % p == 0)
            return _interval_pullback(table, coord, p, (p + 1) // 3,
                                      (2 * p - 1) // 3)
    if table.order % 3 == 0:
        coord = next(i for i, f in enumerate(factors) if f % 3 == 0)
        return _interval_pullback(table, coord, 3, 1, 1)
    return _exponent_pullback(table, math.lcm(*factors))


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _warm_starts(table: GroupTable, prods: list[list[int]]) -> list[list[int]]:
    starts = [_greedy_pass(table, prods, range(table.order))]
    # nontrivial cosets of cyclic subgroups
    identity = table.identity
    seen_subgroups = set()
    for g in range(table.order):
        if g == identity:
            continue
        cyclic = [identity]
        current = g
        while current != identity:
            cyclic.append(current)
            current = prods[current][g]
        key = frozenset(cyclic)
        if key in seen_subgroups or len(cyclic) == table.order:
            continue
        seen_subgroups.add(key)
        x = next(i for i in range(table.order) if i not in key)
        starts.append([prods[x][h] for h in cyclic])
    if table.descriptor.family == "abelian":
        witness = _abelian_warm_start(table)
        if witness:
            starts.append(witness)
    return starts


def exact_max_product_free(
        table: GroupTable,
        node_budget: int = DEFAULT_NODE_BUDGET) -> SearchResult:
    """Branch and bound over element ordinals, maximizing |A| exactly.

    Candidates are ordered by how many products (x, y) -> x*y with x != y
    land on them, most constrained first.  The incumbent starts from the
    best of a greedy pass, cyclic-subgroup cosets, and (abelian case) the
    interval pullback, so the search usually only proves optimality.
    When the node budget runs out the best set found so far is returned
    with the optimal flag cleared.
    """
    t0 = time.perf_counter()
    n = table.order
    prods = _products_table(table)
    identity = table.identity
    cap = n // 2

    best_witness: list[int] = []
    for candidate_set in _warm_starts(table, prods):
        assert verify_product_free(table, candidate_set)
        if len(candidate_set) > len(best_witness):
            best_witness = sorted(candidate_set)
    best_size = len(best_witness)

    weight = [0] * n
    for x in range(n):
        for y in range(n):
            if x != y:
                weight[prods[x][y]] += 1
    order = sorted((g for g in range(n) if g != identity),
                   key=lambda g: (-weight[g], g))

    nodes = 0
    exceeded = False

    def search(a_mask: int, product_mask: int, candidates: list[int],
               size: int) -> None:
        nonlocal best_size, best_witness, nodes, exceeded
        if exceeded or best_size >= cap:
            return
        nodes += 1
        if nodes > node_budget:
            exceeded = True
            return
        if size > best_size:
            best_size = size
            best_witness = [g for g in range(n) if a_mask >> g & 1]
            if best_size >= cap:
                return
        if not candidates or size + len(candidates) <= best_size:
            return
        c = candidates[0]
        rest = candidates[1:]

        new_mask = a_mask | 1 << c
        new_products = product_mask
        for a in range(n):
            if new_mask >> a & 1:
                new_products |= (1 << prods[a][c]) | (1 << prods[c][a])
        kept = [d for d in rest
                if not (new_mask >> prods[c][d] & 1
                        or new_mask >> prods[d][c] & 1
                        or prods[d][d] == c
                        or new_products >> d & 1)]
        search(new_mask, new_products, kept, size + 1)
        search(a_mask, product_mask, rest, size)

    search(0, 0, order, 0)
    seconds = time.perf_counter() - t0
    assert verify_product_free(table, best_witness)
    return SearchResult(witness=tuple(best_witness), size=best_size,
                        density=Fraction(best_size, n),
                        optimal=not exceeded, nodes=nodes, seconds=seconds)


def formula_vs_search(factors,
                      node_budget: int = DEFAULT_NODE_BUDGET) -> BoundReport:
    """Exact search density against the closed-form abelian value."""
    table = build_abelian(factors)
    if table.order > EXACT_MAX_ORDER:
        raise UnsupportedParameters(
            f"exact cross-check capped at order {EXACT_MAX_ORDER}")
    result = exact_max_product_free(table, node_budget)
    if not result.optimal:
        raise ResourceExhausted("node budget hit before optimality was proved")
    return verify_bound(result.density, green_ruzsa_pf(factors), "==",
                        quantity=f"max product-free density of "
                                 f"{table.descriptor.label()}")
