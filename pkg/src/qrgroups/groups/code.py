"""The even-weight binary code and its alternating-group invariant subspaces.

Vectors of F_2^m are bitmask integers (bit i = coordinate i).  The code
consists of all even-weight masks, a subspace of dimension m - 1 closed
under every coordinate permutation.  The scan enumerates Alt_m-invariant
subspaces as sum-closures of orbit spans and reports the minimum corank
over proper invariant subspaces, the quantity controlling how small a
nontrivial invariant quotient can be.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..errors import TooLarge, UnsupportedParameters
from .perm import alt_generator_images

EVEN_CODE_MAX = 16
SCAN_MAX = 12


def even_weight_code(m: int) -> list[int]:
    """All even-weight masks of length m, sorted ascending; 2^(m-1) of them."""
    if m < 1:
        raise UnsupportedParameters("need at least one coordinate")
    if m > EVEN_CODE_MAX:
        raise TooLarge(f"even-weight code supported up to m = {EVEN_CODE_MAX}")
    return [v for v in range(1 << m) if bin(v).count("1") % 2 == 0]


def mask_to_vector(mask: int, m: int) -> tuple[int, ...]:
    return tuple((mask >> i) & 1 for i in range(m))


def permute_mask(mask: int, images) -> int:
    """Move bit i to position images[i]."""
    out = 0
    i = 0
    while mask >> i:
        if (mask >> i) & 1:
            out |= 1 << int(images[i])
        i += 1
    return out


class _XorBasis:
    """F_2 row space keyed by leading bit; canonical form is the RREF rows."""

    def __init__(self, vectors=()):
        self.rows: dict[int, int] = {}
        for vec in vectors:
            self.add(vec)

    def reduce(self, vec: int) -> int:
        while vec:
            row = self.rows.get(vec.bit_length() - 1)
            if row is None:
                return vec
            vec ^= row
        return 0

    def add(self, vec: int) -> bool:
        vec = self.reduce(vec)
        if vec:
            self.rows[vec.bit_length() - 1] = vec
            return True
        return False

    def contains(self, vec: int) -> bool:
        return self.reduce(vec) == 0

    @property
    def dim(self) -> int:
        return len(self.rows)

    def canonical(self) -> tuple[int, ...]:
        pivots = sorted(self.rows)
        rows = dict(self.rows)
        for t in pivots:
            for t2 in pivots:
                if t2 > t and (rows[t2] >> t) & 1:
                    rows[t2] ^= rows[t]
        return tuple(sorted(rows.values(), reverse=True))

    def merged(self, other: "_XorBasis") -> "_XorBasis":
        out = _XorBasis(self.rows.values())
        for row in other.rows.values():
            out.add(row)
        return out


@dataclass
class InvariantScan:
    m: int
    subspace_dims: list[int]
    subspace_bases: list[list[int]]
    min_corank: int

    @property
    def code_dim(self) -> int:
        return self.m - 1


def alt_invariant_subspace_scan(code: list[int], m: int) -> InvariantScan:
    """All Alt_m-invariant subspaces of the even-weight code.

    Every invariant subspace is a sum of orbit spans, so the scan takes
    the span of each vector's Alt_m-orbit and closes the resulting list
    under pairwise sums.  Returns the subspaces and the minimum of
    dim(code) - dim(K) over proper invariant subspaces K.
    """
    if m > SCAN_MAX:
        raise TooLarge(f"invariant scan supported up to m = {SCAN_MAX}")
    gens = alt_generator_images(m) if m >= 3 else []

    orbit_of: dict[int, int] = {}
    orbit_spans: list[_XorBasis] = []
    for vec in code:
        if vec == 0 or vec in orbit_of:
            continue
        orbit = [vec]
        orbit_of[vec] = len(orbit_spans)
        frontier = [vec]
        while frontier:
            nxt = []
            for v in frontier:
                for g in gens:
                    w = permute_mask(v, g)
                    if w not in orbit_of:
                        orbit_of[w] = len(orbit_spans)
                        orbit.append(w)
                        nxt.append(w)
            frontier = nxt
        orbit_spans.append(_XorBasis(orbit))

    # Close the set of orbit-span sums under pairwise merge.
    seen: dict[tuple[int, ...], _XorBasis] = {(): _XorBasis()}
    for span in orbit_spans:
        seen.setdefault(span.canonical(), span)
    changed = True
    while changed:
        changed = False
        current = list(seen.values())
        for a, b in combinations(current, 2):
            merged = a.merged(b)
            key = merged.canonical()
            if key not in seen:
                seen[key] = merged
                changed = True

    spans = sorted(seen.values(), key=lambda s: (s.dim, s.canonical()))
    for span in spans:
        for row in span.canonical():
            for g in gens:
                if not span.contains(permute_mask(row, g)):
                    raise RuntimeError("scan produced a non-invariant subspace")

    code_dim = m - 1
    proper_dims = [s.dim for s in spans if s.dim < code_dim]
    min_corank = code_dim - max(proper_dims) if proper_dims else code_dim
    if m >= 7 and min_corank < m - 2:
        raise RuntimeError(
            f"invariant quotient of corank {min_corank} < m - 2 found at m = {m}")
    return InvariantScan(m=m, subspace_dims=[s.dim for s in spans],
                         subspace_bases=[list(s.canonical()) for s in spans],
                         min_corank=min_corank)
