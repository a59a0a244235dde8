"""Enumerated finite groups addressed by ordinals.

A group is built once by breadth-first closure from its generators and
then addressed purely through integer ordinals.  Ordinal 0 is always the
identity.  Element encodings are canonical byte strings, so equality and
hashing are exact; the enumeration order (and hence every downstream
result) is deterministic for a fixed generator list.

Backends supply the raw element arithmetic.  Each backend works on a
numpy "stack" of elements so that bulk products vectorise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ..errors import TooLarge

DEFAULT_ELEMENT_BUDGET = 100_000

# Full multiplication rows are only memoised for groups this small.
CAYLEY_CACHE_LIMIT = 5000

# Pairwise index tables (|G| x |G| int32) for convolution kernels.
PAIR_TABLE_LIMIT = 3000


class MatrixBackend:
    """Square matrices over Z/m acting on column vectors."""

    def __init__(self, dim: int, modulus: int):
        self.dim = dim
        self.modulus = modulus
        if modulus <= 255:
            self.dtype = np.uint8
        elif modulus <= 65535:
            self.dtype = np.uint16
        else:
            self.dtype = np.uint32

    def identity(self) -> bytes:
        return self.encode(np.eye(self.dim, dtype=np.int64))

    def encode(self, mat: np.ndarray) -> bytes:
        return np.ascontiguousarray(mat % self.modulus, dtype=self.dtype).tobytes()

    def decode(self, enc: bytes) -> np.ndarray:
        flat = np.frombuffer(enc, dtype=self.dtype).astype(np.int64)
        return flat.reshape(self.dim, self.dim)

    def compose(self, a: bytes, b: bytes) -> bytes:
        return self.encode(self.decode(a) @ self.decode(b))

    def invert(self, enc: bytes) -> bytes:
        from .matrix import matrix_inverse_mod

        return self.encode(matrix_inverse_mod(self.decode(enc), self.modulus))

    def decode_stack(self, encs: Sequence[bytes]) -> np.ndarray:
        flat = np.frombuffer(b"".join(encs), dtype=self.dtype).astype(np.int64)
        return flat.reshape(len(encs), self.dim, self.dim)

    def encode_stack(self, stack: np.ndarray) -> list[bytes]:
        canon = np.ascontiguousarray(stack % self.modulus, dtype=self.dtype)
        return [row.tobytes() for row in canon]

    def compose_stack(self, stack: np.ndarray, single: np.ndarray) -> np.ndarray:
        return (stack @ single) % self.modulus

    def left_compose_stack(self, single: np.ndarray, stack: np.ndarray) -> np.ndarray:
        return (single @ stack) % self.modulus

    def describe(self, enc: bytes) -> list[list[int]]:
        return self.decode(enc).tolist()


class PermBackend:
    """Permutations of {0..m-1} stored as image arrays; (a*b)(x) = a(b(x))."""

    def __init__(self, points: int):
        self.points = points
        self.dtype = np.uint8 if points <= 255 else np.uint16

    def identity(self) -> bytes:
        return self.encode(np.arange(self.points, dtype=np.int64))

    def encode(self, img: np.ndarray) -> bytes:
        return np.ascontiguousarray(img, dtype=self.dtype).tobytes()

    def decode(self, enc: bytes) -> np.ndarray:
        return np.frombuffer(enc, dtype=self.dtype).astype(np.int64)

    def compose(self, a: bytes, b: bytes) -> bytes:
        return self.encode(self.decode(a)[self.decode(b)])

    def invert(self, enc: bytes) -> bytes:
        return self.encode(np.argsort(self.decode(enc)))

    def decode_stack(self, encs: Sequence[bytes]) -> np.ndarray:
        flat = np.frombuffer(b"".join(encs), dtype=self.dtype).astype(np.int64)
        return flat.reshape(len(encs), self.points)

    def encode_stack(self, stack: np.ndarray) -> list[bytes]:
        canon = np.ascontiguousarray(stack, dtype=self.dtype)
        return [row.tobytes() for row in canon]

    def compose_stack(self, stack: np.ndarray, single: np.ndarray) -> np.ndarray:
        # row r of the result maps x to stack[r][single[x]]
        return stack[:, single]

    def left_compose_stack(self, single: np.ndarray, stack: np.ndarray) -> np.ndarray:
        # row r maps x to single[stack[r][x]]
        return single[stack]

    def describe(self, enc: bytes) -> list[int]:
        return self.decode(enc).tolist()


class VectorBackend:
    """Additive tuples (x_1..x_r) with x_i mod m_i; written multiplicatively."""

    def __init__(self, factors: Sequence[int]):
        self.factors = np.asarray(factors, dtype=np.int64)
        top = int(self.factors.max()) if len(factors) else 1
        self.dtype = np.uint8 if top <= 255 else np.uint32

    def identity(self) -> bytes:
        return self.encode(np.zeros(len(self.factors), dtype=np.int64))

    def encode(self, vec: np.ndarray) -> bytes:
        return np.ascontiguousarray(vec % self.factors, dtype=self.dtype).tobytes()

    def decode(self, enc: bytes) -> np.ndarray:
        return np.frombuffer(enc, dtype=self.dtype).astype(np.int64)

    def compose(self, a: bytes, b: bytes) -> bytes:
        return self.encode(self.decode(a) + self.decode(b))

    def invert(self, enc: bytes) -> bytes:
        return self.encode(-self.decode(enc))

    def decode_stack(self, encs: Sequence[bytes]) -> np.ndarray:
        flat = np.frombuffer(b"".join(encs), dtype=self.dtype).astype(np.int64)
        return flat.reshape(len(encs), len(self.factors))

    def encode_stack(self, stack: np.ndarray) -> list[bytes]:
        canon = np.ascontiguousarray(stack % self.factors, dtype=self.dtype)
        return [row.tobytes() for row in canon]

    def compose_stack(self, stack: np.ndarray, single: np.ndarray) -> np.ndarray:
        return (stack + single) % self.factors

    def left_compose_stack(self, single: np.ndarray, stack: np.ndarray) -> np.ndarray:
        return (stack + single) % self.factors

    def describe(self, enc: bytes) -> list[int]:
        return self.decode(enc).tolist()


@dataclass(frozen=True)
class GroupDescriptor:
    """What was built and with which parameters."""

    family: str
    k: int | None = None
    p: int | None = None
    n: int | None = None
    depth: int | None = None
    factors: tuple[int, ...] | None = None
    order: int = 0
    generator_count: int = 0

    def label(self) -> str:
        bits = [self.family]
        for name in ("k", "p", "n", "depth"):
            value = getattr(self, name)
            if value is not None:
                bits.append(f"{name}={value}")
        if self.factors is not None:
            bits.append("factors=" + "x".join(str(f) for f in self.factors))
        return " ".join(bits)

    def to_json(self) -> dict:
        out: dict = {"family": self.family, "order": self.order,
                     "generator_count": self.generator_count}
        for name in ("k", "p", "n", "depth"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        if self.factors is not None:
            out["factors"] = list(self.factors)
        return out


class GroupTable:
    """A fully enumerated finite group with ordinal arithmetic."""

    def __init__(self, descriptor: GroupDescriptor, backend, elements: list[bytes],
                 index: dict[bytes, int], inverse: np.ndarray, generators: list[int]):
        self.descriptor = descriptor
        self.backend = backend
        self.elements = elements
        self.index = index
        self.inverse = inverse
        self.generators = generators
        self._rows: dict[int, np.ndarray] = {}
        self._stack: np.ndarray | None = None
        self._product_table: np.ndarray | None = None
        self._xyinv_table: np.ndarray | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        return 0

    def element_stack(self) -> np.ndarray:
        if self._stack is None:
            self._stack = self.backend.decode_stack(self.elements)
        return self._stack

    def ordinals_of(self, stack: np.ndarray) -> np.ndarray:
        """Look up the ordinal of every element in a decoded stack."""
        encs = self.backend.encode_stack(stack)
        idx = self.index
        return np.fromiter((idx[e] for e in encs), dtype=np.int64, count=len(encs))

    def mul(self, i: int, j: int) -> int:
        if self.order <= CAYLEY_CACHE_LIMIT:
            return int(self.row(i)[j])
        return self.index[self.backend.compose(self.elements[i], self.elements[j])]

    def inv(self, i: int) -> int:
        return int(self.inverse[i])

    def conjugate(self, a: int, x: int) -> int:
        """a x a^{-1} by ordinals."""
        ax = self.backend.compose(self.elements[a], self.elements[x])
        return self.index[self.backend.compose(ax, self.elements[self.inv(a)])]

    def row(self, i: int) -> np.ndarray:
        """Products i*j for all j, memoised for small groups."""
        cached = self._rows.get(i)
        if cached is not None:
            return cached
        row = self.mul_row(i)
        if self.order <= CAYLEY_CACHE_LIMIT:
            self._rows[i] = row
        return row

    def mul_row(self, i: int) -> np.ndarray:
        """Products i*j for all j, computed via one vectorised pass."""
        single = self.backend.decode(self.elements[i])
        prods = self.backend.left_compose_stack(single, self.element_stack())
        return self.ordinals_of(prods)

    def mul_column(self, ordinals: np.ndarray, j: int) -> np.ndarray:
        """Products ordinals[t] * j for all t in one vectorised pass."""
        stack = self.element_stack()[np.asarray(ordinals, dtype=np.int64)]
        single = self.backend.decode(self.elements[j])
        prods = self.backend.compose_stack(stack, single)
        return self.ordinals_of(prods)

    def left_translate(self, i: int, ordinals: np.ndarray) -> np.ndarray:
        """Products i * ordinals[t] for all t in one vectorised pass."""
        stack = self.element_stack()[np.asarray(ordinals, dtype=np.int64)]
        single = self.backend.decode(self.elements[i])
        prods = self.backend.left_compose_stack(single, stack)
        return self.ordinals_of(prods)

    def element_order(self, i: int) -> int:
        order = 1
        cur = i
        while cur != 0:
            cur = self.mul(cur, i)
            order += 1
        return order

    def product_table(self) -> np.ndarray:
        """Full Cayley table (i, j) -> i*j as int32; small groups only."""
        if self._product_table is None:
            if self.order > PAIR_TABLE_LIMIT:
                raise TooLarge(
                    f"group order {self.order} exceeds the pairwise table"
                    f" limit {PAIR_TABLE_LIMIT}")
            table = np.empty((self.order, self.order), dtype=np.int32)
            for i in range(self.order):
                table[i] = self.mul_row(i)
            self._product_table = table
        return self._product_table

    def xyinv_table(self) -> np.ndarray:
        """Table (x, y) -> x * y^{-1}; the convolution kernel index."""
        if self._xyinv_table is None:
            self._xyinv_table = self.product_table()[:, self.inverse]
        return self._xyinv_table

    def describe_element(self, i: int):
        return self.backend.describe(self.elements[i])


def closure_from_generators(backend, generator_encs: Iterable[bytes],
                            descriptor_factory, element_budget: int = DEFAULT_ELEMENT_BUDGET,
                            expected_order: int | None = None) -> GroupTable:
    """Breadth-first closure of a generator list.

    ``descriptor_factory`` receives the final order and generator count and
    returns the GroupDescriptor.  When ``expected_order`` is supplied the
    closure is checked against it, catching bad generator sets early.
    """
    identity = backend.identity()
    elements: list[bytes] = [identity]
    index: dict[bytes, int] = {identity: 0}
    inverse_encs: list[bytes] = [identity]

    gens = list(generator_encs)
    gen_invs = [backend.invert(g) for g in gens]
    frontier = [0]
    while frontier:
        next_frontier: list[int] = []
        for i in frontier:
            a = elements[i]
            ia = inverse_encs[i]
            for g, gi in zip(gens, gen_invs):
                b = backend.compose(a, g)
                if b not in index:
                    if len(elements) >= element_budget:
                        raise TooLarge(
                            f"closure exceeded the element budget {element_budget}")
                    index[b] = len(elements)
                    elements.append(b)
                    # (a g)^{-1} = g^{-1} a^{-1}
                    inverse_encs.append(backend.compose(gi, ia))
                    next_frontier.append(index[b])
        frontier = next_frontier

    if expected_order is not None and len(elements) != expected_order:
        raise RuntimeError(
            f"closure produced {len(elements)} elements, expected {expected_order}")

    inverse = np.fromiter((index[e] for e in inverse_encs), dtype=np.int64,
                          count=len(elements))
    generators = [index[g] for g in gens]
    descriptor = descriptor_factory(len(elements), len(gens))
    return GroupTable(descriptor, backend, elements, index, inverse, generators)
