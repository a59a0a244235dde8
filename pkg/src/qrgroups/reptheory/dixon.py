"""Exact character tables by the modular class-matrix method.

The class sums span the center of the group algebra; over a prime field
F_l with l ≡ 1 (mod exponent) and l > 2·sqrt(|G|) their matrices have a
common eigenbasis whose eigenvectors are the central characters mod l.
Degrees and character values are recovered mod l and lifted exactly to
root-of-unity multiplicity vectors by discrete Fourier inversion, so the
final table is integer-exact: chi(g) = sum_t m_t * zeta_e^t.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

import numpy as np
from sympy import isprime, primitive_root

from ..errors import PrimeSearchFailed, TooLarge
from ..groups.classes import ClassData, class_coefficients, power_class_map
from ..groups.table import GroupDescriptor, GroupTable
from .modlinalg import (charpoly_mod, inv_mod, matmul_mod, nullspace,
                        poly_roots_mod, restrict_action)

MAX_CLASSES = 200
MAX_ORDER = 100_000
PRIME_LIMIT = 2**31


@dataclass
class CharacterTable:
    descriptor: GroupDescriptor
    exponent: int
    prime: int
    class_sizes: np.ndarray
    degrees: list[int]
    multiplicities: np.ndarray = field(repr=False)
    kernels: list[list[int]]

    @property
    def class_count(self) -> int:
        return len(self.class_sizes)

    @property
    def character_count(self) -> int:
        return len(self.degrees)

    def complex_values(self) -> np.ndarray:
        """The (character, class) table evaluated as complex numbers."""
        e = self.exponent
        zeta = np.exp(2j * np.pi * np.arange(e) / e)
        return self.multiplicities @ zeta

    def value(self, character: int, class_index: int) -> complex:
        e = self.exponent
        zeta = np.exp(2j * np.pi * np.arange(e) / e)
        return complex(self.multiplicities[character, class_index] @ zeta)

    def trivial_index(self) -> int:
        for i, kernel in enumerate(self.kernels):
            if len(kernel) == self.class_count:
                return i
        raise RuntimeError("no trivial character found")

    def to_json(self, full: bool = False) -> dict:
        out = {
            "group": self.descriptor.to_json(),
            "exponent": self.exponent,
            "degrees": list(self.degrees),
            "kernels": [list(k) for k in self.kernels],
        }
        if full:
            out["multiplicities"] = self.multiplicities.tolist()
        return out


def _working_prime(exponent: int, order: int) -> int:
    floor = isqrt(4 * order) + 1  # smallest integer > 2*sqrt(order)
    candidate = exponent + 1
    if candidate < floor:
        candidate += -(-(floor - candidate) // exponent) * exponent
    while candidate < PRIME_LIMIT:
        if isprime(candidate):
            return candidate
        candidate += exponent
    raise PrimeSearchFailed(
        f"no prime ≡ 1 mod {exponent} above {floor} found below 2^31")


def _common_eigenbasis(coeffs: np.ndarray, l: int, rng: np.random.Generator
                       ) -> list[np.ndarray]:
    """One-dimensional joint eigenspaces of the class matrices over F_l."""
    r = coeffs.shape[0]
    matrices = [np.ascontiguousarray(coeffs[i]) for i in range(r)]

    def candidate_matrices():
        flat = coeffs.reshape(r, r * r)
        for _ in range(8):
            weights = rng.integers(0, l, size=(1, r))
            yield matmul_mod(weights, flat, l).reshape(r, r)
        # the identity-class matrix is the identity; skip it
        for i in range(1, r):
            yield matrices[i]

    pending = [np.eye(r, dtype=np.int64)]
    done: list[np.ndarray] = []
    for mat in candidate_matrices():
        still_pending: list[np.ndarray] = []
        for basis in pending:
            dim = basis.shape[1]
            if dim == 1:
                done.append(basis)
                continue
            action = restrict_action(mat, basis, l)
            eigenvalues = poly_roots_mod(charpoly_mod(action, l), l)
            if len(eigenvalues) <= 1:
                still_pending.append(basis)
                continue
            for lam in eigenvalues:
                shifted = (action - lam * np.eye(dim, dtype=np.int64)) % l
                kernel = nullspace(shifted, l)
                if kernel.shape[1] == 0:
                    continue
                sub = matmul_mod(basis, kernel, l)
                (done if sub.shape[1] == 1 else still_pending).append(sub)
        pending = still_pending
        if not pending:
            break
    done.extend(b for b in pending if b.shape[1] == 1)
    if len(done) != r:
        raise RuntimeError("class matrices failed to split into r eigenvectors")
    return done


def character_table(table: GroupTable, classes: ClassData,
                    seed: int = 0) -> CharacterTable:
    order = table.order
    r = classes.count
    if r > MAX_CLASSES:
        raise TooLarge(f"{r} classes exceeds the supported {MAX_CLASSES}")
    if order > MAX_ORDER:
        raise TooLarge(f"order {order} exceeds the supported {MAX_ORDER}")

    e = classes.exponent
    l = _working_prime(e, order)
    coeffs = class_coefficients(table, classes) % l
    rng = np.random.default_rng(seed)
    eigenvectors = _common_eigenbasis(coeffs, l, rng)

    sizes = classes.sizes
    inv_sizes = np.array([inv_mod(int(s), l) for s in sizes], dtype=np.int64)
    inverse_class = classes.inverse_class

    degrees: list[int] = []
    chi_rows: list[np.ndarray] = []
    max_degree = isqrt(order)
    for vec in eigenvectors:
        u = vec[:, 0] % l
        if u[0] == 0:
            raise RuntimeError("eigenvector vanishes at the identity class")
        u = u * inv_mod(int(u[0]), l) % l
        norm = int((u * u[inverse_class] % l * inv_sizes % l).sum() % l)
        d_squared = order * inv_mod(norm, l) % l
        degree = next((d for d in range(1, max_degree + 1)
                       if d * d % l == d_squared), None)
        if degree is None:
            raise RuntimeError("degree recovery failed")
        degrees.append(degree)
        chi_rows.append(degree * u % l * inv_sizes % l)

    total = sum(d * d for d in degrees)
    if total != order:
        raise RuntimeError(f"degree check failed: sum of squares {total} != {order}")

    # Lift mod-l values to root-of-unity multiplicities by Fourier inversion.
    powers = power_class_map(table, classes)
    z = pow(primitive_root(l), (l - 1) // e, l)
    z_inv = inv_mod(z, l)
    ts = np.arange(e, dtype=np.int64)
    z_inv_pow = np.array([pow(z_inv, int(t), l) for t in ts], dtype=np.int64)
    fourier = np.empty((e, e), dtype=np.int64)
    for s in range(e):
        fourier[s] = z_inv_pow[(s * ts) % e]
    inv_e = inv_mod(e, l)

    multiplicities = np.empty((r, r, e), dtype=np.int64)
    for idx, chi in enumerate(chi_rows):
        values_at_powers = chi[powers]          # (class, s)
        lifted = matmul_mod(values_at_powers, fourier, l) * inv_e % l
        if (lifted > degrees[idx]).any():
            raise RuntimeError("multiplicity lift exceeded the degree")
        if (lifted.sum(axis=1) != degrees[idx]).any():
            raise RuntimeError("multiplicity vectors do not sum to the degree")
        multiplicities[idx] = lifted

    order_key = sorted(range(r),
                       key=lambda i: (degrees[i], multiplicities[i].ravel().tolist()))
    degrees = [degrees[i] for i in order_key]
    multiplicities = multiplicities[order_key]

    kernels = []
    for idx in range(r):
        kernel = np.nonzero(multiplicities[idx, :, 0] == degrees[idx])[0]
        kernels.append(kernel.tolist())

    return CharacterTable(descriptor=table.descriptor, exponent=e, prime=l,
                          class_sizes=sizes.copy(), degrees=degrees,
                          multiplicities=multiplicities, kernels=kernels)
