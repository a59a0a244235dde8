"""Special linear and symplectic groups over Z/p^n.

Builders run a breadth-first closure from elementary generators:
transvections I + E_ij for SL_k, and the shear pairs U_sigma, U_sigma^T
over the symmetric basis matrices for Sp_2k.  Structured matrices used by
the conjugation identities (shears, paired dilations, the alternating
form) live here too.
"""

from __future__ import annotations

from math import prod

import numpy as np
from sympy import Matrix as SymMatrix
from sympy import isprime

from ..errors import (TooLarge, UnsupportedFamily, UnsupportedParameters,
                      UnsupportedPrime)
from .table import (DEFAULT_ELEMENT_BUDGET, GroupDescriptor, GroupTable,
                    MatrixBackend, closure_from_generators)


def sl_order(k: int, p: int, n: int) -> int:
    base = p ** (k * (k - 1) // 2) * prod(p**i - 1 for i in range(2, k + 1))
    return p ** ((n - 1) * (k * k - 1)) * base


def sp_order(k: int, p: int, n: int) -> int:
    base = prod((p ** (2 * i) - 1) * p ** (2 * i - 1) for i in range(1, k + 1))
    return p ** ((n - 1) * (2 * k * k + k)) * base


def transvection(k: int, i: int, j: int, t: int = 1) -> np.ndarray:
    """I + t·E_ij with i != j, the elementary SL_k generator."""
    if i == j:
        raise ValueError("transvection requires i != j")
    mat = np.eye(k, dtype=np.int64)
    mat[i, j] = t
    return mat


def last_column_unipotent(k: int, i: int) -> np.ndarray:
    """The matrix e_i = I + E_{i,k-1}: identity plus a 1 in the last column."""
    return transvection(k, i, k - 1)


def symmetric_basis(k: int) -> list[np.ndarray]:
    """The standard basis E_ii, E_ij + E_ji of symmetric k x k matrices."""
    out = []
    for i in range(k):
        mat = np.zeros((k, k), dtype=np.int64)
        mat[i, i] = 1
        out.append(mat)
    for i in range(k):
        for j in range(i + 1, k):
            mat = np.zeros((k, k), dtype=np.int64)
            mat[i, j] = 1
            mat[j, i] = 1
            out.append(mat)
    return out


def upper_shear(sigma: np.ndarray) -> np.ndarray:
    """U_sigma = [[I, sigma], [0, I]] for symmetric sigma."""
    k = sigma.shape[0]
    mat = np.eye(2 * k, dtype=np.int64)
    mat[:k, k:] = sigma
    return mat


def shear_generator(k: int, i: int, j: int) -> np.ndarray:
    """G_ij = U_{E_ij} with E_ij the (i,j) symmetric unit (1-based indices)."""
    sigma = np.zeros((k, k), dtype=np.int64)
    sigma[i - 1, j - 1] = 1
    sigma[j - 1, i - 1] = 1
    return upper_shear(sigma)


def omega_form(k: int, modulus: int) -> np.ndarray:
    """The alternating form J = [[0, I], [-I, 0]] used for Sp membership."""
    mat = np.zeros((2 * k, 2 * k), dtype=np.int64)
    mat[:k, k:] = np.eye(k, dtype=np.int64)
    mat[k:, :k] = -np.eye(k, dtype=np.int64) % modulus
    return mat


def row_dilation(k: int, t: int, coeffs) -> np.ndarray:
    """The GL_k matrix alpha with first row (t, a_1..a_{k-1}) and unit diagonal."""
    coeffs = list(coeffs)
    if len(coeffs) != k - 1:
        raise ValueError(f"expected {k - 1} coefficients, got {len(coeffs)}")
    mat = np.eye(k, dtype=np.int64)
    mat[0, 0] = t
    mat[0, 1:] = coeffs
    return mat


def paired_block(alpha: np.ndarray, modulus: int) -> np.ndarray:
    """D_alpha = diag(alpha, (alpha^{-1})^T), a symplectic block matrix."""
    k = alpha.shape[0]
    mat = np.zeros((2 * k, 2 * k), dtype=np.int64)
    mat[:k, :k] = alpha % modulus
    mat[k:, k:] = matrix_inverse_mod(alpha, modulus).T
    return mat


def matrix_inverse_mod(mat: np.ndarray, modulus: int) -> np.ndarray:
    """Inverse of an invertible matrix over Z/m by Gauss-Jordan on unit pivots."""
    k = mat.shape[0]
    work = np.asarray(mat, dtype=np.int64) % modulus
    aug = np.concatenate([work, np.eye(k, dtype=np.int64)], axis=1)
    for col in range(k):
        pivot_row = None
        for row in range(col, k):
            try:
                pivot_inv = pow(int(aug[row, col]), -1, modulus)
            except ValueError:
                continue
            pivot_row = row
            break
        if pivot_row is None:
            raise ValueError("matrix is not invertible modulo the modulus")
        if pivot_row != col:
            aug[[col, pivot_row]] = aug[[pivot_row, col]]
        aug[col] = (aug[col] * pivot_inv) % modulus
        for row in range(k):
            if row != col and aug[row, col]:
                aug[row] = (aug[row] - aug[row, col] * aug[col]) % modulus
    return aug[:, k:]


def determinant_mod(mat: np.ndarray, modulus: int) -> int:
    """Exact determinant reduced mod m (integer arithmetic via sympy)."""
    return int(SymMatrix(np.asarray(mat, dtype=object)).det()) % modulus


def is_special_linear(mat: np.ndarray, modulus: int) -> bool:
    return determinant_mod(mat, modulus) == 1 % modulus


def is_symplectic(mat: np.ndarray, k: int, modulus: int) -> bool:
    j_form = omega_form(k, modulus)
    lhs = (np.asarray(mat, dtype=np.int64) @ j_form @ np.asarray(mat, dtype=np.int64).T)
    return bool(np.array_equal(lhs % modulus, j_form % modulus))


def build_sl(k: int, p: int, n: int = 1,
             element_budget: int = DEFAULT_ELEMENT_BUDGET) -> GroupTable:
    """SL_k(Z/p^n) by closure from the transvections I + E_ij."""
    if k < 2 or n < 1:
        raise UnsupportedParameters(f"invalid SL parameters k={k}, n={n}")
    if not isprime(p):
        raise UnsupportedPrime(f"modulus base {p} is not prime")
    expected = sl_order(k, p, n)
    if expected > element_budget:
        raise TooLarge(
            f"SL_{k}(Z/{p}^{n}) has order {expected}, over budget {element_budget}")
    backend = MatrixBackend(k, p**n)
    gens = [backend.encode(transvection(k, i, j))
            for i in range(k) for j in range(k) if i != j]

    def descriptor(order: int, generator_count: int) -> GroupDescriptor:
        return GroupDescriptor(family="sl", k=k, p=p, n=n, order=order,
                               generator_count=generator_count)

    return closure_from_generators(backend, gens, descriptor, element_budget,
                                   expected_order=expected)


def build_sp(k: int, p: int, n: int = 1,
             element_budget: int = DEFAULT_ELEMENT_BUDGET) -> GroupTable:
    """Sp_2k(Z/p^n) by closure from the shears U_sigma and their transposes."""
    if k < 1 or n < 1:
        raise UnsupportedParameters(f"invalid Sp parameters k={k}, n={n}")
    if not isprime(p):
        raise UnsupportedPrime(f"modulus base {p} is not prime")
    expected = sp_order(k, p, n)
    if expected > element_budget:
        raise TooLarge(
            f"Sp_{2 * k}(Z/{p}^{n}) has order {expected}, over budget {element_budget}")
    backend = MatrixBackend(2 * k, p**n)
    gens = []
    for sigma in symmetric_basis(k):
        shear = upper_shear(sigma)
        gens.append(backend.encode(shear))
        gens.append(backend.encode(shear.T))

    def descriptor(order: int, generator_count: int) -> GroupDescriptor:
        return GroupDescriptor(family="sp", k=k, p=p, n=n, order=order,
                               generator_count=generator_count)

    return closure_from_generators(backend, gens, descriptor, element_budget,
                                   expected_order=expected)


def stabilizer_subgroup(table: GroupTable, action: str = "projective"
                        ) -> tuple[list[int], int]:
    """Stabilizer of a distinguished (projective) point, with its index.

    For SL_k the point is the line [e_k] (last basis vector); for Sp_2k it
    is [e_1].  The natural action stabilizes the vector itself instead of
    the line.  Only prime fields are supported.
    """
    desc = table.descriptor
    if desc.family not in ("sl", "sp"):
        raise UnsupportedFamily(f"no point stabilizer for family {desc.family}")
    if desc.n != 1:
        raise UnsupportedParameters("stabilizers are computed over Z/p only")
    if action not in ("projective", "natural"):
        raise UnsupportedParameters(f"unknown action {action!r}")
    stack = table.element_stack()
    dim = stack.shape[1]
    col = dim - 1 if desc.family == "sl" else 0
    fixed_row = dim - 1 if desc.family == "sl" else 0
    column = stack[:, :, col]
    others = [r for r in range(dim) if r != fixed_row]
    mask = np.all(column[:, others] == 0, axis=1)
    if action == "natural":
        mask &= column[:, fixed_row] == 1
    ordinals = np.nonzero(mask)[0]
    size = len(ordinals)
    if size == 0 or table.order % size:
        raise RuntimeError("stabilizer size does not divide the group order")
    return ordinals.tolist(), table.order // size


def vector_permutation_unitary(mat: np.ndarray, p: int) -> np.ndarray:
    """Permutation matrix of mat acting on the nonzero column vectors of F_p^k.

    Vectors are ordered lexicographically; the result is unitary and the
    map mat -> matrix is a homomorphism, giving a concrete permutation
    representation for root-subspace computations.
    """
    mat = np.asarray(mat, dtype=np.int64) % p
    k = mat.shape[0]
    vectors = [np.array(v, dtype=np.int64)
               for v in np.ndindex(*([p] * k)) if any(v)]
    index = {tuple(v): i for i, v in enumerate(vectors)}
    d = len(vectors)
    out = np.zeros((d, d), dtype=complex)
    for i, v in enumerate(vectors):
        image = tuple((mat @ v) % p)
        out[index[image], i] = 1.0
    return out
