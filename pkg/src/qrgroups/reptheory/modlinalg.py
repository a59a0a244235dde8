"""Dense exact linear algebra over a prime field F_l.

Matrices are int64 numpy arrays with entries reduced mod l.  Products
guard against int64 overflow by switching to Python-integer arithmetic
when the modulus is large enough that a dot product could wrap.
"""

from __future__ import annotations

import numpy as np


def inv_mod(a: int, l: int) -> int:
    return pow(int(a) % l, -1, l)


def matmul_mod(a: np.ndarray, b: np.ndarray, l: int) -> np.ndarray:
    inner = a.shape[-1]
    if inner * (l - 1) * (l - 1) < 2**62:
        return (a @ b) % l
    big = (a.astype(object) @ b.astype(object)) % l
    return big.astype(np.int64)


def rref(mat: np.ndarray, l: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot column list."""
    work = np.array(mat, dtype=np.int64) % l
    rows, cols = work.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        nz = np.nonzero(work[row:, col])[0]
        if len(nz) == 0:
            continue
        pick = row + int(nz[0])
        if pick != row:
            work[[row, pick]] = work[[pick, row]]
        work[row] = work[row] * inv_mod(work[row, col], l) % l
        for other in range(rows):
            if other != row and work[other, col]:
                work[other] = (work[other] - work[other, col] * work[row]) % l
        pivots.append(col)
        row += 1
    return work, pivots


def nullspace(mat: np.ndarray, l: int) -> np.ndarray:
    """Columns spanning the kernel of mat over F_l."""
    rows, cols = mat.shape
    reduced, pivots = rref(mat, l)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for idx, fc in enumerate(free):
        basis[fc, idx] = 1
        for prow, pcol in enumerate(pivots):
            basis[pcol, idx] = (-reduced[prow, fc]) % l
    return basis


def solve_in_basis(basis: np.ndarray, target: np.ndarray, l: int) -> np.ndarray:
    """X with basis @ X = target, for a full-column-rank basis."""
    s = basis.shape[1]
    reduced, pivots = rref(np.concatenate([basis, target], axis=1), l)
    if pivots[:s] != list(range(s)) or len(pivots) != s:
        raise ValueError("basis is not full column rank or system inconsistent")
    return reduced[:s, s:]


def restrict_action(mat: np.ndarray, basis: np.ndarray, l: int) -> np.ndarray:
    """Matrix of mat acting on the invariant column space of basis."""
    return solve_in_basis(basis, matmul_mod(mat, basis, l), l)


def hessenberg_mod(mat: np.ndarray, l: int) -> np.ndarray:
    """Similarity reduction to upper Hessenberg form over F_l."""
    work = np.array(mat, dtype=np.int64) % l
    s = work.shape[0]
    for col in range(s - 2):
        nz = np.nonzero(work[col + 1:, col])[0]
        if len(nz) == 0:
            continue
        pick = col + 1 + int(nz[0])
        if pick != col + 1:
            work[[col + 1, pick]] = work[[pick, col + 1]]
            work[:, [col + 1, pick]] = work[:, [pick, col + 1]]
        inv_piv = inv_mod(work[col + 1, col], l)
        for row in range(col + 2, s):
            if work[row, col]:
                factor = work[row, col] * inv_piv % l
                work[row] = (work[row] - factor * work[col + 1]) % l
                work[:, col + 1] = (work[:, col + 1] + factor * work[:, row]) % l
    return work


def charpoly_mod(mat: np.ndarray, l: int) -> np.ndarray:
    """Characteristic polynomial coefficients (ascending powers, monic)."""
    s = mat.shape[0]
    if s == 0:
        return np.array([1], dtype=np.int64)
    hess = hessenberg_mod(mat, l)
    polys = [np.array([1], dtype=np.int64)]
    for m in range(1, s + 1):
        prev = polys[m - 1]
        cur = np.zeros(m + 1, dtype=np.int64)
        cur[1:] += prev
        cur[:-1] -= hess[m - 1, m - 1] * prev
        beta = 1
        for i in range(m - 2, -1, -1):
            beta = beta * hess[i + 1, i] % l
            if beta == 0:
                break
            coef = hess[i, m - 1] * beta % l
            contrib = polys[i]
            cur[:len(contrib)] -= coef * contrib
        polys.append(cur % l)
    return polys[s]


def poly_roots_mod(coeffs: np.ndarray, l: int) -> list[int]:
    """All roots in F_l by a chunked, vectorised Horner scan over the field."""
    roots: list[int] = []
    chunk = 1 << 20
    for start in range(0, l, chunk):
        points = np.arange(start, min(start + chunk, l), dtype=np.int64)
        vals = np.zeros(len(points), dtype=np.int64)
        for c in coeffs[::-1]:
            vals = (vals * points + int(c)) % l
        roots.extend((start + np.nonzero(vals == 0)[0]).tolist())
    return roots
