"""Joint eigenspace decomposition of commuting unitary families.

A root assigns to each matrix of the family its scalar action on one
joint eigenspace; the subspaces are pairwise orthogonal and fill the
ambient space.  Conjugating the family by a normalizing unitary h
permutes the roots, and the permuted subspace is h^{-1} applied to the
original one, which conjugated_root verifies via projectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NotCommuting, NotNormalizing, NotUnitary


@dataclass
class RootEntry:
    values: np.ndarray       # scalar action per family matrix
    basis: np.ndarray        # (ambient dim, subspace dim), orthonormal columns

    @property
    def dimension(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T


@dataclass
class RootDecomposition:
    family: list[np.ndarray]
    roots: list[RootEntry]
    tolerance: float

    @property
    def dimensions(self) -> tuple[int, ...]:
        return tuple(root.dimension for root in self.roots)


def _validate_family(family: list[np.ndarray], tolerance: float) -> list[np.ndarray]:
    mats = [np.asarray(m, dtype=complex) for m in family]
    if not mats:
        raise ValueError("family must contain at least one matrix")
    dim = mats[0].shape[0]
    eye = np.eye(dim)
    for i, m in enumerate(mats):
        if m.shape != (dim, dim):
            raise ValueError("family matrices must share one square shape")
        if np.abs(m @ m.conj().T - eye).max() > max(tolerance, 1e-10):
            raise NotUnitary(f"matrix {i} is not unitary within tolerance")
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if np.abs(mats[i] @ mats[j] - mats[j] @ mats[i]).max() > max(tolerance, 1e-10):
                raise NotCommuting(f"matrices {i} and {j} do not commute")
    return mats


def _scalar_action(mat: np.ndarray, basis: np.ndarray, tolerance: float
                   ) -> complex | None:
    compressed = basis.conj().T @ mat @ basis
    value = np.trace(compressed) / basis.shape[1]
    if np.abs(compressed - value * np.eye(basis.shape[1])).max() > tolerance:
        return None
    return complex(value)


def root_decomposition(family, tolerance: float = 1e-8, min_roots: int | None = None,
                       seed: int = 0) -> RootDecomposition:
    mats = _validate_family(list(family), tolerance)
    dim = mats[0].shape[0]
    rng = np.random.default_rng(seed)

    for _ in range(6):
        # Random Hermitian combination of real and imaginary parts; its
        # eigenspaces refine to the joint eigenspaces generically.
        combo = np.zeros((dim, dim), dtype=complex)
        for m in mats:
            a, b = rng.standard_normal(2)
            combo += a * (m + m.conj().T) / 2 + b * (m - m.conj().T) / 2j
        eigenvalues, vectors = np.linalg.eigh(combo)
        blocks: list[np.ndarray] = []
        start = 0
        for i in range(1, dim + 1):
            if i == dim or (eigenvalues[i] - eigenvalues[i - 1]
                            > 1e-8 * max(1.0, abs(eigenvalues[i]))):
                blocks.append(vectors[:, start:i])
                start = i
        roots = []
        success = True
        for basis in blocks:
            values = []
            for m in mats:
                value = _scalar_action(m, basis, max(tolerance, 1e-7))
                if value is None:
                    success = False
                    break
                values.append(value)
            if not success:
                break
            roots.append(RootEntry(values=np.array(values), basis=basis))
        if success:
            roots.sort(key=lambda r: (-r.dimension,
                                      tuple(np.round(r.values, 6).view(float))))
            if min_roots is not None and len(roots) < min_roots:
                raise ValueError(
                    f"found {len(roots)} roots, caller required ≥ {min_roots}")
            return RootDecomposition(family=mats, roots=roots, tolerance=tolerance)
    raise RuntimeError("random combinations failed to separate the joint eigenspaces")


def conjugated_root(decomposition: RootDecomposition, h, root_index: int,
                    tolerance: float | None = None) -> tuple[int, RootEntry]:
    """The root r_h(s) = r(h s h^{-1}) and its index in the decomposition.

    Verifies that h normalizes the family's eigenstructure and that the
    returned subspace equals h^{-1} applied to the original root's.
    """
    tol = decomposition.tolerance if tolerance is None else tolerance
    h = np.asarray(h, dtype=complex)
    dim = h.shape[0]
    if np.abs(h @ h.conj().T - np.eye(dim)).max() > max(tol, 1e-10):
        raise NotUnitary("conjugating matrix is not unitary")
    entry = decomposition.roots[root_index]

    values = []
    for m in decomposition.family:
        conj = h @ m @ h.conj().T
        value = _scalar_action(conj, entry.basis, max(tol, 1e-7))
        if value is None:
            raise NotNormalizing("conjugated matrix is not scalar on the root space")
        values.append(value)
    values = np.array(values)

    match = None
    for idx, candidate in enumerate(decomposition.roots):
        if np.abs(candidate.values - values).max() < 1e-6:
            match = idx
            break
    if match is None:
        raise NotNormalizing("conjugated values do not form a root of the family")

    target = decomposition.roots[match]
    expected = h.conj().T @ entry.projector() @ h
    if np.abs(target.projector() - expected).max() > max(tol, 1e-7):
        raise NotNormalizing("conjugated subspace mismatch under projector comparison")
    return match, target
