import numpy as np
import pytest

from qrgroups.errors import NotCommuting, NotNormalizing, NotUnitary
from qrgroups.groups.matrix import (last_column_unipotent,
                                    vector_permutation_unitary)
from qrgroups.reptheory import conjugated_root, root_decomposition


@pytest.fixture(scope="module")
def shear_family():
    # permutation action of the cyclic shear subgroup of SL_2(F_3) on the
    # eight nonzero vectors of F_3^2
    e1 = last_column_unipotent(2, 0)
    return [vector_permutation_unitary(np.linalg.matrix_power(e1, s) % 3, 3)
            for s in range(3)]


@pytest.fixture(scope="module")
def shear_roots(shear_family):
    return root_decomposition(shear_family, seed=0)


def test_three_roots_with_expected_dimensions(shear_roots):
    assert len(shear_roots.roots) == 3
    assert sorted(shear_roots.dimensions, reverse=True) == [4, 2, 2]
    assert sum(shear_roots.dimensions) == 8


def test_root_values_are_cube_roots(shear_roots):
    omega = np.exp(2j * np.pi / 3)
    value_sets = {tuple(np.round(root.values, 8)) for root in shear_roots.roots}
    expected = {
        tuple(np.round([1, 1, 1], 8)),
        tuple(np.round([1, omega, omega**2], 8)),
        tuple(np.round([1, omega**2, omega], 8)),
    }
    assert value_sets == expected


def test_bases_orthonormal_and_complete(shear_roots):
    dim = 8
    assembled = np.zeros((dim, dim), dtype=complex)
    for root in shear_roots.roots:
        basis = root.basis
        gram = basis.conj().T @ basis
        assert np.abs(gram - np.eye(basis.shape[1])).max() < 1e-10
        assembled += root.projector()
    assert np.abs(assembled - np.eye(dim)).max() < 1e-10


def test_family_reconstruction(shear_family, shear_roots):
    for index, mat in enumerate(shear_family):
        rebuilt = np.zeros_like(mat, dtype=complex)
        for root in shear_roots.roots:
            rebuilt += root.values[index] * root.projector()
        assert np.abs(rebuilt - mat).max() < 1e-10


def test_subspaces_are_joint_eigenspaces(shear_family, shear_roots):
    for root in shear_roots.roots:
        for index, mat in enumerate(shear_family):
            image = mat @ root.basis
            assert np.abs(image - root.values[index] * root.basis).max() < 1e-8


def test_conjugation_swaps_nontrivial_roots(shear_roots):
    alpha = np.diag([2, 1])
    h = vector_permutation_unitary(alpha, 3)
    trivial = next(i for i, root in enumerate(shear_roots.roots)
                   if np.abs(root.values - 1).max() < 1e-8)
    nontrivial = [i for i in range(3) if i != trivial]
    seen = {}
    for index in range(3):
        target, entry = conjugated_root(shear_roots, h, index)
        seen[index] = target
        source = shear_roots.roots[index]
        assert entry.dimension == source.dimension
    assert seen[trivial] == trivial
    assert seen[nontrivial[0]] == nontrivial[1]
    assert seen[nontrivial[1]] == nontrivial[0]


def test_conjugated_root_values_follow_permutation(shear_family, shear_roots):
    h = vector_permutation_unitary(np.diag([2, 1]), 3)
    h_inv = h.conj().T
    for index in range(3):
        target, entry = conjugated_root(shear_roots, h, index)
        # conjugated subspace must be an eigenspace with the target values
        for fam_index, mat in enumerate(shear_family):
            conj_mat = h_inv @ mat @ h
            image = conj_mat @ entry.basis
            expected = shear_roots.roots[index].values[fam_index]
            assert np.abs(image - expected * entry.basis).max() < 1e-8


def test_rejects_non_unitary():
    with pytest.raises(NotUnitary):
        root_decomposition([np.array([[1.0, 1.0], [0.0, 1.0]])])


def test_rejects_non_commuting():
    swap = np.array([[0.0, 1.0], [1.0, 0.0]])
    phase = np.diag([1.0, -1.0])
    with pytest.raises(NotCommuting):
        root_decomposition([swap, phase])


def test_rejects_non_normalizing(shear_roots):
    stray = np.eye(8)
    stray[[0, 1]] = stray[[1, 0]]
    with pytest.raises(NotNormalizing):
        conjugated_root(shear_roots, stray, 0)
