from fractions import Fraction

import numpy as np
import pytest

from qrgroups.errors import (GroupMismatch, MeanNotZero, PreconditionUnmet,
                             TooLarge)
from qrgroups.groups import build_abelian, build_sl
from qrgroups.mixing import (GroupFunction, convolution_operator_svd, convolve,
                             cube_cover_check, mixing_check, mixing_defect,
                             mixing_suite, product_measure_lower,
                             random_mean_zero, random_subset, triple_density,
                             triple_product_check)


def test_convolution_on_cyclic_group():
    table = build_abelian((3,))
    delta0 = GroupFunction.indicator(table, [0])
    delta1 = GroupFunction.indicator(table, [1])
    conv = convolve(delta0, delta1)
    # x * 1^{-1} in the support means the mass sits at ordinal 1
    assert np.allclose(conv.values, np.array([0, 1, 0]) / 3)


def test_convolution_with_uniform_is_mean(sl2f3):
    table, _, _ = sl2f3
    rng = np.random.default_rng(6)
    subset = random_subset(table, rng)
    ind = GroupFunction.indicator(table, subset)
    uniform = GroupFunction.constant(table, 1.0)
    conv = convolve(uniform, ind)
    assert np.allclose(conv.values, len(subset) / table.order)


def test_convolution_associative(sl2f3, alt5):
    for bundle in (sl2f3, alt5):
        table, _, _ = bundle
        rng = np.random.default_rng(7)
        f1 = random_mean_zero(table, rng)
        f2 = random_mean_zero(table, rng)
        f3 = random_mean_zero(table, rng)
        left = convolve(convolve(f1, f2), f3)
        right = convolve(f1, convolve(f2, f3))
        assert np.abs(left.values - right.values).max() < 1e-9


def test_indicator_inner_product_counts_triples(sl2f3):
    table, _, _ = sl2f3
    rng = np.random.default_rng(8)
    n = table.order
    for _ in range(20):
        a = random_subset(table, rng)
        b = random_subset(table, rng)
        c = random_subset(table, rng)
        conv = convolve(GroupFunction.indicator(table, a),
                        GroupFunction.indicator(table, b))
        ind_c = GroupFunction.indicator(table, c)
        inner = float(np.real(conv.values @ ind_c.values.conj()) / n)
        triple = triple_density(table, a, b, c)
        assert triple.density == Fraction(triple.count, n * n)
        assert abs(inner - float(triple.density)) < 1e-10


def test_triple_density_brute_force():
    table = build_abelian((6,))
    a, b, c = [0, 1], [2, 3], [3, 4, 5]
    expected = sum(1 for x in a for y in b if table.mul(x, y) in set(c))
    triple = triple_density(table, a, b, c)
    assert triple.count == expected


def test_mixing_bound_holds(sl2f5):
    table, _, chars = sl2f5
    rng = np.random.default_rng(9)
    for _ in range(50):
        check = mixing_check(random_mean_zero(table, rng),
                             random_mean_zero(table, rng), 2)
        assert check.passed
        assert check.lhs <= check.rhs + 1e-9


def test_mixing_check_requires_mean_zero(sl2f3):
    table, _, _ = sl2f3
    ones = GroupFunction.constant(table, 1.0)
    with pytest.raises(MeanNotZero):
        mixing_check(ones, ones, 1)


def test_group_mismatch_rejected(sl2f3, sl2f5):
    f1 = GroupFunction.constant(sl2f3[0], 1.0)
    f2 = GroupFunction.constant(sl2f5[0], 1.0)
    with pytest.raises(GroupMismatch):
        convolve(f1, f2)


def test_operator_norm_hierarchy(sl2f5):
    table, _, _ = sl2f5
    rng = np.random.default_rng(10)
    for _ in range(20):
        f1 = random_mean_zero(table, rng)
        spectrum = convolution_operator_svd(f1)
        # Hilbert-Schmidt identity for the full kernel
        assert abs(float(np.sum(spectrum.full**2)) - f1.norm2**2) < 1e-9
        # quasi-randomness cuts the restricted top singular value
        assert spectrum.restricted[0] <= f1.norm2 / np.sqrt(2) + 1e-9
        assert spectrum.restricted[0] <= spectrum.full[0] + 1e-12


def test_restricted_sigma_is_attained(sl2f3):
    table, _, _ = sl2f3
    n = table.order
    rng = np.random.default_rng(11)
    f1 = random_mean_zero(table, rng)
    spectrum = convolution_operator_svd(f1)
    kernel = f1.values[table.xyinv_table()] / n
    projector = np.eye(n) - np.ones((n, n)) / n
    restricted = projector @ kernel @ projector
    _, sigmas, vh = np.linalg.svd(restricted)
    assert abs(sigmas[0] - spectrum.restricted[0]) < 1e-9
    top_right = vh[0].conj()
    f2 = GroupFunction.from_values(table, top_right - top_right.mean())
    conv = convolve(f1, f2)
    ratio = conv.norm2 / f2.norm2
    assert abs(ratio - spectrum.restricted[0]) < 1e-8


def test_uniform_restricted_spectrum_vanishes(sl2f3):
    table, _, _ = sl2f3
    uniform = GroupFunction.constant(table, 1.0)
    spectrum = convolution_operator_svd(uniform)
    assert spectrum.restricted[0] < 1e-12


def test_defect_bound(sl2f5):
    table, _, _ = sl2f5
    rng = np.random.default_rng(12)
    for _ in range(30):
        a = random_subset(table, rng)
        b = random_subset(table, rng)
        check = mixing_defect(table, a, b, 2)
        assert check.passed
    assert mixing_defect(table, list(range(table.order)), [3], 2).defect < 1e-12
    assert mixing_defect(table, [], [3], 2).defect < 1e-12


def test_triple_product_check_exact():
    table = build_abelian((5,))
    everything = list(range(5))
    check = triple_product_check(table, everything, everything, everything,
                                 4, Fraction(1, 2))
    assert check.applicable and check.passed
    assert check.density == 1
    assert check.required == Fraction(1, 2)
    small = triple_product_check(table, [1], [2], [3], 1, Fraction(1, 2))
    assert not small.applicable


def test_cube_cover():
    table = build_abelian((7,))
    # m = 400 makes the precondition pass for |A| = 2: 400 * 8 > 343
    assert cube_cover_check(table, [1, 2], 400) in (True, False)
    with pytest.raises(PreconditionUnmet):
        cube_cover_check(table, [1, 2], 1)


def test_cube_cover_full_set_covers(sl2f3):
    table, _, _ = sl2f3
    assert cube_cover_check(table, list(range(table.order)), 2)


def test_product_measure_lower(sl2f5):
    table, _, _ = sl2f5
    rng = np.random.default_rng(13)
    for _ in range(30):
        a = random_subset(table, rng, min_density=0.05)
        b = random_subset(table, rng, min_density=0.05)
        check = product_measure_lower(table, a, b, 2)
        assert check.passed
        if not check.vacuous:
            assert check.measure >= check.bound
    with pytest.raises(PreconditionUnmet):
        product_measure_lower(table, [], [1], 2)


def test_random_subset_density_window(sl2f3):
    table, _, _ = sl2f3
    rng = np.random.default_rng(14)
    for _ in range(50):
        subset = random_subset(table, rng, min_density=0.25, max_density=0.5)
        density = len(subset) / table.order
        assert 0.2 <= density <= 0.55
        assert len(set(subset)) == len(subset)


def test_random_mean_zero_is_mean_zero(sl2f3):
    table, _, _ = sl2f3
    rng = np.random.default_rng(15)
    func = random_mean_zero(table, rng)
    assert abs(func.mean) < 1e-12


def test_size_limit_enforced():
    table = build_abelian((3001,))
    func = GroupFunction.constant(table, 1.0)
    with pytest.raises(TooLarge):
        convolution_operator_svd(func)
    with pytest.raises(TooLarge):
        convolve(func, func)


def test_suite_shape_and_pass(sl2f5):
    table, _, _ = sl2f5
    rows = mixing_suite(table, 2, trials=25, seed=42)
    names = [row["test"] for row in rows]
    assert names == ["convolution_norm", "indicator_defect", "operator_norm",
                     "hilbert_schmidt", "triple_product", "product_measure",
                     "cube_cover"]
    for row in rows:
        assert set(row) == {"test", "trials", "failures", "worst_ratio",
                            "seed"}
        assert row["failures"] == 0
        assert row["seed"] == 42


def test_suite_deterministic(sl2f3):
    table, _, _ = sl2f3
    first = mixing_suite(table, 1, trials=10, seed=5)
    second = mixing_suite(table, 1, trials=10, seed=5)
    assert first == second
