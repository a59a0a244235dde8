"""End-to-end acceptance battery.

Each test covers one headline guarantee and prints a single PASS/FAIL
line; run with -s to see them.  Shared heavy objects (the order-51840
symplectic group, the level-2 tree quotients) are built once per module.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest
from sympy import factorint

from qrgroups.groups import (build_abelian, build_alt, build_sl, build_sp,
                             build_tree_level, conjugacy_classes,
                             point_stabilizer, stabilizer_subgroup,
                             alt_invariant_subspace_scan, even_weight_code)
from qrgroups.groups.matrix import (last_column_unipotent,
                                    vector_permutation_unitary)
from qrgroups.mixing import (convolution_operator_svd, cube_cover_check,
                             mixing_check, mixing_defect,
                             product_measure_lower, random_mean_zero,
                             random_subset, triple_product_check)
from qrgroups.productfree import (coset_product_free, exact_max_product_free,
                                  formula_vs_search, verify_product_free)
from qrgroups.quasirandom import bgc_bound, green_ruzsa_pf, h_bound, hf_bound
from qrgroups.reptheory import (character_table, conjugated_root,
                                min_faithful_degree, min_nontrivial_degree,
                                root_decomposition)


def conclude(number: int, label: str, problems: list[str]) -> None:
    verdict = "FAIL" if problems else "PASS"
    print(f"[{verdict}] criterion {number}: {label}")
    assert not problems, f"criterion {number}: " + "; ".join(problems)


def pipeline(table):
    classes = conjugacy_classes(table)
    chars = character_table(table, classes, seed=42)
    return table, classes, chars


@pytest.fixture(scope="module")
def sp4f3_bundle():
    start = time.perf_counter()
    bundle = pipeline(build_sp(2, 3))
    return (*bundle, time.perf_counter() - start)


def test_criterion_1_sl2_prime_field_degree_formula():
    problems = []
    start = time.perf_counter()
    for p in (3, 5, 7, 11, 13):
        _, _, chars = pipeline(build_sl(2, p))
        m = min_nontrivial_degree(chars)
        if m != (p - 1) // 2:
            problems.append(f"m(SL2(F{p})) = {m}, expected {(p - 1) // 2}")
    elapsed = time.perf_counter() - start
    if elapsed >= 60:
        problems.append(f"took {elapsed:.1f}s, limit 60s")
    conclude(1, "m(SL2(F_p)) = (p-1)/2 for p in 3..13", problems)


def test_criterion_2_quasirandomness_inequalities(sp4f3_bundle):
    problems = []
    instances = []
    for p in (3, 5):
        for n in (1, 2):
            table, classes, chars = pipeline(build_sl(2, p, n))
            instances.append(("sl2", 2, p, n, table, classes, chars))
    table, classes, chars = pipeline(build_sl(3, 3))
    instances.append(("slk", 3, 3, 1, table, classes, chars))
    sp_table, sp_classes, sp_chars, sp_seconds = sp4f3_bundle
    instances.append(("sp2k", 2, 3, 1, sp_table, sp_classes, sp_chars))

    for family, k, p, n, table, classes, chars in instances:
        label = table.descriptor.label()
        m = min_nontrivial_degree(chars)
        m_f = min_faithful_degree(chars, classes)
        if m < h_bound(family, k, p):
            problems.append(f"{label}: m = {m} < h = {h_bound(family, k, p)}")
        if m_f < hf_bound(family, k, p, n):
            problems.append(
                f"{label}: m_f = {m_f} < h_f = {hf_bound(family, k, p, n)}")
        if family == "sl2" and p == 3 and n == 2 and m_f < bgc_bound(3, 2):
            problems.append(f"{label}: m_f = {m_f} below congruence bound 4")
    if sp_seconds >= 600:
        problems.append(f"Sp4(F3) pipeline took {sp_seconds:.0f}s, limit 600s")
    conclude(2, "m >= h and m_f >= h_f on SL2(Z/p^n), SL3(F3), Sp4(F3)",
             problems)


def _partitions(n, cap=None):
    if n == 0:
        yield ()
        return
    cap = n if cap is None else cap
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def _abelian_types(order):
    types = [()]
    for p, a in factorint(order).items():
        grown = []
        for part in _partitions(a):
            factors = tuple(p**e for e in part)
            grown.extend(existing + factors for existing in types)
        types = grown
    return types


def test_criterion_3_green_ruzsa_cross_validation():
    problems = []
    start = time.perf_counter()
    checked = 0
    for order in range(2, 33):
        for factors in _abelian_types(order):
            report = formula_vs_search(factors)
            checked += 1
            if not report.passed:
                problems.append(
                    f"factors {factors}: search {report.computed} != "
                    f"formula {report.formula}")
    elapsed = time.perf_counter() - start
    if checked < 50:
        problems.append(f"only {checked} isomorphism types enumerated")
    if elapsed >= 300:
        problems.append(f"took {elapsed:.1f}s, limit 300s")
    spots = (((10,), Fraction(1, 2)), ((9,), Fraction(1, 3)),
             ((7,), Fraction(2, 7)))
    for factors, expected in spots:
        found = exact_max_product_free(build_abelian(factors)).density
        if found != expected:
            problems.append(f"Z/{factors[0]} density {found} != {expected}")
        if green_ruzsa_pf(factors) != expected:
            problems.append(f"Z/{factors[0]} formula mismatch")
    conclude(3, "exact search equals the abelian density formula through "
                "order 32", problems)


def test_criterion_4_mixing_inequality(sl2f5):
    table, _, chars = sl2f5
    problems = []
    m = min_nontrivial_degree(chars)
    if m != 2:
        problems.append(f"m(SL2(F5)) = {m}, expected 2")

    rng = np.random.default_rng(42)
    bad_pairs = 0
    for _ in range(1000):
        check = mixing_check(random_mean_zero(table, rng),
                             random_mean_zero(table, rng), 2)
        if not check.passed:
            bad_pairs += 1
    if bad_pairs:
        problems.append(f"{bad_pairs}/1000 mean-zero pairs broke the bound")

    rng = np.random.default_rng(43)
    bad_sets = 0
    for _ in range(500):
        check = mixing_defect(table, random_subset(table, rng),
                              random_subset(table, rng), 2)
        if not check.passed:
            bad_sets += 1
    if bad_sets:
        problems.append(f"{bad_sets}/500 set pairs broke the defect bound")

    rng = np.random.default_rng(44)
    sigma_bad = hs_bad = 0
    for _ in range(100):
        f1 = random_mean_zero(table, rng)
        spectrum = convolution_operator_svd(f1)
        if spectrum.restricted[0] > f1.norm2 / math.sqrt(2) + 1e-9:
            sigma_bad += 1
        if abs(float(np.sum(spectrum.full**2)) - f1.norm2**2) > 1e-9:
            hs_bad += 1
    if sigma_bad:
        problems.append(f"{sigma_bad}/100 operators broke the sigma_1 bound")
    if hs_bad:
        problems.append(f"{hs_bad}/100 operators broke the HS identity")
    conclude(4, "convolution mixing bounds on SL2(F5) with m = 2", problems)


def test_criterion_5_triple_products_and_covering(sl2f7):
    table, _, chars = sl2f7
    problems = []
    m = min_nontrivial_degree(chars)
    if m != 3:
        problems.append(f"m(SL2(F7)) = {m}, expected 3")
    n = table.order

    min_size = next(s for s in range(1, n + 1) if 3 * s**3 > n**3)
    rng = np.random.default_rng(42)
    not_covered = 0
    for _ in range(100):
        size = int(rng.integers(min_size, n + 1))
        subset = sorted(int(g) for g in rng.choice(n, size=size,
                                                   replace=False))
        if not cube_cover_check(table, subset, 3):
            not_covered += 1
    if not_covered:
        problems.append(f"{not_covered}/100 dense subsets failed A^3 = G")

    rng = np.random.default_rng(43)
    applicable = {Fraction(1, 2): 0, Fraction(9, 10): 0}
    failed = 0
    for _ in range(100):
        sets = [random_subset(table, rng, min_density=0.6) for _ in range(3)]
        for eta in applicable:
            check = triple_product_check(table, *sets, 3, eta)
            if check.applicable:
                applicable[eta] += 1
                if not check.passed:
                    failed += 1
    if failed:
        problems.append(f"{failed} applicable triple checks failed")
    if applicable[Fraction(9, 10)] == 0:
        problems.append("no triple check was applicable at eta = 0.9")

    rng = np.random.default_rng(44)
    measure_bad = 0
    for _ in range(200):
        check = product_measure_lower(table, random_subset(table, rng),
                                      random_subset(table, rng), 3)
        if not check.passed:
            measure_bad += 1
    if measure_bad:
        problems.append(f"{measure_bad}/200 product measure bounds violated")
    conclude(5, "covering and triple product bounds on SL2(F7) with m = 3",
             problems)


def test_criterion_6_coset_constructions(sp4f3_bundle):
    problems = []

    def check(table, members, expected, label):
        result = coset_product_free(table, members)
        if result.density != expected:
            problems.append(f"{label}: density {result.density} != {expected}")
        if not verify_product_free(table, result.witness):
            problems.append(f"{label}: witness is not product-free")

    for p in (3, 5, 7):
        table = build_sl(2, p)
        members, _ = stabilizer_subgroup(table)
        check(table, members, Fraction(1, p + 1), f"SL2(F{p})")

    sp_table = sp4f3_bundle[0]
    members, _ = stabilizer_subgroup(sp_table)
    check(sp_table, members, Fraction(1, 40), "Sp4(F3)")

    alt7 = build_alt(7)
    members, _ = point_stabilizer(alt7, 0)
    check(alt7, members, Fraction(1, 7), "Alt7")
    conclude(6, "coset product-free densities 1/(p+1), 1/40, and 1/7",
             problems)


def test_criterion_7_tree_module():
    problems = []
    for k in (2, 3):
        built = build_tree_level(k, 2).order
        formula = (math.factorial(k + 1) // 2) * \
            math.factorial(k) ** (k + 1) // 2
        if built != formula:
            problems.append(f"|F_2({k})| = {built}, formula {formula}")

    _, _, chars = pipeline(build_alt(7))
    m = min_nontrivial_degree(chars)
    if m != 6:
        problems.append(f"m(Alt7) = {m}, expected 6")

    start = time.perf_counter()
    for points, expected in ((7, 6), (8, 6)):
        scan = alt_invariant_subspace_scan(even_weight_code(points), points)
        if scan.min_corank != expected:
            problems.append(
                f"scan rank {scan.min_corank} at m = {points}, "
                f"expected {expected}")
    if time.perf_counter() - start >= 10:
        problems.append("invariant-subspace scans exceeded 10s")
    conclude(7, "tree quotient orders, m(Alt7) = 6, invariant scan rank 6",
             problems)


def test_criterion_8_root_decomposition():
    problems = []
    shear = last_column_unipotent(2, 0)
    family = [vector_permutation_unitary(np.linalg.matrix_power(shear, s) % 3,
                                         3) for s in range(3)]
    decomposition = root_decomposition(family, seed=0)
    dims = sorted(decomposition.dimensions, reverse=True)
    if dims != [4, 2, 2]:
        problems.append(f"root dimensions {dims}, expected [4, 2, 2]")

    assembled = np.zeros((8, 8), dtype=complex)
    for root in decomposition.roots:
        gram = root.basis.conj().T @ root.basis
        if np.abs(gram - np.eye(root.dimension)).max() > 1e-8:
            problems.append("root basis is not orthonormal")
        assembled += root.projector()
    if np.abs(assembled - np.eye(8)).max() > 1e-8:
        problems.append("projectors do not resolve the identity")

    h = vector_permutation_unitary(np.diag([2, 1]), 3)
    trivial = next(i for i, root in enumerate(decomposition.roots)
                   if np.abs(root.values - 1).max() < 1e-8)
    nontrivial = [i for i in range(3) if i != trivial]
    images = {i: conjugated_root(decomposition, h, i)[0] for i in range(3)}
    if images[trivial] != trivial:
        problems.append("conjugation moved the trivial root")
    if {images[nontrivial[0]], images[nontrivial[1]]} != set(nontrivial) or \
            images[nontrivial[0]] == nontrivial[0]:
        problems.append(f"conjugation did not swap nontrivial roots: {images}")
    conclude(8, "three roots of dimensions (4, 2, 2) swapped by conjugation",
             problems)
