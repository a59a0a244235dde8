"""Convolution mixing checks on a finite group with normalized Haar measure.

Convention throughout: mu({g}) = 1/|G|, so norms, means, convolutions and
densities all carry a 1/|G| weight.  The central inequality is

    ||f1 * f2||_2  <=  ||f1||_2 ||f2||_2 / sqrt(m)

whenever at least one factor has mean zero, with m the minimal nontrivial
representation degree of the group.  Set-level corollaries (indicator
defect, triple products, cube covering, product-measure lower bound) are
verified by exhaustive enumeration, exact where the quantities are rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import GroupMismatch, MeanNotZero, PreconditionUnmet, TooLarge
from .groups.table import GroupTable

NORM_TOLERANCE = 1e-9
MEAN_TOLERANCE = 1e-12
SVD_LIMIT = 3000


@dataclass(frozen=True)
class GroupFunction:
    """A complex-valued function on the group, indexed by element ordinal."""

    table: GroupTable
    values: np.ndarray

    @classmethod
    def from_values(cls, table: GroupTable, values) -> "GroupFunction":
        arr = np.asarray(values, dtype=np.complex128)
        if arr.shape != (table.order,):
            raise ValueError("need one value per element")
        arr = arr.copy()
        arr.flags.writeable = False
        return cls(table, arr)

    @classmethod
    def indicator(cls, table: GroupTable, ordinals) -> "GroupFunction":
        values = np.zeros(table.order, dtype=np.complex128)
        values[list(set(int(o) for o in ordinals))] = 1.0
        values.flags.writeable = False
        return cls(table, values)

    @classmethod
    def constant(cls, table: GroupTable, value: complex) -> "GroupFunction":
        return cls.from_values(table, np.full(table.order, value))

    @property
    def norm2(self) -> float:
        return float(np.linalg.norm(self.values)) / math.sqrt(self.table.order)

    @property
    def mean(self) -> complex:
        return complex(self.values.mean())


def _same_group(f1: GroupFunction, f2: GroupFunction) -> None:
    if f1.table.descriptor != f2.table.descriptor:
        raise GroupMismatch(
            f"{f1.table.descriptor.label()} vs {f2.table.descriptor.label()}")


def convolve(f1: GroupFunction, f2: GroupFunction) -> GroupFunction:
    """(f1 * f2)(x) = (1/|G|) sum_y f1(x y^{-1}) f2(y), by direct summation."""
    _same_group(f1, f2)
    table = f1.table
    kernel = f1.values[table.xyinv_table()]
    return GroupFunction.from_values(
        table, kernel @ f2.values / table.order)


@dataclass(frozen=True)
class MixingCheck:
    lhs: float
    rhs: float
    passed: bool


def mixing_check(f1: GroupFunction, f2: GroupFunction, m: int,
                 tolerance: float = NORM_TOLERANCE,
                 mean_tolerance: float = MEAN_TOLERANCE) -> MixingCheck:
    """Convolution norm bound; needs a mean-zero factor and m <= m(G)."""
    _same_group(f1, f2)
    if abs(f1.mean) > mean_tolerance and abs(f2.mean) > mean_tolerance:
        raise MeanNotZero("neither factor has mean zero")
    lhs = convolve(f1, f2).norm2
    rhs = f1.norm2 * f2.norm2 / math.sqrt(m)
    return MixingCheck(lhs, rhs, lhs <= rhs + tolerance)


@dataclass(frozen=True)
class OperatorSpectrum:
    """Singular values of f2 -> f1 * f2, full and restricted to mean zero."""

    full: np.ndarray
    restricted: np.ndarray


def convolution_operator_svd(f1: GroupFunction) -> OperatorSpectrum:
    table = f1.table
    n = table.order
    if n > SVD_LIMIT:
        raise TooLarge(f"dense decomposition capped at order {SVD_LIMIT}")
    kernel = f1.values[table.xyinv_table()] / n
    full = np.linalg.svd(kernel, compute_uv=False)
    projector = np.eye(n) - np.full((n, n), 1.0 / n)
    restricted = np.linalg.svd(projector @ kernel @ projector, compute_uv=False)
    return OperatorSpectrum(full=full, restricted=restricted)


@dataclass(frozen=True)
class DefectCheck:
    defect: float
    bound: float
    passed: bool


def mixing_defect(table: GroupTable, a_ordinals, b_ordinals, m: int,
                  tolerance: float = NORM_TOLERANCE) -> DefectCheck:
    """|| 1_A * 1_B - mu(A)mu(B) ||_2 <= sqrt(mu(A)mu(B)/m)."""
    ind_a = GroupFunction.indicator(table, a_ordinals)
    ind_b = GroupFunction.indicator(table, b_ordinals)
    mu_a = ind_a.mean.real
    mu_b = ind_b.mean.real
    deviation = convolve(ind_a, ind_b).values - mu_a * mu_b
    defect = float(np.linalg.norm(deviation)) / math.sqrt(table.order)
    bound = math.sqrt(mu_a * mu_b / m)
    return DefectCheck(defect, bound, defect <= bound + tolerance)


@dataclass(frozen=True)
class TripleDensity:
    count: int
    density: Fraction


def triple_density(table: GroupTable, a_ordinals, b_ordinals,
                   c_ordinals) -> TripleDensity:
    """Count pairs (a, b) in A x B with ab in C; density is count/|G|^2."""
    n = table.order
    b_arr = np.asarray(sorted(set(int(o) for o in b_ordinals)), dtype=np.int64)
    in_c = np.zeros(n, dtype=bool)
    in_c[list(set(int(o) for o in c_ordinals))] = True
    count = 0
    if b_arr.size:
        for a in sorted(set(int(o) for o in a_ordinals)):
            count += int(in_c[table.mul_row(a)[b_arr]].sum())
    return TripleDensity(count, Fraction(count, n * n))


@dataclass(frozen=True)
class TripleCheck:
    applicable: bool
    passed: bool
    density: Fraction
    required: Fraction


def triple_product_check(table: GroupTable, a_ordinals, b_ordinals, c_ordinals,
                         m: int, eta: Fraction) -> TripleCheck:
    """If m mu(A)mu(B)mu(C) >= 1/eta^2, solution density >= (1-eta) of full."""
    n = table.order
    eta = Fraction(eta)
    mu_product = (Fraction(len(set(a_ordinals)), n)
                  * Fraction(len(set(b_ordinals)), n)
                  * Fraction(len(set(c_ordinals)), n))
    applicable = m * mu_product >= 1 / eta**2
    required = (1 - eta) * mu_product
    density = triple_density(table, a_ordinals, b_ordinals, c_ordinals).density
    passed = (not applicable) or density >= required
    return TripleCheck(applicable, passed, density, required)


def _spread(table: GroupTable, mask: np.ndarray, by: np.ndarray) -> np.ndarray:
    out = np.zeros(table.order, dtype=bool)
    for i in np.flatnonzero(mask):
        out[table.mul_row(int(i))[by]] = True
    return out


def cube_cover_check(table: GroupTable, a_ordinals, m: int) -> bool:
    """Verify A*A*A covers G; claimed only when mu(A)^3 > 1/m."""
    n = table.order
    ordinals = sorted(set(int(o) for o in a_ordinals))
    if m * len(ordinals) ** 3 <= n**3:
        raise PreconditionUnmet("density not above m^(-1/3)")
    by = np.asarray(ordinals, dtype=np.int64)
    mask = np.zeros(n, dtype=bool)
    mask[by] = True
    return bool(_spread(table, _spread(table, mask, by), by).all())


@dataclass(frozen=True)
class ProductMeasureBound:
    measure: Fraction
    bound: Fraction
    passed: bool
    vacuous: bool


def product_measure_lower(table: GroupTable, a_ordinals, b_ordinals,
                          m: int) -> ProductMeasureBound:
    """mu(AB) >= 1 - (1 - mu(B)) / (m mu(A) mu(B)), vacuous when <= 0."""
    n = table.order
    a_set = sorted(set(int(o) for o in a_ordinals))
    b_arr = np.asarray(sorted(set(int(o) for o in b_ordinals)), dtype=np.int64)
    if not a_set or not b_arr.size:
        raise PreconditionUnmet("need nonempty A and B")
    covered = np.zeros(n, dtype=bool)
    for a in a_set:
        covered[table.mul_row(a)[b_arr]] = True
    measure = Fraction(int(covered.sum()), n)
    mu_a = Fraction(len(a_set), n)
    mu_b = Fraction(len(b_arr), n)
    bound = 1 - (1 - mu_b) / (m * mu_a * mu_b)
    vacuous = bound <= 0
    return ProductMeasureBound(measure, bound, vacuous or measure >= bound,
                               vacuous)


def random_subset(table: GroupTable, rng: np.random.Generator,
                  min_density: float = 0.0,
                  max_density: float = 1.0) -> list[int]:
    """Density drawn uniformly, then elements sampled without replacement."""
    n = table.order
    density = rng.uniform(min_density, max_density)
    size = min(n, max(1, int(round(density * n))))
    return sorted(int(o) for o in rng.choice(n, size=size, replace=False))


def random_mean_zero(table: GroupTable,
                     rng: np.random.Generator) -> GroupFunction:
    values = rng.standard_normal(table.order)
    values = values + 1j * rng.standard_normal(table.order)
    values = values - values.mean()
    return GroupFunction.from_values(table, values)


def _ratio_update(worst: float | None, ratio: float) -> float:
    return ratio if worst is None else min(worst, ratio)


def mixing_suite(table: GroupTable, m: int, trials: int, seed: int,
                 tolerance: float = NORM_TOLERANCE) -> list[dict]:
    """Seeded randomized verification battery; pass means worst_ratio >= 1."""
    results = []

    rng = np.random.default_rng(seed)
    failures = 0
    worst = None
    for _ in range(trials):
        check = mixing_check(random_mean_zero(table, rng),
                             random_mean_zero(table, rng), m,
                             tolerance=tolerance)
        if not check.passed:
            failures += 1
        if check.lhs > 0:
            worst = _ratio_update(worst, check.rhs / check.lhs)
    results.append({"test": "convolution_norm", "trials": trials,
                    "failures": failures, "worst_ratio": worst, "seed": seed})

    rng = np.random.default_rng(seed + 1)
    failures = 0
    worst = None
    for _ in range(trials):
        check = mixing_defect(table, random_subset(table, rng),
                              random_subset(table, rng), m,
                              tolerance=tolerance)
        if not check.passed:
            failures += 1
        if check.defect > 0:
            worst = _ratio_update(worst, check.bound / check.defect)
    results.append({"test": "indicator_defect", "trials": trials,
                    "failures": failures, "worst_ratio": worst, "seed": seed})

    rng = np.random.default_rng(seed + 2)
    operator_trials = min(trials, 100)
    failures = 0
    worst = None
    hs_failures = 0
    hs_worst = None
    root_m = math.sqrt(m)
    for _ in range(operator_trials):
        f1 = random_mean_zero(table, rng)
        spectrum = convolution_operator_svd(f1)
        sigma1 = float(spectrum.restricted[0])
        rhs = f1.norm2 / root_m
        if sigma1 > rhs + tolerance:
            failures += 1
        if sigma1 > 0:
            worst = _ratio_update(worst, rhs / sigma1)
        total = float(np.sum(spectrum.full**2))
        expected = f1.norm2**2
        if abs(total - expected) > tolerance:
            hs_failures += 1
        if total > 0 and expected > 0:
            hs_worst = _ratio_update(
                hs_worst, min(total / expected, expected / total))
    results.append({"test": "operator_norm", "trials": operator_trials,
                    "failures": failures, "worst_ratio": worst, "seed": seed})
    results.append({"test": "hilbert_schmidt", "trials": operator_trials,
                    "failures": hs_failures, "worst_ratio": hs_worst,
                    "seed": seed})

    rng = np.random.default_rng(seed + 3)
    failures = 0
    worst = None
    applicable = 0
    for _ in range(trials):
        sets = [random_subset(table, rng) for _ in range(3)]
        for eta in (Fraction(1, 2), Fraction(9, 10)):
            check = triple_product_check(table, *sets, m, eta)
            if not check.applicable:
                continue
            applicable += 1
            if not check.passed:
                failures += 1
            if check.density > 0 and check.required > 0:
                worst = _ratio_update(worst,
                                      float(check.density / check.required))
    results.append({"test": "triple_product", "trials": applicable,
                    "failures": failures, "worst_ratio": worst, "seed": seed})

    rng = np.random.default_rng(seed + 4)
    failures = 0
    worst = None
    applicable = 0
    for _ in range(trials):
        check = product_measure_lower(table, random_subset(table, rng),
                                      random_subset(table, rng), m)
        if not check.passed:
            failures += 1
        if check.vacuous or check.bound <= 0:
            continue
        applicable += 1
        worst = _ratio_update(worst, float(check.measure / check.bound))
    results.append({"test": "product_measure", "trials": trials,
                    "failures": failures, "worst_ratio": worst, "seed": seed})

    rng = np.random.default_rng(seed + 5)
    n = table.order
    min_size = n
    while min_size > 1 and m * (min_size - 1) ** 3 > n**3:
        min_size -= 1
    cover_trials = min(trials, 100) if m * min_size**3 > n**3 else 0
    failures = 0
    for _ in range(cover_trials):
        size = int(rng.integers(min_size, n + 1))
        subset = sorted(int(o) for o in rng.choice(n, size=size, replace=False))
        if not cube_cover_check(table, subset, m):
            failures += 1
    if cover_trials == 0:
        cover_worst = None
    else:
        cover_worst = 0.0 if failures else 1.0
    results.append({"test": "cube_cover", "trials": cover_trials,
                    "failures": failures, "worst_ratio": cover_worst,
                    "seed": seed})

    return results
