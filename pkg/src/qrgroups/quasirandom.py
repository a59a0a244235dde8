"""Closed-form degree and product-free bounds, evaluated exactly.

Lower bounds h (nontrivial degree) and h_f (faithful degree) for the
special linear and symplectic families over Z/p^n, the p^{n-2}(p^2-1)/2
faithful-degree bound for SL_2, product-free measure windows for the
profinite families and trees, and the complete abelian classification.
Everything rational is a Fraction; the only floats are the cube-root
upper bounds, reported to 12 significant digits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm, prod

from sympy import factorint, isprime

from .errors import (OutOfTheoremRange, UnsupportedParameters, UnsupportedPrime)

FAMILIES = ("sl2", "slk", "sp2k")


def _check_prime(p: int) -> None:
    if p == 2:
        raise UnsupportedPrime("bounds assume p >= 3")
    if p < 3 or not isprime(p):
        raise UnsupportedPrime(f"{p} is not an odd prime")


def _check_family(family: str, k: int) -> str:
    family = family.lower()
    if family not in FAMILIES:
        raise UnsupportedParameters(f"unknown family {family!r}")
    if family == "slk" and k < 3:
        raise UnsupportedParameters("the SL_k bounds need k >= 3; use sl2 for k = 2")
    if family == "sp2k" and k < 1:
        raise UnsupportedParameters("the Sp_2k bounds need k >= 1")
    return family


def h_bound(family: str, k: int, p: int) -> Fraction:
    """Lower bound for the minimal nontrivial degree of the mod-p^n quotients."""
    family = _check_family(family, k)
    _check_prime(p)
    if family == "sl2":
        return Fraction(p - 1, 2)
    if family == "slk":
        return Fraction(p ** (k - 1) - p ** (k - 2))
    return Fraction((p - 1) * p ** (k - 1), 2)


def hf_bound(family: str, k: int, p: int, n: int) -> Fraction:
    """Lower bound for the minimal faithful degree of the mod-p^n quotient."""
    family = _check_family(family, k)
    _check_prime(p)
    if n < 1:
        raise UnsupportedParameters("need n >= 1")
    unit_count = p**n - p ** (n - 1)
    if family == "sl2":
        return Fraction(unit_count, 2)
    if family == "slk":
        return Fraction(unit_count * p ** ((k - 2) * n))
    return Fraction(unit_count * p ** ((k - 1) * n), 2)


def bgc_bound(p: int, n: int) -> Fraction:
    """The p^{n-2}(p^2-1)/2 lower bound for m_f(SL_2(Z/p^n)), n >= 2."""
    _check_prime(p)
    if n < 2:
        raise UnsupportedParameters("the faithful SL_2 bound needs n >= 2")
    return Fraction(p ** (n - 2) * (p * p - 1), 2)


def significant(value: float, digits: int = 12) -> str:
    return f"{value:.{digits}g}"


@dataclass(frozen=True)
class PfWindow:
    lower: Fraction
    upper: float

    @property
    def effective_upper(self) -> float:
        """The upper bound clipped at the universal 1/2."""
        return min(self.upper, 0.5)

    def to_json(self) -> dict:
        return {
            "lower": format_rational(self.lower),
            "upper": {"approx": significant(self.upper)},
            "effective_upper": {"approx": significant(self.effective_upper)},
        }


def pf_bounds_profinite(family: str, k: int, p: int) -> PfWindow:
    """Product-free measure window for the profinite matrix families."""
    family = _check_family(family, k)
    _check_prime(p)
    if family == "sl2":
        return PfWindow(Fraction(1, p + 1), float(Fraction(p - 1, 2)) ** (-1 / 3))
    if family == "slk":
        return PfWindow(Fraction(p - 1, p**k - 1),
                        float(p**k - p ** (k - 1)) ** (-1 / 3))
    if k < 2:
        raise OutOfTheoremRange("the symplectic window needs k >= 2")
    return PfWindow(Fraction(p - 1, p ** (2 * k) - 1),
                    float(Fraction((p - 1) * p ** (k - 1), 2)) ** (-1 / 3))


def pf_bounds_tree(k: int) -> PfWindow:
    """Product-free measure window for the tree automorphism groups, k >= 6."""
    if k < 6:
        raise OutOfTheoremRange("the tree window is proved for k >= 6 only")
    return PfWindow(Fraction(1, k + 1), float(k - 1) ** (-1 / 3))


def green_ruzsa_pf(factors) -> Fraction:
    """Exact product-free measure of a finite abelian group by invariant factors."""
    factors = [int(f) for f in factors]
    if not factors or any(f < 1 for f in factors):
        raise UnsupportedParameters("need a nonempty list of positive factors")
    order = prod(factors)
    primes = sorted(factorint(order))
    for p in primes:
        if p % 3 == 2:
            return Fraction(1, 3) + Fraction(1, 3 * p)
    if order % 3 == 0:
        return Fraction(1, 3)
    largest_order = lcm(*factors)
    return Fraction(1, 3) - Fraction(1, 3 * largest_order)


def pf_padic(p: int) -> Fraction:
    """Product-free measure of the additive p-adic integers."""
    if p < 2 or not isprime(p):
        raise UnsupportedParameters(f"{p} is not prime")
    if p % 3 == 2:
        return Fraction(1, 3) + Fraction(1, 3 * p)
    return Fraction(1, 3)


def pf_power_series(p: int) -> Fraction:
    """Product-free measure of the additive formal power series over F_p."""
    if p < 2 or not isprime(p):
        raise UnsupportedParameters(f"{p} is not prime")
    if p % 3 == 2:
        return Fraction(1, 3) + Fraction(1, 3 * p)
    if p == 3:
        return Fraction(1, 3)
    return Fraction(1, 3) - Fraction(1, 3 * p)


def pf_torus(k: int = 1) -> Fraction:
    """Product-free measure of the k-torus, independent of k."""
    if k < 1:
        raise UnsupportedParameters("need k >= 1")
    return Fraction(1, 3)


def format_rational(value: Fraction | int) -> str | int:
    value = Fraction(value)
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class BoundReport:
    quantity: str
    computed: Fraction
    formula: Fraction
    relation: str
    passed: bool
    provenance: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "quantity": self.quantity,
            "computed": format_rational(self.computed),
            "formula": format_rational(self.formula),
            "relation": self.relation,
            "pass": self.passed,
            "refs": list(self.provenance),
        }


_RELATIONS = {
    ">=": lambda a, b: a >= b,
    "<=": lambda a, b: a <= b,
    "==": lambda a, b: a == b,
}


def verify_bound(computed, formula, relation: str, quantity: str = "",
                 provenance: tuple[str, ...] = ()) -> BoundReport:
    """Exact rational comparison wrapped in a report."""
    if relation not in _RELATIONS:
        raise UnsupportedParameters(f"unknown relation {relation!r}")
    computed = Fraction(computed)
    formula = Fraction(formula)
    passed = _RELATIONS[relation](computed, formula)
    return BoundReport(quantity=quantity, computed=computed, formula=formula,
                       relation=relation, passed=passed, provenance=provenance)
