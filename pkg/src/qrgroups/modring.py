"""Exact arithmetic in the residue rings Z/p^n for odd primes p.

Residues are stored in canonical form ``0 <= value < p**n``.  All
operations are integer-exact; nothing here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from sympy import isprime

from .errors import NotAUnit, TooLarge, UnsupportedModulus

MAX_MODULUS = 2**31


@dataclass(frozen=True)
class Residue:
    """A canonical residue in Z/p^n."""

    value: int
    p: int
    n: int = 1

    def __post_init__(self) -> None:
        if self.p < 2 or self.n < 1:
            raise UnsupportedModulus(f"invalid modulus parameters p={self.p}, n={self.n}")
        if self.p**self.n > MAX_MODULUS:
            raise TooLarge(f"modulus {self.p}**{self.n} exceeds {MAX_MODULUS}")
        object.__setattr__(self, "value", self.value % self.p**self.n)

    @property
    def modulus(self) -> int:
        return self.p**self.n

    def _coerce(self, other: "Residue | int") -> "Residue":
        if isinstance(other, int):
            return Residue(other, self.p, self.n)
        if (other.p, other.n) != (self.p, self.n):
            raise ValueError("residues from different rings")
        return other

    def __add__(self, other: "Residue | int") -> "Residue":
        other = self._coerce(other)
        return Residue(self.value + other.value, self.p, self.n)

    __radd__ = __add__

    def __neg__(self) -> "Residue":
        return Residue(-self.value, self.p, self.n)

    def __sub__(self, other: "Residue | int") -> "Residue":
        return self + (-self._coerce(other))

    def __rsub__(self, other: "Residue | int") -> "Residue":
        return self._coerce(other) - self

    def __mul__(self, other: "Residue | int") -> "Residue":
        other = self._coerce(other)
        return Residue(self.value * other.value, self.p, self.n)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Residue":
        if exponent < 0:
            return unit_inverse(self) ** (-exponent)
        return Residue(pow(self.value, exponent, self.modulus), self.p, self.n)

    def is_unit(self) -> bool:
        return gcd(self.value, self.p) == 1

    def __int__(self) -> int:
        return self.value


def unit_inverse(a: Residue) -> Residue:
    """Multiplicative inverse of a unit residue.

    Raises NotAUnit when gcd(value, p) > 1.
    """
    if not a.is_unit():
        raise NotAUnit(f"{a.value} is not a unit mod {a.p}**{a.n}")
    return Residue(pow(a.value, -1, a.modulus), a.p, a.n)


def units_and_squares(p: int, n: int) -> tuple[int, int]:
    """Count units and unit squares in Z/p^n, p an odd prime.

    The unit group is cyclic of order p^n - p^(n-1), so exactly half the
    units are squares.
    """
    if p == 2:
        raise UnsupportedModulus("p = 2 is outside the supported range")
    if p < 3 or n < 1 or not isprime(p):
        raise UnsupportedModulus(f"invalid parameters p={p}, n={n}")
    if p**n > MAX_MODULUS:
        raise TooLarge(f"modulus {p}**{n} exceeds {MAX_MODULUS}")
    units = p**n - p ** (n - 1)
    return units, units // 2
