import pytest

from qrgroups.errors import NotAUnit, UnsupportedModulus
from qrgroups.modring import Residue, unit_inverse, units_and_squares


def test_residue_arithmetic_wraps():
    a = Residue(7, 9)
    b = Residue(5, 9)
    assert (a + b).value == 3
    assert (a * b).value == 35 % 9
    assert (a - b).value == 2
    assert (-b).value == 4


def test_residue_mixed_moduli_rejected():
    with pytest.raises(ValueError):
        Residue(1, 9) + Residue(1, 25)


def test_unit_inverse_roundtrip():
    for modulus in (9, 25, 27, 49):
        for value in range(1, modulus):
            residue = Residue(value, modulus)
            try:
                inverse = unit_inverse(residue)
            except NotAUnit:
                assert value % [3, 5, 3, 7][[9, 25, 27, 49].index(modulus)] == 0
                continue
            assert (residue * inverse).value == 1


def test_unit_inverse_rejects_zero_divisor():
    with pytest.raises(NotAUnit):
        unit_inverse(Residue(3, 9))


def test_units_and_squares_counts():
    # phi(p^n) units, half of them squares for odd p
    assert units_and_squares(3, 1) == (2, 1)
    assert units_and_squares(3, 2) == (6, 3)
    assert units_and_squares(5, 1) == (4, 2)
    assert units_and_squares(5, 2) == (20, 10)
    assert units_and_squares(7, 1) == (6, 3)


def test_units_and_squares_brute_force():
    for p, n in ((3, 2), (5, 1), (7, 1), (3, 3)):
        modulus = p**n
        units = [a for a in range(modulus) if a % p != 0]
        squares = {a * a % modulus for a in units}
        assert units_and_squares(p, n) == (len(units), len(squares))


def test_even_prime_rejected():
    with pytest.raises(UnsupportedModulus):
        units_and_squares(2, 1)
