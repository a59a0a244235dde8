from fractions import Fraction

import pytest

from qrgroups.errors import (OutOfTheoremRange, UnsupportedParameters,
                             UnsupportedPrime)
from qrgroups.quasirandom import (BoundReport, bgc_bound, format_rational,
                                  green_ruzsa_pf, h_bound, hf_bound,
                                  pf_bounds_profinite, pf_bounds_tree,
                                  pf_padic, pf_power_series, pf_torus,
                                  significant, verify_bound)


def test_h_bound_values():
    assert h_bound("sl2", 2, 7) == 3
    assert h_bound("sl2", 2, 3) == 1
    assert h_bound("sl2", 2, 13) == 6
    assert h_bound("slk", 3, 3) == 9 - 3
    assert h_bound("slk", 4, 3) == 27 - 9
    assert h_bound("sp2k", 2, 3) == 3
    assert h_bound("sp2k", 3, 5) == Fraction(4 * 25, 2)


def test_hf_bound_values():
    assert hf_bound("sl2", 2, 3, 2) == 3
    assert hf_bound("sl2", 2, 5, 2) == 10
    assert hf_bound("slk", 3, 3, 2) == 6 * 9
    assert hf_bound("sp2k", 2, 3, 2) == Fraction(6 * 9, 2)


def test_hf_reduces_to_h_at_level_one():
    cases = (("sl2", 2, 3), ("sl2", 2, 7), ("slk", 3, 3), ("slk", 4, 5),
             ("sp2k", 2, 3), ("sp2k", 3, 7))
    for family, k, p in cases:
        assert hf_bound(family, k, p, 1) == h_bound(family, k, p)


def test_bgc_bound_values():
    assert bgc_bound(3, 2) == 4
    assert bgc_bound(5, 2) == 12
    assert bgc_bound(3, 3) == 12
    with pytest.raises(UnsupportedParameters):
        bgc_bound(3, 1)


def test_prime_validation():
    for call in (lambda: h_bound("sl2", 2, 2),
                 lambda: h_bound("sl2", 2, 9),
                 lambda: hf_bound("sp2k", 2, 2, 1),
                 lambda: bgc_bound(2, 2)):
        with pytest.raises(UnsupportedPrime):
            call()
    with pytest.raises(UnsupportedParameters):
        h_bound("slk", 2, 5)


def test_profinite_windows():
    window = pf_bounds_profinite("sl2", 2, 3)
    assert window.lower == Fraction(1, 4)
    assert abs(window.upper - 1.0) < 1e-12
    assert window.effective_upper == 0.5

    window = pf_bounds_profinite("slk", 3, 3)
    assert window.lower == Fraction(2, 26)
    assert abs(window.upper - 18 ** (-1 / 3)) < 1e-12

    window = pf_bounds_profinite("sp2k", 2, 3)
    assert window.lower == Fraction(2, 80)
    assert abs(window.upper - 3 ** (-1 / 3)) < 1e-12


def test_tree_window():
    window = pf_bounds_tree(6)
    assert window.lower == Fraction(1, 7)
    assert abs(window.upper - 5 ** (-1 / 3)) < 1e-12
    assert window.effective_upper == min(window.upper, 0.5)
    with pytest.raises(OutOfTheoremRange):
        pf_bounds_tree(5)


def test_window_json_shape():
    payload = pf_bounds_tree(6).to_json()
    assert payload["lower"] == "1/7"
    assert set(payload["upper"]) == {"approx"}
    assert set(payload["effective_upper"]) == {"approx"}


def test_green_ruzsa_cases():
    assert green_ruzsa_pf((10,)) == Fraction(1, 2)
    assert green_ruzsa_pf((9,)) == Fraction(1, 3)
    assert green_ruzsa_pf((7,)) == Fraction(2, 7)
    assert green_ruzsa_pf((35,)) == Fraction(2, 5)
    assert green_ruzsa_pf((7, 49)) == Fraction(1, 3) - Fraction(1, 147)
    assert green_ruzsa_pf((1,)) == 0


def test_green_ruzsa_factorization_invariance():
    assert green_ruzsa_pf((35,)) == green_ruzsa_pf((5, 7))
    assert green_ruzsa_pf((5, 7)) == green_ruzsa_pf((7, 5))
    assert green_ruzsa_pf((9,)) == green_ruzsa_pf((3, 3))
    assert green_ruzsa_pf((10,)) == green_ruzsa_pf((2, 5))


def test_green_ruzsa_smallest_case_one_prime_wins():
    # order divisible by both 2 and 5 (both are 2 mod 3): smallest wins
    assert green_ruzsa_pf((2, 5)) == Fraction(1, 3) + Fraction(1, 6)
    assert green_ruzsa_pf((5, 5)) == Fraction(1, 3) + Fraction(1, 15)


def test_local_field_densities():
    assert pf_padic(5) == Fraction(2, 5)
    assert pf_padic(7) == Fraction(1, 3)
    assert pf_padic(3) == Fraction(1, 3)
    assert pf_power_series(5) == Fraction(2, 5)
    assert pf_power_series(3) == Fraction(1, 3)
    assert pf_power_series(7) == Fraction(1, 3) - Fraction(1, 21)
    assert pf_torus(1) == Fraction(1, 3)
    assert pf_torus(4) == Fraction(1, 3)


def test_format_rational():
    assert format_rational(Fraction(2, 5)) == "2/5"
    assert format_rational(Fraction(6, 3)) == 2
    assert format_rational(Fraction(0)) == 0


def test_significant_digits():
    assert significant(2 ** (-1 / 3)) == "0.793700525984"
    assert significant(0.5) == "0.5"


def test_verify_bound_relations():
    report = verify_bound(Fraction(3), Fraction(2), ">=", quantity="demo")
    assert report.passed
    assert not verify_bound(Fraction(1), Fraction(2), ">=").passed
    assert verify_bound(Fraction(1, 2), Fraction(1, 2), "==").passed
    assert verify_bound(Fraction(1, 3), Fraction(1, 2), "<=").passed
    with pytest.raises(UnsupportedParameters):
        verify_bound(Fraction(1), Fraction(1), "!=")


def test_bound_report_json():
    report = verify_bound(Fraction(5, 2), Fraction(2), ">=",
                          quantity="demo quantity",
                          provenance=("left source", "right source"))
    payload = report.to_json()
    assert payload == {
        "quantity": "demo quantity",
        "computed": "5/2",
        "formula": 2,
        "relation": ">=",
        "pass": True,
        "refs": ["left source", "right source"],
    }
    assert isinstance(report, BoundReport)
