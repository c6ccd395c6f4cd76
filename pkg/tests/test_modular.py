from fractions import Fraction

import pytest

from qbrackets import (DELTA_PAIRS, DELTA_SCALE, WordSum, bracket_series,
                       delta_affine_combination, delta_representation,
                       delta_representations, deltal2_check,
                       deltal2_word_sum, eisenstein, eta24, evaluate,
                       representation_span_rank, tau, tau_congruence,
                       verify_quasi_modular_identities)

# length-one coefficients of the six discriminant representations
PAIR_COEFFS = {
    (2, 4): {2: Fraction(11, 2), 4: Fraction(-27)},
    (4, 6): {4: Fraction(57, 4), 6: Fraction(-165)},
    (6, 8): {6: Fraction(765, 4), 8: Fraction(-5985, 2)},
    (8, 10): {8: Fraction(56385, 8), 10: Fraction(-144585)},
    (10, 11): {10: Fraction(2973915, 4), 11: Fraction(-7611975, 2)},
    (11, 12): {11: Fraction(29384775, 4), 12: Fraction(-163565325, 4)},
}


def test_eisenstein_constants():
    assert eisenstein(2, 10).series.constant == Fraction(-1, 24)
    assert eisenstein(4, 10).series.constant == Fraction(1, 1440)
    assert eisenstein(6, 10).series.constant == Fraction(-1, 60480)
    assert eisenstein(8, 10).series.constant == Fraction(1, 2419200)
    with pytest.raises(ValueError):
        eisenstein(3, 10)
    with pytest.raises(ValueError):
        eisenstein(0, 10)


def test_eisenstein_tail_is_bracket():
    g = eisenstein(4, 20)
    b = bracket_series((4,), 20)
    assert g.series.coeffs == b.coeffs
    assert g.weight == 4


def test_quasi_modular_identity_report():
    report = verify_quasi_modular_identities(40)
    assert len(report) == 5
    assert all(entry["pass"] for entry in report)
    names = {entry["identity"] for entry in report}
    assert "G4^2 = 7/6 G8" in names
    with pytest.raises(ValueError):
        verify_quasi_modular_identities(10)


def test_tau_golden():
    assert [tau(n) for n in range(1, 8)] == \
        [1, -24, 252, -1472, 4830, -6048, -16744]


def test_delta_representation_golden_pair():
    rep = delta_representation(2, 4)
    assert rep.length_one_coefficients() == PAIR_COEFFS[(2, 4)]
    assert rep.pair_coefficients_closed_form() == PAIR_COEFFS[(2, 4)]
    assert rep.verified_order >= 60
    assert evaluate(rep.expression, 60) == eta24(60)


def test_delta_representation_rejects_unknown_pair():
    with pytest.raises(ValueError):
        delta_representation(3, 5)
    with pytest.raises(ValueError):
        delta_representation(2, 4, order=30)


def test_all_delta_closed_forms():
    reps = {rep.pair: rep for rep in delta_representations()}
    assert set(reps) == set(DELTA_PAIRS)
    for pair, rep in reps.items():
        assert rep.length_one_coefficients() == PAIR_COEFFS[pair]


def test_delta_representations_span():
    reps = delta_representations()
    assert representation_span_rank(reps) == 5
    weights = delta_affine_combination(reps[0].expression, reps)
    assert weights is not None
    assert sum(weights) == 1


def test_deltal2_exact():
    combo = deltal2_word_sum()
    scaled = eta24(50).scale(-DELTA_SCALE)
    assert evaluate(combo, 50) == scaled
    report = deltal2_check(50)
    assert report["pass"] is True
    assert report["exact_series_match"] is True
    assert sum(Fraction(w) for w in report["affine_weights"]) == 1


def test_deltal2_combination_shape():
    combo = deltal2_word_sum()
    assert combo.coefficient((5, 7)) == 168
    assert combo.coefficient((7, 5)) == 150
    assert combo.coefficient((9, 3)) == 28
    assert combo.coefficient((12,)) == Fraction(-5197, 691)


def test_tau_congruence_mod_691():
    report = tau_congruence(80)
    assert report["pass"] is True
    assert report["failures"] == []
