from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbrackets import (OnePolynomial, WordSum, bracket_series,
                       decompose_in_one, diamond, evaluate, quasi_shuffle,
                       subalgebra_membership, word)
from qbrackets.checks import PRODUCT_EXAMPLES

letters = st.integers(min_value=1, max_value=3)
words_st = st.lists(letters, min_size=1, max_size=3).map(tuple)


@st.composite
def word_sums(draw):
    n = draw(st.integers(min_value=1, max_value=3))
    terms = {}
    for _ in range(n):
        terms[draw(words_st)] = draw(st.fractions(min_value=-3, max_value=3))
    return WordSum(terms.items())


def _ws(d):
    return WordSum((w, Fraction(c)) for w, c in d.items())


def test_word_sum_algebra():
    a = word(2) + word(1, 1).scale(2)
    assert a.coefficient((2,)) == 1
    assert a.coefficient((1, 1)) == 2
    assert a.coefficient((5,)) == 0
    assert (a - a).is_zero()
    assert a.weight == 2
    assert a.max_length == 2


def test_zero_terms_are_dropped():
    s = WordSum({(2,): Fraction(1)}) + WordSum({(2,): Fraction(-1)})
    assert s == WordSum.zero()
    assert len(s) == 0
    assert s.to_text() == "0"


def test_printed_products():
    for w, v, wanted in PRODUCT_EXAMPLES:
        assert quasi_shuffle(word(*w), word(*v)) == _ws(wanted)


def test_diamond_golden():
    assert diamond(1, 1) == _ws({(2,): 1, (1,): -1})
    assert diamond(2, 3) == _ws({(5,): 1, (3,): Fraction(-1, 12)})
    assert diamond(2, 2) == _ws({(4,): 1, (2,): Fraction(-1, 6)})


@given(word_sums(), word_sums())
@settings(max_examples=25, deadline=None)
def test_product_commutes(a, b):
    assert quasi_shuffle(a, b) == quasi_shuffle(b, a)


@given(words_st, words_st, words_st)
@settings(max_examples=15, deadline=None)
def test_product_associates(u, v, w):
    a, b, c = word(*u), word(*v), word(*w)
    assert quasi_shuffle(quasi_shuffle(a, b), c) == \
        quasi_shuffle(a, quasi_shuffle(b, c))


@given(words_st, words_st)
@settings(max_examples=20, deadline=None)
def test_product_is_series_homomorphism(u, v):
    order = 40
    prod = quasi_shuffle(word(*u), word(*v))
    assert evaluate(prod, order) == \
        bracket_series(u, order) * bracket_series(v, order)


def test_evaluate_is_linear():
    a = word(2, 1).scale(Fraction(3, 2)) - word(3)
    assert evaluate(a, 20) == \
        bracket_series((2, 1), 20).scale(Fraction(3, 2)) - bracket_series((3,), 20)


@given(word_sums())
@settings(max_examples=25, deadline=None)
def test_word_sum_json_round_trip(w):
    assert WordSum.from_json(w.to_json()) == w


def test_subalgebra_membership():
    assert subalgebra_membership(word(2, 1), "admissible")
    assert not subalgebra_membership(word(1, 2), "admissible")
    assert subalgebra_membership(word(2, 4), "all-even")
    assert not subalgebra_membership(word(2, 3), "all-even")
    assert subalgebra_membership(word(3, 2), "all-greater-one")
    assert not subalgebra_membership(word(3, 1), "all-greater-one")
    with pytest.raises(ValueError):
        subalgebra_membership(word(2), "no-such-space")


def test_decompose_golden():
    poly = decompose_in_one(word(1, 2))
    assert poly.degree() == 1
    assert poly.coefficient(1) == word(2)
    assert poly.coefficient(0) == _ws({(2,): Fraction(1, 2), (3,): -1,
                                       (2, 1): -1})


@given(st.lists(letters, min_size=1, max_size=4).map(tuple))
@settings(max_examples=20, deadline=None)
def test_decompose_substitutes_back(parts):
    poly = decompose_in_one(WordSum.of(parts))
    order = 30
    assert poly.substitute_one(order) == bracket_series(parts, order)
    for j in range(poly.degree() + 1):
        assert subalgebra_membership(poly.coefficient(j), "admissible")


def test_one_polynomial_json_round_trip():
    poly = decompose_in_one(word(1, 1, 2))
    assert OnePolynomial.from_json(poly.to_json()) == poly
