from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbrackets import (Composition, bracket_series, bracket_series_many,
                       bracket_series_oracle, bracket_series_oracle_many,
                       canonical_key, compositions_up_to,
                       multiple_divisor_sum, partition_counts,
                       partition_identity_check)
from qbrackets.checks import SERIES_EXAMPLES

small_compositions = st.lists(st.integers(min_value=1, max_value=4),
                              min_size=1, max_size=4).map(tuple)


def test_composition_validation():
    assert Composition([2, 1]).weight == 3
    assert Composition([2, 1]).length == 2
    assert Composition([2, 1]).admissible
    assert not Composition([1, 2]).admissible
    with pytest.raises(ValueError):
        Composition([0, 1])


def test_canonical_key_orders_by_weight_length_lex():
    words = [(3,), (1, 2), (2, 1), (1, 1, 1), (4,), (2,)]
    ordered = sorted(words, key=canonical_key)
    assert ordered == [(2,), (3,), (1, 2), (2, 1), (1, 1, 1), (4,)]


def test_single_divisor_sums():
    # sigma_0 counts divisors, sigma_1 adds them
    assert [multiple_divisor_sum((0,), n) for n in range(1, 9)] == \
        [1, 2, 2, 3, 2, 4, 2, 4]
    assert [multiple_divisor_sum((1,), n) for n in range(1, 9)] == \
        [1, 3, 4, 7, 6, 12, 8, 15]


def test_double_divisor_sum_by_hand():
    # n = 4 with u1 > u2 > 0: (u1,u2,v1,v2) = (2,1,1,2) and (3,1,1,1)
    assert multiple_divisor_sum((0, 0), 4) == 2
    assert multiple_divisor_sum((1, 0), 4) == 2   # v1 values 1 and 1
    assert multiple_divisor_sum((0, 1), 4) == 3   # v2 values 2 and 1
    assert multiple_divisor_sum((0, 0), 1) == 0


def test_printed_expansions():
    for parts, scale, first, coeffs in SERIES_EXAMPLES:
        s = bracket_series(parts, first + len(coeffs) - 1)
        for i, c in enumerate(coeffs):
            assert s.coefficient(first + i) == scale * c


def test_first_coefficient_position():
    # the earliest power with a nonzero coefficient is l(l+1)/2
    for parts in [(1, 1), (2, 1, 1), (1, 1, 1, 1)]:
        l = len(parts)
        s = bracket_series(parts, l * (l + 1) // 2 + 2)
        first = next(n for n in range(1, s.order + 1) if s.coefficient(n))
        assert first == l * (l + 1) // 2


@given(small_compositions)
@settings(max_examples=25, deadline=None)
def test_oracle_agreement(parts):
    assert bracket_series(parts, 30) == bracket_series_oracle(parts, 30)


def test_batched_variants_match_single():
    comps = [c for c in compositions_up_to(4) if c]
    fast = bracket_series_many(comps, 25)
    slow = bracket_series_oracle_many(comps, 25)
    for c in comps:
        single = bracket_series(c, 25)
        assert fast[c] == single
        assert slow[c] == single


def test_series_cache_not_mutated_by_larger_order():
    a = bracket_series((2, 1), 10)
    bracket_series((2, 1), 40)
    assert bracket_series((2, 1), 10) == a


def test_partition_counts_golden():
    assert partition_counts(10) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert partition_identity_check(30)


def test_bracket_series_rejects_bad_input():
    with pytest.raises(ValueError):
        bracket_series((0, 2), 10)
    with pytest.raises(ValueError):
        bracket_series((2,), -1)
