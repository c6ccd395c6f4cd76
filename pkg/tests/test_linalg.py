import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbrackets import (ExactMatrix, IntEchelon, conjecture_series_check,
                       conjecture_series_expansion, dim_lower_bound,
                       dimension_table, dims_from_dprime, generators,
                       graded_relation_counts, homogeneous_relation_search,
                       relation_in_span, relation_search, solve_unique,
                       weight_dims_identity)
from qbrackets.checks import RELATION_COUNTS_LOW


def test_rank_golden():
    m = ExactMatrix.from_rows([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert m.rank() == 2
    assert ExactMatrix.from_rows([[Fraction(1, 2), Fraction(1, 3)],
                                  [Fraction(1, 4), Fraction(1, 5)]]).rank() == 2
    assert ExactMatrix.from_rows([[0, 0], [0, 0]]).rank() == 0


small_matrix = st.lists(
    st.lists(st.integers(min_value=-6, max_value=6), min_size=3, max_size=3),
    min_size=1, max_size=5)


@given(small_matrix, st.randoms(use_true_random=False))
@settings(max_examples=30, deadline=None)
def test_rank_invariant_under_row_moves(rows, rnd):
    base = ExactMatrix.from_rows(rows).rank()
    shuffled = list(rows)
    rnd.shuffle(shuffled)
    scaled = []
    for row in shuffled:
        factor = rnd.choice([1, 2, 3, -1, 5])
        scaled.append([c * factor for c in row])
    assert ExactMatrix.from_rows(scaled).rank() == base


@given(small_matrix)
@settings(max_examples=30, deadline=None)
def test_kernel_vectors_annihilate(rows):
    m = ExactMatrix.from_rows(rows)
    basis = m.kernel_basis()
    assert len(basis) == 3 - m.rank()
    for vec in basis:
        for row in rows:
            assert sum(Fraction(c) * x for c, x in zip(row, vec)) == 0


def test_int_echelon_matches_matrix_rank():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1], [1, 3, 4]]
    ech = IntEchelon()
    added = sum(ech.add(r) for r in rows)
    assert ech.rank == ExactMatrix.from_rows(rows).rank() == added == 2


def test_solve_unique_golden():
    rows = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(-1)],
            [Fraction(2), Fraction(0)]]
    rhs = [Fraction(3), Fraction(1), Fraction(4)]
    assert solve_unique(rows, rhs) == [Fraction(2), Fraction(1)]


def test_solve_unique_error_modes():
    with pytest.raises(ArithmeticError, match="inconsistent"):
        solve_unique([[Fraction(1)], [Fraction(1)]],
                     [Fraction(1), Fraction(2)])
    with pytest.raises(ArithmeticError, match="underdetermined"):
        solve_unique([[Fraction(1), Fraction(1)]], [Fraction(1)])
    with pytest.raises(ValueError):
        solve_unique([[Fraction(1)]], [Fraction(1), Fraction(2)])


def test_generators_listing():
    gens = generators("mda", 4, 2)
    assert gens == [(2,), (3,), (2, 1), (4,), (2, 2), (3, 1)]
    assert generators("md", 2, None) == [(1,), (2,), (1, 1)]
    with pytest.raises(ValueError):
        generators("bogus", 3)


def test_dim_lower_bound_weight4():
    assert dim_lower_bound("mda", 4, 2, order=60) == 6
    assert dim_lower_bound("mda", 4, 3, order=60) == 7
    assert dim_lower_bound("md", 0, 0) == 1


def test_dimension_table_small():
    table = dimension_table("mda", 4, order=60)
    assert table.value(4, 2) == 6
    assert table.row(3) == [1, 3, 4, 4]
    assert table.value(0, 0) == 1
    csv = table.to_csv()
    assert csv.splitlines()[0] == "space,kind,k,l,value,certainty"
    grid = table.to_text()
    assert grid.startswith("k\\l")


def test_graded_table_consistency():
    fil = dimension_table("mda", 4, order=60)
    gr = dimension_table("mda", 4, order=60, kind="gr")
    # graded cell = fil(k,l) - fil(k-1,l) - fil(k,l-1) + fil(k-1,l-1)
    got = gr.value(4, 2)
    wanted = (fil.value(4, 2) - fil.value(3, 2)
              - fil.value(4, 1) + fil.value(3, 1))
    assert got == wanted


def test_relation_search_weight4():
    rels = relation_search("mda", 4, 2, order=200)
    assert len(rels) == 1
    assert rels[0].status == "candidate"
    assert rels[0].body.coefficient((3, 1)) != 0


def test_relation_search_finds_nothing_at_weight3():
    assert relation_search("mda", 3, 3, order=120) == []


def test_relation_in_span():
    rels = relation_search("mda", 5, 3, order=200)
    assert rels
    doubled = rels[0].body.scale(Fraction(5, 2))
    assert relation_in_span(doubled, rels)
    assert not relation_in_span(homogeneous_relation_search(9, 3, 300)[0],
                                rels)


def test_graded_relation_counts_low_weights():
    got = graded_relation_counts(6, 4)
    for cell, wanted in RELATION_COUNTS_LOW.items():
        assert got[cell] == wanted, cell


def test_conjectured_count_series():
    assert conjecture_series_expansion(16) == \
        [1, 0, 1, 2, 3, 6, 10, 18, 32, 56, 100, 176, 312, 552, 976, 1728,
         3056]
    totals = [sum(row) for _, row in sorted(DPRIME_ROWS.items())]
    report = conjecture_series_check(6, totals)
    assert all(entry["match"] for entry in report)


# graded dimensions of the admissible space, rows k = 0..6
DPRIME_ROWS = {
    0: (1,),
    1: (0, 0),
    2: (0, 1, 0),
    3: (0, 1, 1, 0),
    4: (0, 1, 1, 1, 0),
    5: (0, 1, 2, 2, 1, 0),
    6: (0, 1, 2, 3, 3, 1, 0),
}
DPRIME = {(k, l): v for k, row in DPRIME_ROWS.items()
          for l, v in enumerate(row)}


def test_dims_from_dprime_reassembles_tables():
    mda = dims_from_dprime(DPRIME, space="mda", max_weight=6)
    assert mda.row(4) == [1, 4, 6, 7, 7]
    assert mda.row(6) == [1, 6, 12, 18, 22, 23, 23]
    md = dims_from_dprime(DPRIME, space="md", max_weight=6)
    assert md.row(4) == [1, 5, 10, 14, 15]
    assert md.row(6) == [1, 7, 18, 32, 44, 50, 51]
    # a missing graded cell propagates as unknown, not as zero
    partial = dict(DPRIME)
    del partial[(6, 3)]
    table = dims_from_dprime(partial, space="mda", max_weight=6)
    assert table.value(6, 3) is None
    assert table.certainty(6, 3) == "unknown"
    assert table.value(6, 2) == 12


def test_weight_dims_identity_agrees():
    for k, graded_md, fil_mda in weight_dims_identity(DPRIME, max_weight=6):
        assert graded_md == fil_mda
