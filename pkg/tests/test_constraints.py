import pytest

from apfree_py.engine.constraints import (
    PairScheme,
    build_system,
    kernel_cone_is_equivalent_to_ap,
)
from apfree_py.engine.ratlin import row_space_equal
from apfree_py.exceptions import InvalidDigitSetError
from apfree_py.models.digits import DigitSet

from .conftest import load_golden_matrix


def test_worked_example_matrix_matches_golden(half_interval_11):
    assert half_interval_11.matrix.shape == (12, 12)
    assert half_interval_11.matrix == load_golden_matrix("worked_example_matrix.txt")


def test_row_and_column_labels(half_interval_11):
    assert half_interval_11.row_label(0) == (0, (1, 2))
    assert half_interval_11.row_label(6) == (0, (1, 3))
    assert half_interval_11.row_label(11) == (5, (1, 3))
    assert half_interval_11.column_index(2, 10) == 5
    with pytest.raises(KeyError):
        half_interval_11.column_index(0, 5)


def test_every_pair_block_sums_to_zero_per_column():
    system = build_system(DigitSet.of(13, [0, 1, 2, 3, 5, 8, 9]), 4)
    size = system.digit_set.size
    for j in range(system.num_columns):
        column = system.matrix.column(j)
        assert set(column) <= {-1, 0, 1}
        for block in range(len(system.pair_scheme)):
            assert sum(column[block * size : (block + 1) * size]) == 0


def test_all_pairs_scheme_has_same_row_space():
    digit_set = DigitSet.of(11, [0, 1, 2, 4, 5, 7])
    first = build_system(digit_set, 4)
    every = build_system(digit_set, 4, PairScheme.ALL_PAIRS)
    assert every.matrix.rows == 6 * digit_set.size
    assert row_space_equal(first.matrix, every.matrix)


def test_small_systems():
    system = build_system(DigitSet.from_interval(5, 0, 3), 3)
    assert system.num_columns == 8
    assert system.matrix.shape == (8, 8)

    lonely = build_system(DigitSet.of(11, [0]), 3)
    assert lonely.num_columns == 0
    assert lonely.matrix.shape == (2, 0)

    with pytest.raises(InvalidDigitSetError):
        build_system(DigitSet.of(5, [0, 1]), 2)


def test_uniform_vector_is_in_kernel_for_the_whole_group():
    system = build_system(DigitSet.from_interval(5, 0, 4), 3)
    assert not any(system.residual([1] * system.num_columns))


def test_cone_and_brute_force_agree_on_small_sets():
    crowded = kernel_cone_is_equivalent_to_ap(DigitSet.from_interval(5, 0, 3), 3, n=4)
    assert crowded.consistent
    assert not crowded.cone_trivial
    assert crowded.ap_found and crowded.witness_expands_to_ap and crowded.ap_projects_to_kernel

    sparse = kernel_cone_is_equivalent_to_ap(DigitSet.from_interval(5, 0, 2), 3, n=3)
    assert sparse.consistent
    assert sparse.cone_trivial
    assert sparse.ap_found is False


def test_cone_and_brute_force_agree_when_k_exceeds_the_modulus():
    report = kernel_cone_is_equivalent_to_ap(DigitSet.from_interval(5, 0, 4), 6, n=5)
    assert report.consistent
    assert report.cone_trivial
    assert report.ap_found is False
