import pytest

from apfree_py.engine.constraints import build_system
from apfree_py.engine.feasex import decide_cone
from apfree_py.engine.oracle import (
    bounded_integer_kernel,
    find_ap_direct,
    materialize_s,
    project_ap,
)
from apfree_py.exceptions import InvalidDigitSetError, OracleCapExceededError, PreconditionError
from apfree_py.models.digits import DigitSet

CROWDED = DigitSet.from_interval(5, 0, 3)


def test_materialize_is_lexicographic_and_complete():
    points = list(materialize_s(CROWDED, 4))
    assert len(points) == 24
    assert points == sorted(points)
    assert points[0] == (0, 1, 2, 3)
    assert points[-1] == (3, 2, 1, 0)

    pairs = list(materialize_s(DigitSet.of(7, [2, 5]), 4))
    assert len(pairs) == 6
    assert all(sorted(p) == [2, 2, 5, 5] for p in pairs)


def test_materialize_limits():
    with pytest.raises(OracleCapExceededError) as info:
        materialize_s(CROWDED, 4, cap=10)
    assert info.value.count == 24
    assert info.value.cap == 10
    with pytest.raises(InvalidDigitSetError):
        materialize_s(CROWDED, 3)


def _is_progression(m, vectors):
    diff = tuple((b - a) % m for a, b in zip(vectors[0], vectors[1], strict=True))
    if not any(diff):
        return False
    return all(
        vectors[i] == tuple((x + i * c) % m for x, c in zip(vectors[0], diff, strict=True))
        for i in range(len(vectors))
    )


def test_direct_search_finds_a_progression():
    vectors = find_ap_direct(CROWDED, 4, 4)
    assert vectors is not None and len(vectors) == 4
    members = set(materialize_s(CROWDED, 4))
    assert all(vector in members for vector in vectors)
    assert _is_progression(5, vectors)


def test_direct_search_on_admissible_sets():
    assert find_ap_direct(DigitSet.from_interval(5, 0, 2), 3, 3) is None
    assert find_ap_direct(DigitSet.from_interval(7, 0, 3), 3, 4) is None


def test_projected_progression_lies_in_the_cone():
    system = build_system(CROWDED, 3)
    vectors = find_ap_direct(CROWDED, 3, 4)
    assert vectors is not None
    counts = project_ap(system, vectors)
    assert any(counts) and all(c >= 0 for c in counts)
    assert not any(system.residual(counts))


def test_bounded_kernel_matches_small_witness():
    system = build_system(CROWDED, 4)
    assert bounded_integer_kernel(system, 4) == (1, 1, 1, 1)
    assert bounded_integer_kernel(system, 3) is None


def test_bounded_kernel_is_never_heavier_than_the_lp_witness():
    system = build_system(CROWDED, 3)
    witness = decide_cone(system).witness
    assert witness is not None
    found = bounded_integer_kernel(system, sum(witness))
    assert found is not None
    assert sum(found) <= sum(witness)
    assert not any(system.residual(list(found)))


def test_bounded_kernel_on_admissible_and_empty_systems(half_interval_11):
    assert bounded_integer_kernel(half_interval_11, 4) is None
    assert bounded_integer_kernel(build_system(DigitSet.of(11, [3]), 3), 5) is None
    with pytest.raises(PreconditionError):
        bounded_integer_kernel(half_interval_11, 0)


def test_no_progression_when_k_exceeds_the_modulus():
    whole = DigitSet.from_interval(5, 0, 4)
    assert find_ap_direct(whole, 6, 5) is None
    assert find_ap_direct(whole, 5, 5) is not None


def test_projection_skips_differences_without_a_column():
    system = build_system(CROWDED, 3)
    # coordinate 1 runs 3, 4, 0 which leaves the digit set
    vectors = [(0, 3), (1, 4), (2, 0)]
    counts = project_ap(system, vectors)
    assert sum(counts) == 1
