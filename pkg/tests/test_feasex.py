from fractions import Fraction

import pytest

from apfree_py.engine.constraints import build_system
from apfree_py.engine.feasex import (
    Method,
    check_admissible,
    decide_cone,
    expand_witness,
    minimize_witness,
    verify_expanded_witness,
    witness_document,
)
from apfree_py.exceptions import InvalidWitnessError
from apfree_py.models.certificates import CertificateKind, ExpandedWitness, InitialMatrix, Outcome
from apfree_py.models.digits import DigitSet

CROWDED = DigitSet.from_interval(5, 0, 3)


def test_lp_on_worked_example(half_interval_11):
    result = decide_cone(half_interval_11)
    assert result.trivial
    assert result.lp_optimum == 0
    assert result.rank == 8
    assert result.witness is None


def test_lp_witness_is_a_primitive_kernel_vector():
    system = build_system(CROWDED, 3)
    result = decide_cone(system)
    assert not result.trivial
    assert result.lp_optimum > 0
    witness = result.witness
    assert witness is not None and len(witness) == 8
    assert all(w >= 0 for w in witness) and any(witness)
    assert not any(system.residual(list(witness)))


def test_witness_expands_to_a_progression():
    system = build_system(CROWDED, 3)
    witness = decide_cone(system).witness
    expanded = expand_witness(system, witness)
    assert expanded.n % CROWDED.size == 0
    assert verify_expanded_witness(CROWDED, 3, expanded)


def test_full_cycle_witness_for_four_terms():
    # the four 4-progressions of {0,1,2,3} mod 5 each run through every digit
    system = build_system(CROWDED, 4)
    assert [p.terms for p in system.progressions] == [
        (0, 1, 2, 3),
        (1, 3, 0, 2),
        (2, 0, 3, 1),
        (3, 2, 1, 0),
    ]
    result = decide_cone(system)
    assert result.witness == (1, 1, 1, 1)
    assert result.lp_optimum == 4

    expanded = expand_witness(system, result.witness)
    assert expanded.n == 4
    assert expanded.vectors == [(0, 1, 2, 3), (1, 3, 0, 2), (2, 0, 3, 1), (3, 2, 1, 0)]
    assert expanded.diff == (1, 2, 3, 4)
    assert minimize_witness(system, result.witness) == (1, 1, 1, 1)


def test_minimized_witness_stays_in_the_kernel():
    system = build_system(DigitSet.from_interval(7, 0, 5), 3)
    plain = decide_cone(system).witness
    small = decide_cone(system, minimize=True).witness
    assert plain is not None and small is not None
    assert sum(1 for w in small if w) <= sum(1 for w in plain if w)
    assert not any(system.residual(list(small)))
    assert verify_expanded_witness(system.digit_set, 3, expand_witness(system, small))


@pytest.mark.parametrize(
    "witness",
    [(1, 0), (1,), (1, -1), (0, 0)],
    ids=["not-in-kernel", "wrong-length", "negative", "zero"],
)
def test_invalid_witnesses_are_rejected(witness):
    system = build_system(DigitSet.from_interval(5, 0, 2), 3)
    assert [p.terms for p in system.progressions] == [(0, 1, 2), (2, 1, 0)]
    with pytest.raises(InvalidWitnessError):
        expand_witness(system, witness)


def test_tampered_expansion_fails_verification():
    system = build_system(CROWDED, 4)
    expanded = expand_witness(system, (1, 1, 1, 1))
    swapped = ExpandedWitness(
        n=4, vectors=[(0, 1, 2, 3), (1, 3, 0, 2), (2, 0, 1, 3), (3, 2, 1, 0)], diff=expanded.diff
    )
    assert not verify_expanded_witness(CROWDED, 4, swapped)
    short = expanded.model_copy(update={"vectors": expanded.vectors[:3]})
    assert not verify_expanded_witness(CROWDED, 4, short)
    constant = expanded.model_copy(update={"diff": (0, 0, 0, 0)})
    assert not verify_expanded_witness(CROWDED, 4, constant)


def test_check_admissible_certificate_kinds():
    half = DigitSet.from_interval(11, 0, 5)
    verdict, cert = check_admissible(half, 3)
    assert verdict is True
    assert cert.kind is CertificateKind.REDUCE_A
    assert cert.admissible

    verdict, cert = check_admissible(half, 3, initial=InitialMatrix.RREF)
    assert verdict is True
    assert cert.kind is CertificateKind.REDUCE_RREF
    assert cert.trace is not None and cert.trace.outcome is Outcome.REDUCED

    verdict, cert = check_admissible(half, 3, method=Method.LP)
    assert verdict is True
    assert cert.kind is CertificateKind.LP
    assert cert.lp_optimum == Fraction(0)
    assert cert.rank == 8


def test_check_admissible_on_crowded_set():
    verdict, cert = check_admissible(CROWDED, 3)
    assert verdict is False
    assert cert.kind is CertificateKind.WITNESS
    assert not cert.admissible
    assert cert.expanded is not None
    assert verify_expanded_witness(CROWDED, 3, cert.expanded)

    verdict, cert = check_admissible(CROWDED, 3, expand=False)
    assert verdict is False
    assert cert.witness is not None
    assert cert.expanded is None


def test_reduce_only_is_inconclusive_when_stuck():
    verdict, cert = check_admissible(CROWDED, 3, method=Method.REDUCE)
    assert verdict is None
    assert cert.kind is CertificateKind.REDUCE_RREF
    assert cert.trace is not None and cert.trace.outcome is Outcome.STUCK
    assert cert.admissible is None


def test_certificate_verdict_matches_the_pipeline():
    for method in Method:
        verdict, cert = check_admissible(CROWDED, 3, method=method, expand=False)
        assert cert.admissible is verdict


def test_progressions_longer_than_the_modulus():
    verdict, cert = check_admissible(DigitSet.from_interval(5, 0, 4), 6)
    assert verdict is True
    assert cert.trace is not None and cert.trace.steps == []


def test_witness_document():
    system = build_system(CROWDED, 4)
    document = witness_document(system, (1, 1, 1, 1))
    assert document.digits == [0, 1, 2, 3]
    assert (document.m, document.k, document.n) == (5, 4, 4)
    assert document.x == {"0,1": 1, "1,2": 1, "2,3": 1, "3,4": 1}
    assert document.vectors == [[0, 1, 2, 3], [1, 3, 0, 2], [2, 0, 3, 1], [3, 2, 1, 0]]
