from fractions import Fraction

import pytest

from toric_ech.criterion import (
    OBSTRUCTED,
    WITNESS_FOUND,
    CriterionConfig,
    candidates,
    leq,
    run_criterion,
    subset_oracle,
    verify_witness,
)
from toric_ech.domains import Ball, Polydisk
from toric_ech.enumeration import EnumBounds, enumerate_generators
from toric_ech.errors import HypothesisViolated, InvalidGenerator, TargetNotMinimal, UnsupportedCriterion
from toric_ech.generators import ONE, e, h

P21 = Polydisk(2, 1)


def test_leq_examples():
    assert leq(P21, Ball(2), e(1, 0, 2), e(1, 1)).holds
    assert leq(P21, Ball(Fraction(5, 2)), e(1, 0, 5), e(1, 1, 2)).holds
    assert leq(P21, Ball(1), ONE, ONE).holds
    w = leq(P21, Ball(Fraction(19, 10)), e(1, 0, 2), e(1, 1))
    assert w.index_ok and w.genus_ok and not w.action_ok


def test_candidates_match_exhaustive_filter():
    src, dst, rhs = P21, Ball(2), e(1, 1)
    brute = {
        g
        for g in enumerate_generators(EnumBounds(4, 4, target_index=rhs.index, allow_h=True))
        if leq(src, dst, g, rhs).holds
    }
    assert set(candidates(src, dst, rhs)) == brute
    assert e(1, 0, 2) in brute


def test_candidates_trivial_target():
    assert candidates(P21, Ball(2), ONE) == (ONE,)


def test_candidate_counts_pinned():
    dst = Ball(Fraction(29, 10))
    assert [len(candidates(P21, dst, e(1, 1, d))) for d in range(1, 5)] == [1, 1, 0, 0]


def test_candidates_exhaustive_small_target():
    src, dst, rhs = Polydisk(Fraction(5, 2), 1), Ball(Fraction(324, 100)), e(1, 1, 3)
    brute = {
        g
        for g in enumerate_generators(EnumBounds(10, 2, target_index=rhs.index, allow_h=True))
        if leq(src, dst, g, rhs).holds
    }
    assert set(candidates(src, dst, rhs)) == brute


def test_obstructed_below_volume_bound():
    rep = run_criterion(CriterionConfig(P21, Ball(Fraction(29, 10)), e(1, 1, 4)))
    assert rep.outcome == OBSTRUCTED and rep.witness is None


@pytest.mark.parametrize("d", [1, 2, 3])
def test_witness_at_volume_bound(d):
    rep = run_criterion(CriterionConfig(P21, Ball(3), e(1, 1, d)))
    assert rep.outcome == WITNESS_FOUND
    assert verify_witness(P21, Ball(3), e(1, 1, d), rep.witness)


def test_trivial_target_has_empty_witness():
    rep = run_criterion(CriterionConfig(P21, Ball(3), ONE))
    assert rep.outcome == WITNESS_FOUND and rep.witness == []


def test_bad_targets():
    with pytest.raises(InvalidGenerator):
        run_criterion(CriterionConfig(P21, Ball(3), h(1, 1)))
    with pytest.raises(TargetNotMinimal):
        run_criterion(CriterionConfig(P21, Ball(3), e(1, 0) * e(1, 1)))
    with pytest.raises(UnsupportedCriterion):
        run_criterion(CriterionConfig(P21, Ball(3), e(1, 1), nonminimal_target=True))


def test_report_serializes():
    rep = run_criterion(CriterionConfig(P21, Ball(3), e(1, 1, 2)))
    d = rep.to_dict()
    assert d["outcome"] == WITNESS_FOUND and d["witness"]


def test_verify_witness_rejects_wrong_factorization():
    assert not verify_witness(P21, Ball(3), e(1, 1, 2), [(e(1, 1), e(1, 0, 2))])


def test_subset_oracle_single():
    assert subset_oracle([e(1, 1)], [e(1, 0, 2)])


def test_subset_oracle_premises():
    with pytest.raises(HypothesisViolated):
        subset_oracle([e(1, 1)], [e(1, 0)])
    with pytest.raises(HypothesisViolated):
        subset_oracle([h(1, 1), h(1, 1)], [h(1, 1), h(1, 1)])


def test_subset_oracle_pairs():
    gs = [e(1, 1), e(1, 0)]
    assert subset_oracle(gs, gs)
