from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from ultrametrics import (Concat, DistanceSet, FiniteSpace, Geometric, Reciprocal, Shifted,
                          TailDescription, accumulation_at_zero, classify_order_type,
                          decreasing_enumeration, distance_set, dlps_space, tb_distance_set_check)
from ultrametrics.distsets import FINITE_CHAIN, ONE_PLUS_OMEGA_STAR, OTHER
from ultrametrics.sequences import RuleError, rule_from_json, rule_to_json
from ultrametrics.spaces import SpaceError

ZERO = (F(0),)
RECIP = TailDescription(ZERO, Reciprocal())
SHIFTED = TailDescription(ZERO, Shifted())
TWO_BLOCKS = TailDescription(ZERO, Concat((Reciprocal(), Shifted())))


class TestRules:
    def test_terms(self):
        assert [Reciprocal().term(n) for n in (1, 2, 3)] == [1, F(1, 2), F(1, 3)]
        assert Shifted(2, -1).term(2) == F(3, 2)
        assert Geometric(1, F(1, 2)).term(3) == F(1, 8)

    def test_membership(self):
        assert Reciprocal().contains(F(1, 7))
        assert not Reciprocal().contains(F(2, 7))
        assert not Reciprocal(start=3).contains(F(1, 2))
        assert Shifted(2, -1).contains(F(5, 3))
        assert not Shifted(2, -1).contains(F(2))
        assert Geometric(3, F(1, 3)).contains(F(1, 9))
        assert not Geometric(3, F(1, 3)).contains(F(1, 6))

    @pytest.mark.parametrize("make", [
        lambda: Reciprocal(-1), lambda: Shifted(1, 0), lambda: Geometric(1, 1),
        lambda: Shifted(0, -1), lambda: Concat((Reciprocal(),)), lambda: Shifted(start=0),
    ])
    def test_bad_rules(self, make):
        with pytest.raises(RuleError):
            make()

    @pytest.mark.parametrize("rule", [Reciprocal(2, start=3), Shifted(1, F(1, 2)), Geometric(F(1, 2), F(2, 3)),
                                      Concat((Reciprocal(), Geometric(5, F(1, 5))))])
    def test_json_round_trip(self, rule):
        assert rule_from_json(rule_to_json(rule)) == rule

    def test_concat_interleaves(self):
        c = Concat((Reciprocal(), Shifted()))
        assert [c.term(n) for n in range(1, 5)] == [1, 2, F(1, 2), F(3, 2)]


class TestDistanceSet:
    def test_must_start_at_zero(self):
        with pytest.raises(SpaceError):
            DistanceSet((F(1),))

    def test_of_sorts(self):
        assert DistanceSet.of([1, 0, F(1, 2), 1]).values == (0, F(1, 2), 1)

    def test_of_space(self):
        assert distance_set(dlps_space([0, F(1, 2), 1])).values == (0, F(1, 2), 1)
        assert distance_set(FiniteSpace("a", [[0]])).values == (0,)

    def test_clusters(self):
        s = FiniteSpace("abcd", [[0, "1/2", 1, 1], ["1/2", 0, 1, 1], [1, 1, 0, "1/2"], [1, 1, "1/2", 0]])
        assert distance_set(s).values == (0, F(1, 2), 1)

    def test_empty(self):
        with pytest.raises(SpaceError):
            distance_set(FiniteSpace([], []))


class TestClassify:
    def test_reciprocal_tail(self):
        assert classify_order_type(RECIP).tag == ONE_PLUS_OMEGA_STAR

    def test_shifted_tail(self):
        assert classify_order_type(SHIFTED).tag == ONE_PLUS_OMEGA_STAR

    def test_two_blocks(self):
        res = classify_order_type(TWO_BLOCKS)
        assert res.tag == OTHER
        assert "bottom accumulation" in res.evidence

    def test_finite(self):
        res = classify_order_type(DistanceSet.of([0, 1, 2]))
        assert res.tag == FINITE_CHAIN and res.size == 3

    def test_increasing_tail(self):
        res = classify_order_type(TailDescription(ZERO, Shifted(2, -1)))
        assert res.tag == OTHER and "largest element" in res.evidence
        res = classify_order_type(TailDescription((F(0), F(2)), Shifted(2, -1)))
        assert res.tag == OTHER and "immediate predecessor" in res.evidence

    def test_no_minimum(self):
        res = classify_order_type(TailDescription((), Reciprocal()))
        assert res.tag == OTHER and "no smallest element" in res.evidence

    def test_limit_in_set_with_nothing_between(self):
        # {1} together with 1 + 1/n: 1 is the minimum, type 1 + omega*
        assert classify_order_type(TailDescription((F(1),), Shifted())).tag == ONE_PLUS_OMEGA_STAR

    def test_head_element_below_a_nonzero_limit(self):
        d = TailDescription((F(0), F(1, 2)), Shifted())
        assert classify_order_type(d).tag == OTHER


class TestTotallyBounded:
    def test_accumulation(self):
        assert accumulation_at_zero(RECIP)
        assert not accumulation_at_zero(SHIFTED)
        assert not accumulation_at_zero(DistanceSet.of([0, 1]))

    def test_examples(self):
        assert tb_distance_set_check(RECIP).holds
        res = tb_distance_set_check(SHIFTED)
        assert not res.holds and res.order_type.tag == ONE_PLUS_OMEGA_STAR
        assert not tb_distance_set_check(DistanceSet.of([0, 1])).holds

    def test_routes_agree_on_examples(self):
        for d in (RECIP, SHIFTED, TWO_BLOCKS, DistanceSet.of([0, 1])):
            assert tb_distance_set_check(d).agree

    def test_enumeration_merges_blocks(self):
        d = TailDescription((F(0), F(3)), Concat((Reciprocal(), Geometric(1, F(1, 2)))))
        assert decreasing_enumeration(d, 6) == [3, 1, F(1, 2), F(1, 3), F(1, 4), F(1, 5)]


@st.composite
def descriptions(draw):
    head = draw(st.lists(st.sampled_from([F(0), F(1, 3), F(1), F(3, 2), F(2), F(5)]), max_size=3))
    simple = st.one_of(
        st.builds(Reciprocal, scale=st.sampled_from([F(1), F(1, 2), F(3)]), start=st.integers(1, 3)),
        st.builds(Shifted, shift=st.sampled_from([F(0), F(1), F(2)]),
                  scale=st.sampled_from([F(1), F(1, 2)]), start=st.integers(1, 3)),
        st.builds(Shifted, shift=st.sampled_from([F(1), F(2)]),
                  scale=st.sampled_from([F(-1, 2), F(-1)]), start=st.integers(1, 3)),
        st.builds(Geometric, q=st.sampled_from([F(1), F(4)]), r=st.sampled_from([F(1, 2), F(1, 3)])),
    )
    blocks = draw(st.lists(simple, min_size=1, max_size=3))
    tail = blocks[0] if len(blocks) == 1 else Concat(tuple(blocks))
    return TailDescription(tuple(head), tail)


@given(descriptions())
def test_routes_agree(desc):
    res = tb_distance_set_check(desc)
    assert res.agree
    assert res.holds == (res.order_type.tag == ONE_PLUS_OMEGA_STAR and res.accumulates_at_zero)


@given(descriptions())
def test_one_plus_omega_star_has_decreasing_listing(desc):
    # when the type is 1 + omega*, everything but the minimum lists as a decreasing sequence
    res = classify_order_type(desc)
    if res.tag != ONE_PLUS_OMEGA_STAR or not accumulation_at_zero(desc):
        return
    seq = decreasing_enumeration(desc, 15)
    assert all(a > b for a, b in zip(seq, seq[1:]))
