import random
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings, strategies as st

from ultrametrics import (BallRelabeling, ConstructionError, DistanceSet, FiniteSpace, NotUltrametricError,
                          Shifted, TailDescription, ball_partition, compose_preserving, diameter, distance_set,
                          dlps_space, largest_element_check, modify_ultrametric, partition_discrete,
                          preserving_counterexample, validate_ultrametric)
from ultrametrics.constructors import image_violations
from ultrametrics.preserving import identity, indicator, step, vanishing_below, with_points

from _strategies import brute_ultrametric, ultrametric_spaces

LINE = FiniteSpace("012", [[0, 1, 2], [1, 0, 1], [2, 1, 0]])


class TestDlps:
    def test_three_points(self):
        s = dlps_space([0, F(1, 2), 1])
        assert s.d("1", "1/2") == 1 and s.d("0", "1/2") == F(1, 2) and s.d("0", "1") == 1
        assert distance_set(s).values == (0, F(1, 2), 1)

    def test_single(self):
        assert len(dlps_space([0])) == 1

    def test_four(self):
        A = [0, F(1, 3), F(1, 2), 2]
        s = dlps_space(A)
        assert distance_set(s).values == tuple(A)
        assert brute_ultrametric(s)

    def test_needs_zero(self):
        with pytest.raises(ConstructionError):
            dlps_space([1, 2])

    def test_duplicates(self):
        with pytest.raises(ConstructionError):
            dlps_space([0, 1, "1"])

    @given(st.sets(st.fractions(min_value=F(1, 100), max_value=10), max_size=8))
    def test_distance_set_is_A(self, A):
        A = A | {F(0)}
        s = dlps_space(A)
        assert set(distance_set(s).values) == A
        assert validate_ultrametric(s).valid


class TestPartitionDiscrete:
    def test_example(self):
        s = partition_discrete([["a"], ["b", "c"]])
        assert s.d("a", "b") == s.d("a", "c") == 1
        assert s.d("b", "c") == F(1, 2)

    def test_single_class(self):
        assert partition_discrete([["a", "b"]]).d("a", "b") == 1
        assert len(partition_discrete([["a"]])) == 1

    def test_errors(self):
        with pytest.raises(ConstructionError):
            partition_discrete([["a"], []])
        with pytest.raises(ConstructionError):
            partition_discrete([["a"], ["a"]])

    @given(st.lists(st.integers(1, 4), min_size=1, max_size=6))
    def test_valid(self, sizes):
        classes = [[f"{k}.{i}" for i in range(m)] for k, m in enumerate(sizes)]
        s = partition_discrete(classes)
        assert validate_ultrametric(s).valid
        allowed = {F(0)} | {F(1, n) for n in range(1, len(sizes) + 1)}
        assert set(s.values) <= allowed


class TestCompose:
    def test_identity(self):
        s = dlps_space([0, F(1, 2), 2])
        assert compose_preserving(s, identity()) == s

    def test_step(self):
        s = compose_preserving(dlps_space([0, F(2, 5), F(3, 2)]), step())
        assert s.values == (0, F(1, 2), 1)

    def test_indicator(self):
        s = compose_preserving(dlps_space([0, F(1, 3), 2, 5]), indicator(1))
        assert s.values == (0, 1)

    def test_violation_is_carried(self):
        with pytest.raises(ConstructionError) as info:
            compose_preserving(dlps_space([0, 1, 2]), with_points({1: 2, 2: 1}))
        assert info.value.violation == ("monotone", 1, 2)

    def test_needs_ultrametric(self):
        with pytest.raises(NotUltrametricError):
            compose_preserving(LINE, identity())

    @given(ultrametric_spaces(), st.sampled_from([identity(), step(), indicator(F(7, 3))]))
    @settings(max_examples=40)
    def test_output_validates(self, space, f):
        assert validate_ultrametric(compose_preserving(space, f)).valid


class TestCounterexample:
    def test_swap(self):
        s = preserving_counterexample(with_points({1: 2, 2: 1}), [0, 1, 2])
        assert s is not None and set(s.labels) == {"0", "1", "2"}
        assert any(w.law == "strong-triangle" for w in image_violations(s, with_points({1: 2, 2: 1})))

    def test_vanishing(self):
        f = vanishing_below(F(1, 2))
        s = preserving_counterexample(f, [0, F(1, 4), F(1, 2)])
        assert s is not None and len(s) <= 3
        assert any(w.law == "identity" for w in image_violations(s, f))

    def test_identity(self):
        assert preserving_counterexample(identity(), [0, 1, 2]) is None

    def test_pool_checks(self):
        with pytest.raises(ConstructionError):
            preserving_counterexample(identity(), [0, 1])


class TestModify:
    def setup_method(self):
        self.space = dlps_space([0, F(1, 2), 2, 3])
        part = ball_partition(self.space, 1)
        self.g = BallRelabeling.for_partition(part, [F(5, 4), F(3, 2), F(7, 4)])

    def test_example(self):
        m = modify_ultrametric(self.space, 1, self.g)
        assert m.d("0", "1/2") == F(1, 2)
        assert m.d("0", "2") == F(3, 2)
        assert m.d("2", "3") == F(7, 4) == m.d("0", "3")
        assert distance_set(m).values == (0, F(1, 2), F(3, 2), F(7, 4))
        assert diameter(m) < 2

    def test_single_class(self):
        s = dlps_space([0, F(1, 3), F(1, 2)])
        g = BallRelabeling({"0": F(3, 2)}, 1)
        assert modify_ultrametric(s, 1, g) == s

    def test_two_singletons(self):
        s = dlps_space([0, 3])
        g = BallRelabeling.for_partition(ball_partition(s, 1), [F(5, 4), F(3, 2)])
        assert modify_ultrametric(s, 1, g).d("0", "3") == F(3, 2)

    def test_window(self):
        with pytest.raises(ConstructionError):
            BallRelabeling({"0": F(2)}, 1)
        with pytest.raises(ConstructionError):
            BallRelabeling({"0": F(1)}, 1)
        with pytest.raises(ConstructionError):
            BallRelabeling({"0": F(3, 2), "2": F(3, 2)}, 1)

    def test_domain_mismatch(self):
        with pytest.raises(ConstructionError):
            modify_ultrametric(self.space, 1, BallRelabeling({"0": F(5, 4), "2": F(3, 2)}, 1))
        with pytest.raises(ConstructionError):
            modify_ultrametric(self.space, 2, self.g)

    @given(ultrametric_spaces(max_points=10), st.data())
    @settings(max_examples=50)
    def test_invariants(self, space, data):
        positive = [v for v in space.values if v > 0]
        assume(positive)
        r1 = data.draw(st.sampled_from(positive))
        part = ball_partition(space, r1)
        k = len(part.classes)
        rng = random.Random(data.draw(st.integers(0, 10**6)))
        den = 4 * k + 1
        vals = [r1 * (1 + F(j, den)) for j in rng.sample(range(1, den), k)]
        m = modify_ultrametric(space, r1, BallRelabeling.for_partition(part, vals))
        assert validate_ultrametric(m).valid
        assert max(m.values) < 2 * r1
        for b in part.classes:
            for x in b.members:
                for y in b.members:
                    assert m.d(x, y) == space.d(x, y)
        assert ball_partition(m, r1).classes == part.classes
        if r1 == diameter(space):
            assert all(m.d(x, y) >= space.d(x, y) for x in space.labels for y in space.labels)


class TestLargestElement:
    def test_finite(self):
        assert largest_element_check(DistanceSet.of([0, F(1, 2), 1]), 1)

    def test_tail(self):
        assert not largest_element_check(TailDescription((F(0),), Shifted(2, -1)), 2)
