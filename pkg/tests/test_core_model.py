import unittest
from fractions import Fraction
from math import prod

from hypothesis import given, settings, strategies as st

from qswci.core_model import (
    CandidateFamily,
    WeightSystem,
    amplitude_delta,
    cone_lift,
    is_wellformed_space,
    linear_cone_reduce,
    normalize_family,
    volume,
)


class TestNormalization(unittest.TestCase):
    def test_sorts_weights_and_degrees(self):
        family = normalize_family([4, 1, 1, 1, 1], [5])
        self.assertEqual(family.weights.weights, (1, 1, 1, 1, 4))
        self.assertEqual(family.degrees, (5,))
        self.assertEqual(family.n, 4)
        self.assertEqual(family.c, 1)
        self.assertEqual(family.m, 3)

    def test_rejects_bad_input(self):
        with self.assertRaises(ValueError):
            normalize_family([], [4])
        with self.assertRaises(ValueError):
            normalize_family([1, 1, 1], [])
        with self.assertRaises(ValueError):
            normalize_family([1, 0, 1], [2])
        with self.assertRaises(ValueError):
            normalize_family([1, 1], [2, 3])

    def test_unsorted_weight_system_rejected(self):
        with self.assertRaises(ValueError):
            WeightSystem((2, 1, 1))

    def test_sort_key_orders_by_codim_then_degrees(self):
        a = normalize_family([1, 1, 1, 3], [6])
        b = normalize_family([1, 1, 2, 2], [6])
        c = normalize_family([1, 1, 1, 2], [5])
        self.assertEqual(sorted([a, b, c], key=lambda f: f.sort_key()), [c, a, b])

    def test_str(self):
        self.assertEqual(str(normalize_family([2, 3, 3, 3, 8], [18])), "X_{18} in P(2,3,3,3,8)")


class TestInvariants(unittest.TestCase):
    def test_amplitude_and_delta(self):
        alpha, profile = amplitude_delta(normalize_family([1, 1, 1, 1, 4], [5]))
        self.assertEqual(alpha, -3)
        self.assertEqual(profile.deltas, (1,))
        self.assertEqual(profile.total, 1)

        alpha, profile = amplitude_delta(normalize_family([1, 1, 1, 3], [6]))
        self.assertEqual(alpha, 0)
        self.assertEqual(profile.total, 3)

    def test_volume_is_exact(self):
        data = volume(normalize_family([1, 1, 1, 1, 4], [5]))
        self.assertEqual(data.o1_power, Fraction(5, 4))
        self.assertEqual(data.canonical_power, Fraction(-135, 4))
        self.assertEqual(data.anticanonical_power, Fraction(135, 4))

        k3 = volume(normalize_family([1, 1, 1, 1], [4]))
        self.assertEqual(k3.o1_power, 4)
        self.assertEqual(k3.canonical_power, 0)

    def test_wellformed_space(self):
        self.assertTrue(is_wellformed_space(WeightSystem((1, 1, 2, 2))))
        self.assertTrue(is_wellformed_space(WeightSystem((2, 3, 3, 3, 8))))
        self.assertFalse(is_wellformed_space(WeightSystem((1, 2, 2, 2))))

    def test_cone_lift(self):
        lifted = cone_lift(normalize_family([1, 1, 1, 3], [6]))
        self.assertEqual(lifted.weights.weights, (1, 1, 1, 1, 3))
        self.assertEqual(lifted.m, 3)
        self.assertEqual(lifted.alpha, -1)


class TestLinearCones(unittest.TestCase):
    def test_no_cone_returns_family(self):
        family = normalize_family([1, 1, 1, 3], [6])
        result = linear_cone_reduce(family)
        self.assertIs(result.reduced, family)
        self.assertEqual(result.steps, [])
        self.assertFalse(result.is_linear_cone)

    def test_partial_reduction(self):
        result = linear_cone_reduce(normalize_family([1, 1, 2, 3, 4], [3, 6]))
        self.assertEqual(result.steps, [(3, 0)])
        self.assertEqual(result.reduced, normalize_family([1, 1, 2, 4], [6]))
        self.assertFalse(result.degenerate)

    def test_full_reduction_is_degenerate(self):
        result = linear_cone_reduce(normalize_family([1, 1, 1, 2], [2]))
        self.assertTrue(result.degenerate)
        self.assertIsNone(result.reduced)
        self.assertEqual(result.remaining_weights, (1, 1, 1))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 30), min_size=3, max_size=7), st.data())
def test_normalization_is_permutation_invariant(weights, data):
    degrees = data.draw(st.lists(st.integers(1, 60), min_size=1, max_size=len(weights) - 1))
    shuffled_weights = data.draw(st.permutations(weights))
    shuffled_degrees = data.draw(st.permutations(degrees))
    assert normalize_family(shuffled_weights, shuffled_degrees) == normalize_family(weights, degrees)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 30), min_size=3, max_size=6), st.integers(1, 60))
def test_cone_lift_shifts_dimension_and_amplitude(weights, degree):
    family = normalize_family(weights, [degree])
    lifted = cone_lift(family)
    assert lifted.m == family.m + 1
    assert lifted.alpha == family.alpha - 1
    assert isinstance(lifted, CandidateFamily)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 30), min_size=3, max_size=7), st.data())
def test_volume_cross_multiplies(weights, data):
    degrees = data.draw(st.lists(st.integers(1, 60), min_size=1, max_size=len(weights) - 1))
    family = normalize_family(weights, degrees)
    assert volume(family).o1_power * prod(family.weights) == prod(family.degrees)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 12), min_size=3, max_size=7), st.data())
def test_linear_cone_reduction_keeps_amplitude(weights, data):
    degree = st.one_of(st.sampled_from(weights), st.integers(1, 40))
    degrees = data.draw(st.lists(degree, min_size=1, max_size=len(weights) - 1))
    family = normalize_family(weights, degrees)
    result = linear_cone_reduce(family)
    if result.degenerate:
        assert sum(family.degrees) - sum(family.weights) == -sum(result.remaining_weights)
    else:
        assert result.reduced.alpha == family.alpha


if __name__ == '__main__':
    unittest.main()
