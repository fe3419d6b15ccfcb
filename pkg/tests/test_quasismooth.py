import unittest
from pathlib import Path

from hypothesis import assume, given, settings, strategies as st

from qswci.core_model import cone_lift, linear_cone_reduce, normalize_family
from qswci.fixtures import load_fixture
from qswci.monomial_engine import VariableSubset
from qswci.quasismooth import (
    QsMode,
    check_quasismooth,
    check_wellformed_family,
    degree_rules_hold,
    iter_subsets,
    stratum_contained,
    subset_report,
)


class TestSubsetReport(unittest.TestCase):
    def test_condition_two_at_the_heavy_point(self):
        family = normalize_family([1, 1, 1, 1, 4], [5])
        report = subset_report(family, VariableSubset.of(4))
        self.assertEqual(report.rho, 1)
        self.assertFalse(report.condition1)
        self.assertEqual(report.pure_count, 0)
        self.assertEqual(report.condition2, (0, {0: 0}))
        self.assertEqual(report.distinct_e_count, 4)
        self.assertTrue(report.passed)
        self.assertEqual(report.verdict, "pass")

    def test_strict_needs_enough_external_variables(self):
        family = normalize_family([1, 2, 3, 3], [8])
        subset = VariableSubset.of(2, 3)

        necessary = subset_report(family, subset, QsMode.NECESSARY)
        self.assertTrue(necessary.passed)
        self.assertEqual(necessary.condition2, (0, {0: 1}))
        self.assertEqual(necessary.distinct_e_count, 1)

        strict = subset_report(family, subset, QsMode.STRICT)
        self.assertFalse(strict.passed)

    def test_out_of_range_subset(self):
        with self.assertRaises(ValueError):
            subset_report(normalize_family([1, 1, 1, 3], [6]), VariableSubset.of(9))


class TestCheckQuasismooth(unittest.TestCase):
    def test_k3_sextic_passes(self):
        verdict = check_quasismooth(normalize_family([1, 1, 1, 3], [6]))
        self.assertTrue(verdict.passed)
        self.assertEqual(verdict.mode, QsMode.STRICT)
        self.assertEqual(verdict.failing_subsets, [])

    def test_worked_example_passes(self):
        self.assertTrue(check_quasismooth(normalize_family([1, 1, 1, 1, 4], [5])).passed)

    def test_first_failure_is_smallest_subset(self):
        verdict = check_quasismooth(normalize_family([1, 1, 4, 5], [6]))
        self.assertFalse(verdict.passed)
        self.assertEqual(verdict.verdict, "fail")
        self.assertEqual(len(verdict.failing_subsets), 1)
        self.assertEqual(str(verdict.failing_subsets[0].subset), "{2}")

    def test_modes_disagree_on_thin_line(self):
        family = normalize_family([1, 2, 3, 3], [8])
        self.assertTrue(check_quasismooth(family, QsMode.NECESSARY).passed)
        strict = check_quasismooth(family, QsMode.STRICT)
        self.assertFalse(strict.passed)
        self.assertEqual(str(strict.failing_subsets[0].subset), "{2,3}")

    def test_collect_all(self):
        family = normalize_family([1, 1, 4, 5], [6])
        verdict = check_quasismooth(family, collect_all=True)
        self.assertGreaterEqual(len(verdict.failing_subsets), 1)
        sizes = [len(r.subset) for r in verdict.failing_subsets]
        self.assertEqual(sizes, sorted(sizes))

    def test_iter_subsets_counts(self):
        subsets = list(iter_subsets(3))
        self.assertEqual(len(subsets), 15)
        self.assertEqual(subsets[0], (0,))
        self.assertEqual(subsets[-1], (0, 1, 2, 3))


class TestWellformedness(unittest.TestCase):
    def test_contained_singular_line(self):
        family = normalize_family([1, 1, 2, 2], [5])
        ok, witness = check_wellformed_family(family)
        self.assertFalse(ok)
        self.assertEqual(witness, VariableSubset.of(2, 3))
        self.assertTrue(stratum_contained(family, witness))

    def test_wellformed_families(self):
        for weights, degrees in [([1, 1, 1, 2], [5]), ([1, 1, 2, 2], [6]),
                                 ([2, 3, 3, 3, 8], [18]), ([1, 1, 1, 1, 4], [5])]:
            ok, witness = check_wellformed_family(normalize_family(weights, degrees))
            self.assertTrue(ok, weights)
            self.assertIsNone(witness)

    def test_ambient_space_not_wellformed(self):
        self.assertEqual(check_wellformed_family(normalize_family([1, 2, 2, 2], [6])), (False, None))


class TestDegreeRules(unittest.TestCase):
    def test_rules(self):
        self.assertTrue(degree_rules_hold(normalize_family([1, 1, 1, 3], [6])))
        self.assertTrue(degree_rules_hold(normalize_family([1, 1, 4, 5], [6])))
        self.assertFalse(degree_rules_hold(normalize_family([1, 1, 2, 7], [6])))
        # 7 > d_1 = 6 divides neither degree
        self.assertFalse(degree_rules_hold(normalize_family([1, 1, 1, 2, 5, 7], [6, 8])))


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(1, 12), min_size=3, max_size=5), st.integers(2, 40))
def test_strict_pass_implies_necessary_pass(weights, degree):
    family = normalize_family(weights, [degree])
    assume(not linear_cone_reduce(family).is_linear_cone)
    if check_quasismooth(family, QsMode.STRICT).passed:
        assert check_quasismooth(family, QsMode.NECESSARY).passed


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(1, 12), min_size=3, max_size=5), st.integers(2, 40))
def test_quasismooth_hypersurfaces_obey_degree_rules(weights, degree):
    family = normalize_family(weights, [degree])
    assume(not linear_cone_reduce(family).is_linear_cone)
    if check_quasismooth(family).passed:
        assert degree_rules_hold(family)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(1, 12), min_size=4, max_size=6),
       st.lists(st.integers(2, 30), min_size=1, max_size=2), st.data())
def test_condition_one_carries_to_supersets(weights, degrees, data):
    family = normalize_family(weights, degrees)
    indices = range(family.n + 1)
    inner = data.draw(st.sets(st.sampled_from(indices), min_size=1))
    outer = inner | data.draw(st.sets(st.sampled_from(indices)))
    report = subset_report(family, VariableSubset(frozenset(inner)))
    # with c >= 2 a partial set of pure degrees may stop covering rho on a superset
    if report.condition1 and (family.c == 1 or report.pure_count == family.c):
        assert subset_report(family, VariableSubset(frozenset(outer))).condition1


class TestConeLift(unittest.TestCase):
    def test_k3_fixtures_stay_quasismooth(self):
        fixture = load_fixture(Path(__file__).parent / "fixtures" / "k3_hypersurfaces.csv")
        self.assertEqual(len(fixture.keys), 95)
        for weights, degrees in fixture.keys:
            family = normalize_family(weights, degrees)
            self.assertTrue(check_quasismooth(family).passed, family)
            self.assertTrue(check_quasismooth(cone_lift(family)).passed, cone_lift(family))


if __name__ == '__main__':
    unittest.main()
