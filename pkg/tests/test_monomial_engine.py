import itertools

import pytest
from hypothesis import given, settings, strategies as st

from qswci.core_model import normalize_family
from qswci.monomial_engine import (
    Monomial,
    VariableSubset,
    distinct_assignment,
    external_candidates,
    is_representable,
    representable,
)


def reachable_degrees(weights, limit):
    """Every degree <= limit of a monomial in the given weights, by direct expansion."""
    reachable = {0}
    for w in weights:
        reachable = {r + k * w for r in reachable for k in range((limit - r) // w + 1)}
    return reachable


def test_small_cases():
    assert is_representable(8, [3, 5])
    assert not is_representable(7, [3, 5])
    assert is_representable(0, [4])
    assert not is_representable(-1, [1])
    assert not is_representable(5, [])
    assert not is_representable(9, [4, 6])
    assert is_representable(23, [6, 9, 20, 1])
    assert not is_representable(43, [6, 9, 20])
    assert is_representable(44, [6, 9, 20])


def test_agrees_with_direct_expansion():
    limit = 60
    for size in range(1, 5):
        for weights in itertools.combinations_with_replacement(range(1, 11), size):
            reachable = reachable_degrees(weights, limit)
            for d in range(limit + 1):
                assert is_representable(d, weights) == (d in reachable), (d, weights)


def test_representable_returns_lex_smallest_witness():
    mono = representable(6, [1, 2, 3])
    assert mono.exponents == {2: 2}
    assert mono.check_degree([1, 2, 3])

    mono = representable(7, [2, 3], indices=[4, 1])
    assert mono.degree == 7
    assert mono.check_degree({4: 2, 1: 3})

    assert representable(5, [2, 4]) is None
    assert representable(0, [2]) == Monomial()


def test_monomial_and_subset_validation():
    with pytest.raises(ValueError):
        Monomial(exponents={0: -1}, degree=0)
    with pytest.raises(ValueError):
        VariableSubset(frozenset())
    with pytest.raises(ValueError):
        VariableSubset.of(0, 7).validate_for(normalize_family([1, 1, 1, 3], [6]))


def test_external_candidates():
    assert external_candidates(6, VariableSubset.of(2), normalize_family([1, 1, 4, 5], [6])) == set()
    family = normalize_family([1, 1, 1, 2], [5])
    assert external_candidates(5, VariableSubset.of(3), family) == {0, 1, 2}


def test_distinct_assignment():
    assert distinct_assignment([]) == []
    assert distinct_assignment([{1}, set()]) is None
    assert distinct_assignment([{3, 5}]) == [3]
    assert distinct_assignment([{1, 2}, {1}]) == [2, 1]
    assert distinct_assignment([{1}, {1}]) is None
    assert distinct_assignment([{1, 2}, {1, 2}, {1, 2}]) is None


@settings(max_examples=50, deadline=None)
@given(st.lists(st.sets(st.integers(0, 6), max_size=4), min_size=1, max_size=5))
def test_assignment_is_a_system_of_distinct_representatives(requirements):
    result = distinct_assignment(requirements)
    if result is None:
        # Hall's condition must fail for some family of requirements
        assert any(
            len(set().union(*combo)) < len(combo)
            for size in range(1, len(requirements) + 1)
            for combo in itertools.combinations(requirements, size)
        )
    else:
        assert len(set(result)) == len(result)
        assert all(choice in req for choice, req in zip(result, requirements))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(2, 15), min_size=1, max_size=4),
       st.integers(0, 80), st.integers(0, 80))
def test_semigroup_is_closed_under_addition(weights, x, y):
    if is_representable(x, weights) and is_representable(y, weights):
        assert is_representable(x + y, weights)


def test_growing_subset_can_enable_a_candidate():
    family = normalize_family([2, 3, 4, 5], [7])
    assert external_candidates(7, VariableSubset.of(0), family) == {1, 3}
    assert external_candidates(7, VariableSubset.of(0, 1), family) == {2, 3}


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(1, 12), min_size=3, max_size=6), st.integers(2, 40), st.data())
def test_candidates_shrink_with_the_complement(weights, degree, data):
    family = normalize_family(weights, [degree])
    indices = range(family.n + 1)
    inner = data.draw(st.sets(st.sampled_from(indices), min_size=1))
    outer = inner | data.draw(st.sets(st.sampled_from(indices)))
    small = external_candidates(degree, VariableSubset(frozenset(inner)), family)
    large = external_candidates(degree, VariableSubset(frozenset(outer)), family)
    # only indices that left the complement can drop out
    assert large <= set(VariableSubset(frozenset(outer)).complement(family))
    assert small - outer <= large
