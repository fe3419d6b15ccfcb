"""
Monomial existence and distinct-representative assignment.

Whether a general polynomial of degree d in the variables x_i, i in E, has
a given monomial is numerical-semigroup membership of d in the semigroup
generated by the weights of E. Condition (2) of the quasismoothness test
additionally needs an injective choice of external variables, which is a
bipartite matching problem.
"""
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from math import gcd

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .core_model import CandidateFamily


@dataclass(frozen=True)
class Monomial:
    """A monomial prod x_i^{k_i}; `exponents` maps variable index to k_i."""
    exponents: Dict[int, int] = field(default_factory=dict)
    degree: int = 0

    def __post_init__(self):
        if any(k < 0 for k in self.exponents.values()):
            raise ValueError(f"Exponents must be nonnegative, got {self.exponents}")
        if not self.exponents and self.degree != 0:
            raise ValueError("The empty monomial has degree 0")

    def check_degree(self, weights: Sequence[int]) -> bool:
        """Whether the stored degree agrees with the host weight system."""
        return self.degree == sum(k * weights[i] for i, k in self.exponents.items())


@dataclass(frozen=True)
class VariableSubset:
    """A nonempty subset E of the variable indices {0..n}."""
    indices: FrozenSet[int]

    def __post_init__(self):
        if not self.indices:
            raise ValueError("A variable subset must be nonempty")
        if any(i < 0 for i in self.indices):
            raise ValueError(f"Variable indices must be nonnegative, got {sorted(self.indices)}")

    @classmethod
    def of(cls, *indices: int) -> "VariableSubset":
        return cls(frozenset(indices))

    def validate_for(self, family: CandidateFamily) -> None:
        bad = [i for i in self.indices if i > family.n]
        if bad:
            raise ValueError(f"Indices {bad} out of range for {family}")

    def weights_in(self, family: CandidateFamily) -> Tuple[int, ...]:
        return tuple(family.weights[i] for i in sorted(self.indices))

    def complement(self, family: CandidateFamily) -> List[int]:
        return [e for e in range(family.n + 1) if e not in self.indices]

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(sorted(self.indices))

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in sorted(self.indices)) + "}"


def _close_under(table: np.ndarray, weight: int) -> np.ndarray:
    """Close a reachability table under adding `weight` any number of times."""
    closed = table.copy()
    for r in range(min(weight, len(closed))):
        closed[r::weight] = np.logical_or.accumulate(closed[r::weight])
    return closed


def _suffix_tables(weights: Sequence[int], bound: int) -> List[np.ndarray]:
    """tables[t][v] is True iff v is a nonnegative combination of weights[t:]."""
    base = np.zeros(bound + 1, dtype=bool)
    base[0] = True
    tables = [base]
    for w in reversed(weights):
        tables.append(_close_under(tables[-1], w))
    tables.reverse()
    return tables


@lru_cache(maxsize=2048)
def _membership_table(weights: Tuple[int, ...], bound: int) -> np.ndarray:
    return _suffix_tables(weights, bound)[0]


def is_representable(d: int, weights: Iterable[int]) -> bool:
    """Membership of d in the numerical semigroup generated by `weights`."""
    if d < 0:
        return False
    if d == 0:
        return True
    ws = tuple(sorted(set(weights)))
    if not ws:
        return False
    if ws[0] == 1:
        return True
    if d % reduce(gcd, ws) != 0:
        return False
    if len(ws) == 1:
        return True
    if len(ws) == 2:
        small, big = ws
        return any((d - k * big) % small == 0 for k in range(d // big + 1))
    # share tables between nearby degrees
    bound = 1 << max(d, 1).bit_length()
    return bool(_membership_table(ws, bound)[d])


def representable(d: int, weights_of_E: Sequence[int],
                  indices: Optional[Sequence[int]] = None) -> Optional[Monomial]:
    """
    Find a monomial of degree d in the given variables.

    Args:
        d: Target degree
        weights_of_E: Weights of the variables in E
        indices: Variable indices for the weights (defaults to positions)

    Returns:
        Optional[Monomial]: The lexicographically smallest exponent vector in
        the subset's sorted order, or None if d is not representable
    """
    if indices is None:
        indices = list(range(len(weights_of_E)))
    if len(indices) != len(weights_of_E):
        raise ValueError("Indices and weights must have the same length")
    if d < 0:
        return None
    if d == 0:
        return Monomial()
    if not is_representable(d, weights_of_E):
        return None

    order = sorted(range(len(indices)), key=lambda p: indices[p])
    ws = [weights_of_E[p] for p in order]
    tables = _suffix_tables(ws, d)
    exponents: Dict[int, int] = {}
    remaining = d
    for t, w in enumerate(ws):
        k = next(k for k in range(remaining // w + 1) if tables[t + 1][remaining - k * w])
        if k:
            exponents[indices[order[t]]] = exponents.get(indices[order[t]], 0) + k
        remaining -= k * w
    return Monomial(exponents=exponents, degree=d)


def external_candidates(d: int, subset: VariableSubset, family: CandidateFamily) -> Set[int]:
    """Indices e outside E such that x_e times a monomial in E has degree d."""
    weights_of_E = subset.weights_in(family)
    return {
        e for e in subset.complement(family)
        if d - family.weights[e] >= 0 and is_representable(d - family.weights[e], weights_of_E)
    }


def distinct_assignment(requirements: Sequence[Iterable[int]]) -> Optional[List[int]]:
    """
    Choose one index per requirement, all distinct.

    Args:
        requirements: Candidate index sets, one per requirement

    Returns:
        Optional[List[int]]: The chosen index for each requirement in order,
        or None when no system of distinct representatives exists
    """
    sets = [sorted(set(r)) for r in requirements]
    if not sets:
        return []
    if any(not s for s in sets):
        return None
    if len(sets) == 1:
        return [sets[0][0]]

    columns = sorted({i for s in sets for i in s})
    if len(columns) < len(sets):
        return None
    position = {i: p for p, i in enumerate(columns)}
    rows = np.repeat(np.arange(len(sets)), [len(s) for s in sets])
    cols = np.array([position[i] for s in sets for i in s])
    graph = csr_matrix((np.ones(len(cols), dtype=np.int8), (rows, cols)),
                       shape=(len(sets), len(columns)))
    matched = maximum_bipartite_matching(graph, perm_type='column')
    if np.any(matched < 0):
        return None
    return [columns[p] for p in matched]
