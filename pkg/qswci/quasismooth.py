"""
Subset-wise quasismoothness conditions for general weighted complete intersections.

For every nonempty subset E of the variables, a quasismooth X must either
have rho_E = min(c, |E|) equations with a pure monomial in E (condition 1),
or every equation without such a monomial must contain x_e times a monomial
in E for pairwise distinct external variables e (condition 2). Coefficients
are assumed general throughout.
"""
from typing import Dict, List, Optional, Tuple
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from itertools import combinations
from math import gcd
import logging

from .core_model import CandidateFamily, amplitude_delta, is_wellformed_space
from .monomial_engine import (
    VariableSubset,
    distinct_assignment,
    external_candidates,
    is_representable,
)

logger = logging.getLogger(__name__)


class QsMode(str, Enum):
    """Which form of the subset test to run."""
    NECESSARY = "necessary"
    STRICT = "strict"


@dataclass(frozen=True)
class SubsetReport:
    """Verdict of the two conditions for one subset E."""
    subset: VariableSubset
    rho: int
    condition1: bool
    pure_count: int
    condition2: Optional[Tuple[int, Dict[int, int]]]
    distinct_e_count: int
    passed: bool

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


@dataclass(frozen=True)
class QsVerdict:
    """Result of scanning all subsets."""
    passed: bool
    mode: QsMode
    failing_subsets: List[SubsetReport] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"


def subset_report(family: CandidateFamily, subset: VariableSubset,
                  mode: QsMode = QsMode.STRICT) -> SubsetReport:
    """
    Evaluate both quasismoothness conditions on one subset.

    Args:
        family: Normalized family without linear cones
        subset: The subset E
        mode: NECESSARY runs the two conditions as stated; STRICT additionally
            requires at least |E| distinct external variables for a hypersurface
            without a pure monomial over E

    Returns:
        SubsetReport: Per-condition outcome and overall verdict

    Raises:
        ValueError: If E references indices outside the family
    """
    subset.validate_for(family)
    weights_of_E = subset.weights_in(family)
    pure = [j for j, d in enumerate(family.degrees) if is_representable(d, weights_of_E)]
    rho = min(family.c, len(subset))
    condition1 = len(pure) >= rho

    non_pure = [j for j in range(family.c) if j not in pure]
    candidates = [external_candidates(family.degrees[j], subset, family) for j in non_pure]
    distinct_e_count = len(set().union(*candidates)) if candidates else 0
    assignment = distinct_assignment(candidates)
    condition2 = None
    if assignment is not None:
        condition2 = (len(pure), dict(zip(non_pure, assignment)))

    passed = condition1 or condition2 is not None
    if mode == QsMode.STRICT and family.c == 1 and not condition1:
        passed = condition2 is not None and distinct_e_count >= len(subset)

    return SubsetReport(
        subset=subset,
        rho=rho,
        condition1=condition1,
        pure_count=len(pure),
        condition2=condition2,
        distinct_e_count=distinct_e_count,
        passed=passed
    )


def iter_subsets(n: int):
    """Nonempty subsets of {0..n} by increasing size, lexicographic within a size."""
    for size in range(1, n + 2):
        for combo in combinations(range(n + 1), size):
            yield combo


def check_quasismooth(family: CandidateFamily, mode: QsMode = QsMode.STRICT,
                      collect_all: bool = False) -> QsVerdict:
    """
    Run the subset test over all 2^(n+1) - 1 nonempty subsets.

    Supersets of a subset over which every degree has a pure monomial pass
    condition 1 automatically and are skipped.

    Args:
        family: Normalized family without linear cones
        mode: Test mode
        collect_all: Keep scanning after the first failure

    Returns:
        QsVerdict: Overall verdict with failing subsets smallest-first
    """
    all_pure: List[int] = []
    failing: List[SubsetReport] = []

    for combo in iter_subsets(family.n):
        mask = sum(1 << i for i in combo)
        if any(mask & p == p for p in all_pure):
            continue
        report = subset_report(family, VariableSubset(frozenset(combo)), mode)
        if report.pure_count == family.c:
            all_pure.append(mask)
        if not report.passed:
            failing.append(report)
            if not collect_all:
                break

    return QsVerdict(passed=not failing, mode=mode, failing_subsets=failing)


def stratum_contained(family: CandidateFamily, subset: VariableSubset) -> bool:
    """True iff the stratum P_E lies on X, i.e. no equation has a monomial in E."""
    weights_of_E = subset.weights_in(family)
    return not any(is_representable(d, weights_of_E) for d in family.degrees)


def check_wellformed_family(family: CandidateFamily) -> Tuple[bool, Optional[VariableSubset]]:
    """
    Check that P is well-formed and X contains no codimension c+1 singular stratum.

    A stratum P_E has codimension n - |E| + 1 in P, so the strata to inspect
    are the singular ones with |E| = n - c.

    Returns:
        Tuple[bool, Optional[VariableSubset]]: Verdict and a contained singular
        stratum as witness (None when the ambient space itself is not well-formed)
    """
    if not is_wellformed_space(family.weights):
        return False, None
    size = family.n - family.c
    if size < 1:
        return True, None
    for combo in combinations(range(family.n + 1), size):
        if reduce(gcd, (family.weights[i] for i in combo), 0) == 1:
            continue
        subset = VariableSubset(frozenset(combo))
        if stratum_contained(family, subset):
            return False, subset
    return True, None


def degree_rules_hold(family: CandidateFamily) -> bool:
    """
    Numerical consequences of quasismoothness for linear-cone-free families.

    Every delta_j is positive, and every weight a_t > d_1 divides some degree.
    """
    _, profile = amplitude_delta(family)
    if any(delta <= 0 for delta in profile.deltas):
        return False
    d1 = family.degrees[0]
    return all(
        any(d % a == 0 for d in family.degrees)
        for a in family.weights if a > d1
    )
