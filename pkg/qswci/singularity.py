"""
Cyclic quotient singularities at coordinate points and one-blowup discrepancies.

At a coordinate point P_i on a quasismooth X, condition (2) of the subset
test gives equations f_j = x_{e_j} x_i^k + ... with distinct e_j; the
implicit function theorem eliminates the x_{e_j} and leaves a quotient of
affine m-space by mu_{a_i}. A weighted blowup of that point has discrepancy
sum(w)/r - 1. A discrepancy <= epsilon - 1 certifies that X is not
epsilon-klt; the converse is never claimed.
"""
from typing import Iterator, List, Optional, Sequence, Tuple, Union
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd

from .core_model import CandidateFamily
from .monomial_engine import distinct_assignment, is_representable


@dataclass(frozen=True)
class KltParams:
    """Threshold epsilon for epsilon-klt, with 0 < epsilon <= 1."""
    epsilon: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, 'epsilon', Fraction(self.epsilon))
        if not 0 < self.epsilon <= 1:
            raise ValueError(f"epsilon must lie in (0, 1], got {self.epsilon}")


@dataclass(frozen=True)
class CyclicQuotientSingularity:
    """A point of type 1/r(w_1,...,w_m) at the coordinate point P_i.

    `reduced` is set when surviving weights divisible by r had to be
    discarded, in which case the type is not well-formed and needs review.
    """
    point_index: int
    order: int
    local_weights: Tuple[int, ...]
    discrepancy: Fraction
    eliminated: Tuple[int, ...] = ()
    reduced: bool = False

    def presentations(self) -> Iterator[Tuple[int, ...]]:
        """Equivalent weight vectors j*w mod r for each generator j of mu_r."""
        for j in range(1, self.order):
            if gcd(j, self.order) == 1:
                yield tuple(sorted((j * w) % self.order for w in self.local_weights))

    @property
    def min_discrepancy(self) -> Fraction:
        """Smallest one-blowup discrepancy over all presentations of the type."""
        return min(blowup_discrepancy(self.order, ws) for ws in self.presentations())

    def type_string(self) -> str:
        return f"1/{self.order}({','.join(str(w) for w in self.local_weights)})"


@dataclass(frozen=True)
class NoLocalStructure:
    """P_i lies on X but no distinct external variables eliminate the equations."""
    point_index: int


def blowup_discrepancy(r: int, local_weights: Sequence[int]) -> Fraction:
    """
    Discrepancy of the weighted blowup of 1/r(w) with weights w/r.

    Raises:
        ValueError: If r < 2 or a weight is not a residue in [1, r)
    """
    if r < 2:
        raise ValueError(f"Order must be at least 2, got {r}")
    if any(not 1 <= w < r for w in local_weights):
        raise ValueError(f"Local weights {list(local_weights)} must lie in [1, {r})")
    return Fraction(sum(local_weights), r) - 1


def point_on_family(family: CandidateFamily, i: int) -> bool:
    """P_i lies on X iff no degree is a multiple of a_i."""
    return all(d % family.weights[i] != 0 for d in family.degrees)


def coordinate_point_analysis(
        family: CandidateFamily, i: int
) -> Optional[Union[CyclicQuotientSingularity, NoLocalStructure]]:
    """
    Local type of X at the coordinate point P_i.

    Args:
        family: Normalized, linear-cone-free, quasismooth family
        i: Index of the coordinate point

    Returns:
        None if P_i is not on X or is a smooth point of P; a
        CyclicQuotientSingularity otherwise, or NoLocalStructure when the
        equations cannot be eliminated at P_i

    Raises:
        ValueError: If i is out of range
    """
    if not 0 <= i <= family.n:
        raise ValueError(f"Point index {i} out of range for {family}")
    r = family.weights[i]
    if r == 1 or not point_on_family(family, i):
        return None

    requirements = [
        {e for e in range(family.n + 1)
         if e != i and d - family.weights[e] >= 0 and (d - family.weights[e]) % r == 0}
        for d in family.degrees
    ]
    assignment = distinct_assignment(requirements)
    if assignment is None:
        return NoLocalStructure(point_index=i)

    removed = set(assignment) | {i}
    residues = [family.weights[k] % r for k in range(family.n + 1) if k not in removed]
    local_weights = tuple(w for w in residues if w != 0)
    return CyclicQuotientSingularity(
        point_index=i,
        order=r,
        local_weights=local_weights,
        discrepancy=blowup_discrepancy(r, local_weights),
        eliminated=tuple(assignment),
        reduced=len(local_weights) < len(residues)
    )


def coordinate_singularities(
        family: CandidateFamily
) -> List[Union[CyclicQuotientSingularity, NoLocalStructure]]:
    """All non-smooth coordinate points of X, in index order."""
    found = []
    for i in range(family.n + 1):
        result = coordinate_point_analysis(family, i)
        if result is not None:
            found.append(result)
    return found


def epsilon_klt_witness(family: CandidateFamily,
                        params: KltParams) -> Optional[CyclicQuotientSingularity]:
    """
    First coordinate point whose discrepancy is at most epsilon - 1.

    Reduced types are skipped. Returning None does not certify epsilon-klt.
    """
    threshold = params.epsilon - 1
    for point in coordinate_singularities(family):
        if isinstance(point, CyclicQuotientSingularity) and not point.reduced:
            if point.min_discrepancy <= threshold:
                return point
    return None


def singular_strata_meeting(family: CandidateFamily) -> List[Tuple[int, ...]]:
    """
    Positive-dimensional singular strata P_E of P that meet X.

    For general equations P_E meets X when at most |E| - 1 of them have a
    monomial in E (the others vanish identically on P_E).
    """
    meeting = []
    for size in range(2, family.n + 1):
        for combo in combinations(range(family.n + 1), size):
            weights_of_E = [family.weights[k] for k in combo]
            if reduce(gcd, weights_of_E, 0) == 1:
                continue
            cutting = sum(1 for d in family.degrees if is_representable(d, weights_of_E))
            if cutting <= size - 1:
                meeting.append(combo)
    return meeting
