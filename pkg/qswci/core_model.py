"""
Core data model for weighted complete intersections.

A family X_{d_1,...,d_c} in P(a_0,...,a_n) is described purely by its
numerical data: the ambient weights and the degrees of the defining
equations. Everything here is immutable and exact.
"""
from typing import List, Optional, Sequence, Tuple
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, prod
from functools import reduce


@dataclass(frozen=True)
class WeightSystem:
    """Ambient weights (a_0,...,a_n) of a weighted projective space."""
    weights: Tuple[int, ...]

    def __post_init__(self):
        if len(self.weights) < 2:
            raise ValueError(f"A weight system needs at least two weights, got {list(self.weights)}")
        if any(a < 1 for a in self.weights):
            raise ValueError(f"Weights must be positive integers, got {list(self.weights)}")
        if list(self.weights) != sorted(self.weights):
            raise ValueError(f"Weights must be sorted ascending, got {list(self.weights)}")

    @property
    def n(self) -> int:
        """Dimension of the ambient space."""
        return len(self.weights) - 1

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, i: int) -> int:
        return self.weights[i]

    def __iter__(self):
        return iter(self.weights)


@dataclass(frozen=True)
class DeltaProfile:
    """The gaps delta_j = d_j - a_{j+m} and their total."""
    deltas: Tuple[int, ...]
    total: int


@dataclass(frozen=True)
class VolumeData:
    """Exact self-intersection numbers of O_X(1) and of the (anti)canonical class."""
    o1_power: Fraction
    canonical_power: Fraction
    anticanonical_power: Fraction


@dataclass(frozen=True)
class CandidateFamily:
    """A normalized family X_{d_1,...,d_c} in P(a_0,...,a_n)."""
    weights: WeightSystem
    degrees: Tuple[int, ...]

    def __post_init__(self):
        if not self.degrees:
            raise ValueError("A family needs at least one degree")
        if any(d < 1 for d in self.degrees):
            raise ValueError(f"Degrees must be positive integers, got {list(self.degrees)}")
        if list(self.degrees) != sorted(self.degrees):
            raise ValueError(f"Degrees must be sorted ascending, got {list(self.degrees)}")
        if len(self.degrees) > self.weights.n:
            raise ValueError(
                f"Codimension {len(self.degrees)} exceeds ambient dimension {self.weights.n}"
            )

    @property
    def n(self) -> int:
        return self.weights.n

    @property
    def c(self) -> int:
        """Codimension."""
        return len(self.degrees)

    @property
    def m(self) -> int:
        """Dimension of X."""
        return self.n - self.c

    @property
    def alpha(self) -> int:
        """Amplitude: sum of degrees minus sum of weights."""
        return sum(self.degrees) - sum(self.weights)

    def key(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """Canonical (weights, degrees) key used for ordering and deduplication."""
        return (self.weights.weights, self.degrees)

    def sort_key(self) -> Tuple[int, Tuple[int, ...], Tuple[int, ...]]:
        return (self.c, self.degrees, self.weights.weights)

    def __str__(self) -> str:
        degs = ",".join(str(d) for d in self.degrees)
        ws = ",".join(str(a) for a in self.weights)
        return f"X_{{{degs}}} in P({ws})"


@dataclass(frozen=True)
class ReductionResult:
    """Outcome of linear-cone reduction.

    `steps` records each removed pair as (weight index, degree index) in the
    indexing of the family at the time of removal. When every degree cancels,
    `degenerate` is set, `reduced` is None and `remaining_weights` holds the
    ambient space X is isomorphic to.
    """
    reduced: Optional[CandidateFamily]
    steps: List[Tuple[int, int]] = field(default_factory=list)
    degenerate: bool = False
    remaining_weights: Tuple[int, ...] = ()

    @property
    def is_linear_cone(self) -> bool:
        return bool(self.steps)


def normalize_family(weights: Sequence[int], degrees: Sequence[int]) -> CandidateFamily:
    """
    Build the unique sorted representative of a family.

    Args:
        weights: Ambient weights in any order
        degrees: Degrees of the defining equations in any order

    Returns:
        CandidateFamily: Family with weights and degrees sorted ascending

    Raises:
        ValueError: On empty lists, nonpositive entries or codimension above n
    """
    weights = [int(a) for a in weights]
    degrees = [int(d) for d in degrees]
    if not weights:
        raise ValueError("Weight list must not be empty")
    if not degrees:
        raise ValueError("Degree list must not be empty")
    if any(a < 1 for a in weights) or any(d < 1 for d in degrees):
        raise ValueError(f"Entries must be positive: weights={weights}, degrees={degrees}")
    if len(degrees) > len(weights) - 1:
        raise ValueError(
            f"Codimension {len(degrees)} too large for {len(weights)} weights"
        )
    return CandidateFamily(WeightSystem(tuple(sorted(weights))), tuple(sorted(degrees)))


def amplitude_delta(family: CandidateFamily) -> Tuple[int, DeltaProfile]:
    """Amplitude and delta profile of a normalized family.

    No sign constraint is imposed on the deltas here.
    """
    m = family.m
    deltas = tuple(d - family.weights[j + m + 1] for j, d in enumerate(family.degrees))
    return family.alpha, DeltaProfile(deltas=deltas, total=sum(deltas))


def linear_cone_reduce(family: CandidateFamily) -> ReductionResult:
    """
    Repeatedly remove a pair d_j = a_i until no degree equals any weight.

    Args:
        family: Normalized family

    Returns:
        ReductionResult: Reduced family and removal log
    """
    weights = list(family.weights)
    degrees = list(family.degrees)
    steps: List[Tuple[int, int]] = []

    while degrees:
        pair = next(
            ((i, j) for j, d in enumerate(degrees) for i, a in enumerate(weights) if a == d),
            None
        )
        if pair is None:
            break
        i, j = pair
        steps.append((i, j))
        del weights[i]
        del degrees[j]

    if not degrees:
        return ReductionResult(reduced=None, steps=steps, degenerate=True,
                               remaining_weights=tuple(weights))
    if not steps:
        return ReductionResult(reduced=family)
    return ReductionResult(
        reduced=CandidateFamily(WeightSystem(tuple(weights)), tuple(degrees)),
        steps=steps
    )


def is_wellformed_space(weights: WeightSystem) -> bool:
    """True iff every n of the n+1 weights are coprime as a set."""
    ws = list(weights)
    for i in range(len(ws)):
        if reduce(gcd, ws[:i] + ws[i + 1:], 0) != 1:
            return False
    return True


def volume(family: CandidateFamily) -> VolumeData:
    """Exact O_X(1)^m, K_X^m and (-K_X)^m."""
    o1 = Fraction(prod(family.degrees), prod(family.weights))
    alpha, m = family.alpha, family.m
    return VolumeData(
        o1_power=o1,
        canonical_power=Fraction(alpha) ** m * o1,
        anticanonical_power=Fraction(-alpha) ** m * o1
    )


def cone_lift(family: CandidateFamily) -> CandidateFamily:
    """Prepend a weight-1 variable: dimension +1, amplitude -1."""
    return CandidateFamily(WeightSystem((1,) + family.weights.weights), family.degrees)
