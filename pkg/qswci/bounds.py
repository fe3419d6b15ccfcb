"""
Effective bounds for normalized quasismooth weighted complete intersections.

Covers the codimension bound, the strict upper bound for the largest
weight a_n in terms of delta, the volume-ratio bound N on delta and the
resulting cap on the largest degree d_c. All arithmetic is exact.
"""
from typing import List, Optional, Union
from dataclasses import dataclass
from fractions import Fraction
import logging

from .core_model import CandidateFamily, amplitude_delta

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoundsQuery:
    """Parameters for the degree cap.

    epsilon is forced to 1 when alpha > 0 or alpha = -1, and is required
    for alpha <= -2.
    """
    m: int
    alpha: int
    b: Fraction
    c: Optional[int] = None
    epsilon: Optional[Fraction] = None

    def __post_init__(self):
        object.__setattr__(self, 'b', Fraction(self.b))
        if self.b <= 0:
            raise ValueError(f"Volume lower bound must be positive, got {self.b}")
        if self.m < 2:
            raise ValueError(f"The degree cap needs dimension m >= 2, got {self.m}")
        if self.c is not None and self.c < 1:
            raise ValueError(f"Codimension must be positive, got {self.c}")
        if self.alpha > 0 or self.alpha == -1:
            object.__setattr__(self, 'epsilon', Fraction(1))
        elif self.alpha <= -2:
            if self.epsilon is None:
                raise ValueError("epsilon is required when alpha <= -2")
            object.__setattr__(self, 'epsilon', Fraction(self.epsilon))
            if not 0 < self.epsilon <= 1:
                raise ValueError(f"epsilon must lie in (0, 1], got {self.epsilon}")


@dataclass(frozen=True)
class BoundsResult:
    """Exact bounds for one (m, alpha, c, b, epsilon)."""
    codim_max: int
    codim: int
    N: Fraction
    delta_max: Fraction
    an_strict_sup: Fraction
    dc_max: Fraction

    def degree_cap(self) -> int:
        """Largest integer d_c allowed by dc_max."""
        return self.dc_max.numerator // self.dc_max.denominator


@dataclass(frozen=True)
class NoEffectiveBound:
    """Calabi-Yau amplitude: K_X^m = 0 and no volume-based cap exists."""
    m: int
    alpha: int
    reason: str = "amplitude 0 has no effective degree bound; supply --max-degree"


def codim_bound(m: int, alpha: int) -> int:
    """Largest possible codimension: m + alpha + 1 if alpha >= 0, else m."""
    if m < 1:
        raise ValueError(f"Dimension must be positive, got {m}")
    return m + alpha + 1 if alpha >= 0 else m


def an_bound(m: int, delta: int, alpha: int, eps: Optional[Fraction] = None,
             an_hint: Optional[int] = None) -> Fraction:
    """
    Strict upper bound for a_n.

    Args:
        m: Dimension
        delta: Total delta of the family
        alpha: Amplitude
        eps: epsilon for the Fano branch
        an_hint: The actual a_n, needed to validate the Fano-branch hypothesis

    Returns:
        Fraction: (m+1)*delta when alpha >= -1, (m+eps)/eps*delta in the Fano branch

    Raises:
        ValueError: If neither branch's hypotheses are met
    """
    if alpha >= -1:
        return Fraction((m + 1) * delta)
    if eps is not None and an_hint is not None:
        eps = Fraction(eps)
        if an_hint > (m + eps) / m * Fraction(-alpha) / eps:
            return (m + eps) / eps * delta
    raise ValueError(
        f"No a_n bound applies: alpha={alpha}, eps={eps}, an_hint={an_hint}"
    )


def check_an_bound(family: CandidateFamily, eps: Optional[Fraction] = None) -> Optional[bool]:
    """Post-hoc a_n check for a family; None when no branch applies.

    Library API for auditing results. The search itself does not call it;
    it prunes with the degree rules and the d_c cap instead.
    """
    alpha, profile = amplitude_delta(family)
    an = family.weights[family.n]
    try:
        return an < an_bound(family.m, profile.total, alpha, eps, an_hint=an)
    except ValueError:
        return None


def _bounds_for(q: BoundsQuery, c: int) -> BoundsResult:
    m, alpha, b, eps = q.m, q.alpha, q.b, q.epsilon
    if alpha > 0:
        power = Fraction(c + alpha + m + 1, c) ** c
        N = Fraction(alpha) ** m * power / b
        dc_max = Fraction(m + 2) / b * ((m + 1) * Fraction(alpha) ** m * power + b * alpha)
    else:
        power = Fraction(c + m + 1, c) ** c
        N = Fraction(-alpha) ** m * power / b
        dc_max = (m + 2 * eps) / (b * eps) * ((m + 1) * Fraction(-alpha) ** m * power + b * alpha)
    delta_max = (m + 1) * N + alpha
    return BoundsResult(
        codim_max=codim_bound(m, alpha),
        codim=c,
        N=N,
        delta_max=delta_max,
        an_strict_sup=(m + eps) / eps * delta_max,
        dc_max=dc_max
    )


def dc_bound(q: BoundsQuery) -> Union[BoundsResult, NoEffectiveBound]:
    """
    Cap on the largest degree d_c from a volume lower bound b.

    When q.c is None the cap is maximized over every codimension allowed
    by codim_bound.
    """
    if q.alpha == 0:
        return NoEffectiveBound(m=q.m, alpha=q.alpha)
    if q.c is not None:
        return _bounds_for(q, q.c)
    results: List[BoundsResult] = [
        _bounds_for(q, c) for c in range(1, codim_bound(q.m, q.alpha) + 1)
    ]
    best = max(results, key=lambda r: r.dc_max)
    logger.debug("Largest degree cap %s attained at codimension %d", best.dc_max, best.codim)
    return best
