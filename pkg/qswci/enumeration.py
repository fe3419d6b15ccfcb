"""
Bounded enumeration of quasismooth weighted complete intersections.

The search fans out over disjoint shards, one per (codimension, largest
degree). Within a shard the degree tuples ending in d_c are listed and, for
each, weights are chosen from a_n downwards under the fixed sum
sum(a) = sum(d) - alpha. Shards share nothing; their records are merged and
sorted canonically so the output never depends on the number of workers.
"""
from typing import Iterator, List, Optional, Sequence, Tuple
from dataclasses import dataclass
from concurrent.futures import ProcessPoolExecutor, as_completed
from fractions import Fraction
import logging

from tqdm import tqdm

from .bounds import BoundsQuery, NoEffectiveBound, codim_bound, dc_bound
from .core_model import (
    CandidateFamily,
    WeightSystem,
    amplitude_delta,
    is_wellformed_space,
    linear_cone_reduce,
    normalize_family,
    volume,
)
from .quasismooth import QsMode, check_quasismooth, check_wellformed_family
from .records import FamilyRecord, KltStatus
from .singularity import (
    CyclicQuotientSingularity,
    KltParams,
    NoLocalStructure,
    coordinate_singularities,
    epsilon_klt_witness,
    singular_strata_meeting,
)

logger = logging.getLogger(__name__)

K3_DEFAULT_MAX_DEGREE = 100


@dataclass
class SearchParams:
    """Caps and switches for one enumeration run.

    d_max is mandatory when alpha = 0. Otherwise it may be left out and is
    derived per codimension from the volume lower bound b.
    """
    m: int
    alpha: int
    c_range: Optional[List[int]] = None
    d_max: Optional[int] = None
    a_max: Optional[int] = None
    jobs: int = 1
    mode: QsMode = QsMode.STRICT
    epsilon: Optional[Fraction] = None
    b: Optional[Fraction] = None
    prune: bool = True
    trust_codim_bound: bool = True

    def __post_init__(self):
        self.mode = QsMode(self.mode)
        if self.m < 1:
            raise ValueError(f"Dimension must be positive, got {self.m}")
        if self.c_range is None:
            self.c_range = list(range(1, codim_bound(self.m, self.alpha) + 1))
        self.c_range = sorted(set(self.c_range))
        if any(c < 1 for c in self.c_range):
            raise ValueError(f"Codimensions must be positive, got {self.c_range}")
        if self.jobs < 1:
            raise ValueError(f"jobs must be at least 1, got {self.jobs}")
        if self.a_max is not None and self.a_max < 1:
            raise ValueError(f"a_max must be positive, got {self.a_max}")
        if self.epsilon is not None:
            self.epsilon = Fraction(self.epsilon)
        if self.b is not None:
            self.b = Fraction(self.b)
        if self.d_max is not None:
            if self.d_max < 1:
                raise ValueError(f"d_max must be positive, got {self.d_max}")
        elif self.alpha == 0:
            raise ValueError("d_max is required when alpha = 0: no effective degree bound exists")
        elif self.b is None:
            raise ValueError(
                f"Either d_max or a volume lower bound b is needed for alpha={self.alpha}"
            )

    def degree_cap(self, c: int) -> int:
        """Largest d_c searched in codimension c."""
        if self.d_max is not None:
            return self.d_max
        result = dc_bound(BoundsQuery(m=self.m, alpha=self.alpha, b=self.b, c=c,
                                      epsilon=self.epsilon))
        if isinstance(result, NoEffectiveBound):
            raise ValueError(result.reason)
        return result.degree_cap()

    @property
    def klt(self) -> KltParams:
        return KltParams(self.epsilon if self.epsilon is not None else Fraction(1))


@dataclass(frozen=True)
class Shard:
    """All candidates with codimension c and largest degree d_c."""
    m: int
    alpha: int
    c: int
    d_c: int
    a_max: Optional[int]
    mode: QsMode
    epsilon: Fraction
    prune: bool

    @property
    def shard_id(self) -> str:
        return f"c{self.c}-d{self.d_c}"


def classify(family: CandidateFamily, mode: QsMode = QsMode.STRICT,
             klt: Optional[KltParams] = None, provenance: str = "check") -> FamilyRecord:
    """
    Reduce linear cones and run every check on a normalized family.

    Args:
        family: Normalized input family
        mode: Quasismoothness test mode
        klt: epsilon for the witness search (defaults to 1)
        provenance: Label stored on the record

    Returns:
        FamilyRecord: The classified family; a full reduction is reported
        through the `degenerate` flag
    """
    mode = QsMode(mode)
    klt = klt or KltParams()
    reduction = linear_cone_reduce(family)
    if reduction.degenerate:
        logger.debug("%s reduces to P(%s)", family,
                     ",".join(str(a) for a in reduction.remaining_weights))
        return FamilyRecord(
            input_family=family,
            family=None,
            alpha=family.alpha,
            reduction_steps=reduction.steps,
            degenerate=True,
            provenance=provenance
        )

    reduced = reduction.reduced
    alpha, profile = amplitude_delta(reduced)
    wellformed, witness = check_wellformed_family(reduced)
    verdict = check_quasismooth(reduced, mode)
    record = FamilyRecord(
        input_family=family,
        family=reduced,
        alpha=alpha,
        reduction_steps=reduction.steps,
        delta=profile,
        volumes=volume(reduced),
        wellformed=wellformed,
        wellformed_witness=witness,
        quasismooth=verdict,
        provenance=provenance
    )
    if not verdict.passed:
        return record

    points = coordinate_singularities(reduced)
    record.singularities = [p for p in points if isinstance(p, CyclicQuotientSingularity)]
    record.klt_witness = epsilon_klt_witness(reduced, klt)
    if record.klt_witness is not None:
        record.klt_status = KltStatus.WITNESS
    elif (any(isinstance(p, NoLocalStructure) for p in points)
          or any(p.reduced for p in record.singularities)
          or singular_strata_meeting(reduced)):
        record.klt_status = KltStatus.UNANALYZED
    else:
        record.klt_status = KltStatus.NO_WITNESS
    return record


def check_one(weights: Sequence[int], degrees: Sequence[int],
              eps: Optional[Fraction] = None,
              mode: QsMode = QsMode.STRICT) -> FamilyRecord:
    """Normalize raw input and classify it."""
    family = normalize_family(weights, degrees)
    klt = KltParams(Fraction(eps)) if eps is not None else KltParams()
    return classify(family, mode, klt)


def _degree_tuples(c: int, d_c: int) -> Iterator[Tuple[int, ...]]:
    """Nondecreasing degree tuples of length c ending in d_c, entries >= 2."""
    def extend(prefix: List[int], length: int) -> Iterator[Tuple[int, ...]]:
        if length == 0:
            yield tuple(prefix) + (d_c,)
            return
        low = prefix[-1] if prefix else 2
        for d in range(low, d_c + 1):
            yield from extend(prefix + [d], length - 1)
    yield from extend([], c - 1)


def _weight_tuples(n: int, total: int, caps: Sequence[Optional[int]],
                   allowed) -> Iterator[Tuple[int, ...]]:
    """
    Sorted weight tuples (a_0..a_n) with the given sum, chosen from a_n down.

    caps[k] bounds a_k from above (None for no own cap) and allowed(a) vets
    each value before it is placed.
    """
    chosen = [0] * (n + 1)

    def place(pos: int, upper: int, remaining: int) -> Iterator[Tuple[int, ...]]:
        if pos == 0:
            if 1 <= remaining <= upper and (caps[0] is None or remaining <= caps[0]) \
                    and allowed(remaining):
                chosen[0] = remaining
                yield tuple(chosen)
            return
        top = min(upper, remaining - pos)
        if caps[pos] is not None:
            top = min(top, caps[pos])
        # the pos+1 weights left must fit under the one placed here
        low = -(-remaining // (pos + 1))
        for a in range(top, low - 1, -1):
            if not allowed(a):
                continue
            chosen[pos] = a
            yield from place(pos - 1, a, remaining - a)

    if total >= n + 1:
        yield from place(n, total, total)


def shard_candidates(shard: Shard) -> Iterator[CandidateFamily]:
    """Candidate families of a shard, before any quasismoothness test."""
    n = shard.m + shard.c
    for degrees in _degree_tuples(shard.c, shard.d_c):
        total = sum(degrees) - shard.alpha
        if total < n + 1:
            continue
        caps: List[Optional[int]] = [None] * (n + 1)
        caps[n] = shard.a_max
        if shard.prune:
            degree_set = set(degrees)
            d1 = degrees[0]
            for j, d in enumerate(degrees):
                k = j + shard.m + 1
                caps[k] = d - 1 if caps[k] is None else min(caps[k], d - 1)

            def allowed(a: int, degree_set=degree_set, d1=d1, degrees=degrees) -> bool:
                if a in degree_set:
                    return False
                return a <= d1 or any(d % a == 0 for d in degrees)
        else:
            def allowed(a: int) -> bool:
                return True

        for weights in _weight_tuples(n, total, caps, allowed):
            yield CandidateFamily(WeightSystem(weights), degrees)


def _run_shard(shard: Shard) -> List[FamilyRecord]:
    klt = KltParams(shard.epsilon)
    found = []
    for family in shard_candidates(shard):
        if not is_wellformed_space(family.weights):
            continue
        if not shard.prune and linear_cone_reduce(family).is_linear_cone:
            continue
        wellformed, _ = check_wellformed_family(family)
        if not wellformed:
            continue
        record = classify(family, shard.mode, klt, provenance=shard.shard_id)
        if record.passed:
            found.append(record)
    return found


class FamilySearch:
    """Sharded, optionally parallel, enumeration of one SearchParams."""

    def __init__(self, params: SearchParams, show_progress: bool = False):
        self.params = params
        self.show_progress = show_progress

    def searchable_codims(self) -> List[int]:
        bound = codim_bound(self.params.m, self.params.alpha)
        codims = []
        for c in self.params.c_range:
            if c > bound and self.params.trust_codim_bound:
                logger.warning(
                    "Codimension %d exceeds the bound %d for m=%d, alpha=%d; skipped",
                    c, bound, self.params.m, self.params.alpha
                )
                continue
            codims.append(c)
        return codims

    def shards(self) -> List[Shard]:
        p = self.params
        eps = p.klt.epsilon
        shards = []
        for c in self.searchable_codims():
            for d_c in range(2, p.degree_cap(c) + 1):
                shards.append(Shard(m=p.m, alpha=p.alpha, c=c, d_c=d_c, a_max=p.a_max,
                                    mode=p.mode, epsilon=eps, prune=p.prune))
        return shards

    def run(self) -> List[FamilyRecord]:
        """
        Enumerate every shard and merge.

        Returns:
            List[FamilyRecord]: Deduplicated records in canonical order
        """
        shards = self.shards()
        logger.info("Enumerating m=%d alpha=%d over %d shards with %d job(s)",
                    self.params.m, self.params.alpha, len(shards), self.params.jobs)
        merged = {}
        progress = tqdm(total=len(shards), desc="shards", disable=not self.show_progress)
        try:
            if self.params.jobs == 1:
                for shard in shards:
                    self._merge(merged, _run_shard(shard))
                    progress.update(1)
            else:
                with ProcessPoolExecutor(max_workers=self.params.jobs) as executor:
                    futures = [executor.submit(_run_shard, shard) for shard in shards]
                    for future in as_completed(futures):
                        self._merge(merged, future.result())
                        progress.update(1)
        finally:
            progress.close()

        records = sorted(merged.values(), key=lambda r: r.sort_key())
        for c in self.params.c_range:
            logger.info("Codimension %d: %d families", c,
                        sum(1 for r in records if r.subject.c == c))
        return records

    @staticmethod
    def _merge(merged, records: List[FamilyRecord]) -> None:
        for record in records:
            if record.key() in merged:
                logger.debug("Duplicate %s dropped", record.subject)
                continue
            merged[record.key()] = record


def enumerate_families(params: SearchParams, show_progress: bool = False) -> Iterator[FamilyRecord]:
    """Stream the canonically ordered records of a search."""
    yield from FamilySearch(params, show_progress).run()


def k3_triples(d_max: int = K3_DEFAULT_MAX_DEGREE, jobs: int = 1,
               mode: QsMode = QsMode.STRICT) -> List[Tuple[int, int, int]]:
    """Triples (a_0, a_1, a_2) of K3 hypersurfaces with a_3 = a_0 + a_1 + a_2."""
    params = SearchParams(m=2, alpha=0, c_range=[1], d_max=d_max, jobs=jobs, mode=mode)
    triples = []
    for record in enumerate_families(params):
        a = record.subject.weights
        if a[3] == a[0] + a[1] + a[2]:
            triples.append((a[0], a[1], a[2]))
    logger.info("%d K3 weight systems with a_3 = a_0 + a_1 + a_2", len(triples))
    return triples


def template_family(k: int, triple: Sequence[int]) -> CandidateFamily:
    """X_{2ks} in P(2, k*b_1, k*b_2, k*b_3, k*s - 1) with s = b_1 + b_2 + b_3."""
    if k < 1 or k % 2 == 0:
        raise ValueError(f"k must be an odd positive integer, got {k}")
    if len(triple) != 3 or any(b < 1 for b in triple):
        raise ValueError(f"Expected three positive integers, got {list(triple)}")
    s = sum(triple)
    return normalize_family([2] + [k * b for b in triple] + [k * s - 1], [2 * k * s])


def jk_templates(k_values: Sequence[int],
                 triples: Optional[Sequence[Sequence[int]]] = None,
                 mode: QsMode = QsMode.STRICT,
                 klt: Optional[KltParams] = None,
                 jobs: int = 1) -> List[FamilyRecord]:
    """
    Instantiate and classify the amplitude -1 template family for each triple and k.

    Args:
        k_values: Odd positive integers
        triples: (b_1, b_2, b_3) triples; derived from the K3 list when None
        mode: Quasismoothness test mode
        klt: epsilon for the witness search
        jobs: Workers for the K3 enumeration behind auto-derived triples

    Returns:
        List[FamilyRecord]: One record per (triple, k), triples outer

    Raises:
        ValueError: If some k is even or nonpositive
    """
    bad = [k for k in k_values if k < 1 or k % 2 == 0]
    if bad:
        raise ValueError(f"k values must be odd positive integers, got {bad}")
    if triples is None:
        triples = k3_triples(jobs=jobs, mode=mode)

    records = []
    for triple in triples:
        for k in k_values:
            family = template_family(k, triple)
            if family.alpha != -1:
                raise ValueError(f"Template {family} has amplitude {family.alpha}, expected -1")
            records.append(classify(family, mode, klt,
                                    provenance=f"k{k}-b{','.join(str(b) for b in triple)}"))
    return records
