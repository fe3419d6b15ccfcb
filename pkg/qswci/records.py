"""
Classified family records and their JSONL form.
"""
from typing import Any, Dict, Iterable, Iterator, List, Optional, TextIO, Tuple
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
import json

from .core_model import CandidateFamily, DeltaProfile, VolumeData
from .monomial_engine import VariableSubset
from .quasismooth import QsVerdict
from .singularity import CyclicQuotientSingularity

FamilyKey = Tuple[Tuple[int, ...], Tuple[int, ...]]


class KltStatus(str, Enum):
    NO_WITNESS = "no-witness"
    WITNESS = "witness"
    UNANALYZED = "unanalyzed"


def format_fraction(value: Fraction) -> str:
    """Always render as p/q, including integers."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


@dataclass
class FamilyRecord:
    """A fully classified family, the unit of enumeration output."""
    input_family: CandidateFamily
    family: Optional[CandidateFamily]
    alpha: int
    reduction_steps: List[Tuple[int, int]] = field(default_factory=list)
    degenerate: bool = False
    delta: Optional[DeltaProfile] = None
    volumes: Optional[VolumeData] = None
    wellformed: bool = False
    wellformed_witness: Optional[VariableSubset] = None
    quasismooth: Optional[QsVerdict] = None
    singularities: List[CyclicQuotientSingularity] = field(default_factory=list)
    klt_status: KltStatus = KltStatus.UNANALYZED
    klt_witness: Optional[CyclicQuotientSingularity] = None
    provenance: str = "check"

    @property
    def passed(self) -> bool:
        return (not self.degenerate and self.wellformed
                and self.quasismooth is not None and self.quasismooth.passed)

    @property
    def subject(self) -> CandidateFamily:
        """The family the classification refers to."""
        return self.family if self.family is not None else self.input_family

    def key(self) -> FamilyKey:
        return self.subject.key()

    def sort_key(self):
        return self.subject.sort_key()

    def to_json_dict(self) -> Dict[str, Any]:
        fam = self.subject
        if self.quasismooth is None:
            qs, mode = "degenerate", None
        else:
            qs, mode = self.quasismooth.verdict, self.quasismooth.mode.value
        return {
            "weights": list(fam.weights),
            "degrees": list(fam.degrees),
            "dim": fam.m,
            "codim": fam.c,
            "amplitude": self.alpha,
            "delta": self.delta.total if self.delta is not None else None,
            "o1_volume": format_fraction(self.volumes.o1_power) if self.volumes else None,
            "k_volume": format_fraction(self.volumes.canonical_power) if self.volumes else None,
            "wellformed": self.wellformed,
            "quasismooth": qs,
            "qs_mode": mode,
            "singularities": [
                {
                    "point": s.point_index,
                    "r": s.order,
                    "type": list(s.local_weights),
                    "discrepancy": format_fraction(s.discrepancy),
                }
                for s in self.singularities
            ],
            "klt_status": self.klt_status.value,
        }

    def to_json_line(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))


def write_jsonl(records: Iterable[FamilyRecord], stream: TextIO) -> int:
    """Write one record per line; returns the number written."""
    count = 0
    for record in records:
        stream.write(record.to_json_line() + "\n")
        count += 1
    return count


def read_jsonl_keys(stream: TextIO) -> Iterator[FamilyKey]:
    """(weights, degrees) keys of a JSONL record file, skipping blank lines."""
    for line in stream:
        line = line.strip()
        if not line:
            continue
        row = json.loads(line)
        yield tuple(row["weights"]), tuple(row["degrees"])
