"""
Fixture ingestion and set-wise diffing against enumeration output.

A fixture is a plain text file with one family per line written as
`a_0,a_1,...,a_n;d_1,...,d_c`. Blank lines and anything after `#` are
ignored. Malformed rows are reported with their line number and skipped.
"""
from typing import Iterable, List, Sequence, Tuple, Union
from dataclasses import dataclass, field
from pathlib import Path
import logging

from .core_model import normalize_family
from .records import FamilyKey, FamilyRecord

logger = logging.getLogger(__name__)


@dataclass
class FixtureData:
    """Parsed fixture: unique keys in file order plus the anomalies met."""
    keys: List[FamilyKey] = field(default_factory=list)
    malformed: List[Tuple[int, str]] = field(default_factory=list)
    duplicates: List[Tuple[int, FamilyKey]] = field(default_factory=list)


@dataclass
class DiffReport:
    """Set difference between our results and a fixture, canonically ordered."""
    ours_only: List[FamilyKey] = field(default_factory=list)
    fixture_only: List[FamilyKey] = field(default_factory=list)
    malformed: List[Tuple[int, str]] = field(default_factory=list)
    duplicates: List[Tuple[int, FamilyKey]] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not self.ours_only and not self.fixture_only


def format_key(key: FamilyKey) -> str:
    weights, degrees = key
    return ",".join(str(a) for a in weights) + ";" + ",".join(str(d) for d in degrees)


def canonical_order(key: FamilyKey):
    weights, degrees = key
    return (len(degrees), degrees, weights)


def _parse_ints(text: str) -> List[int]:
    return [int(part) for part in text.split(",")]


def parse_fixture_lines(lines: Iterable[str]) -> FixtureData:
    """
    Parse fixture rows.

    Args:
        lines: Raw lines, e.g. an open file

    Returns:
        FixtureData: Deduplicated keys with malformed rows and duplicates logged
    """
    data = FixtureData()
    seen = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            weights_text, degrees_text = line.split(";")
            family = normalize_family(_parse_ints(weights_text), _parse_ints(degrees_text))
        except ValueError as e:
            logger.warning("Fixture line %d is malformed (%s): %r", lineno, e, line)
            data.malformed.append((lineno, line))
            continue
        key = family.key()
        if key in seen:
            logger.warning("Fixture line %d duplicates %s", lineno, format_key(key))
            data.duplicates.append((lineno, key))
            continue
        seen.add(key)
        data.keys.append(key)
    return data


def load_fixture(path: Union[str, Path]) -> FixtureData:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Fixture file not found: {path}")
    with open(path, 'r') as f:
        return parse_fixture_lines(f)


def load_triples(path: Union[str, Path]) -> List[Tuple[int, int, int]]:
    """Read `b_1,b_2,b_3` rows (same comment rules as fixtures)."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Triples file not found: {path}")
    triples = []
    with open(path, 'r') as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                values = _parse_ints(line)
            except ValueError:
                values = []
            if len(values) != 3 or any(b < 1 for b in values):
                raise ValueError(f"{path}:{lineno}: expected three positive integers, got {line!r}")
            triples.append(tuple(values))
    return triples


def diff_fixture(results: Iterable[Union[FamilyRecord, FamilyKey]],
                 fixture: Union[str, Path, Sequence[str]]) -> DiffReport:
    """
    Compare result families with a fixture on (weights, degrees).

    Args:
        results: FamilyRecords or (weights, degrees) keys
        fixture: Path to a fixture file, or its lines

    Returns:
        DiffReport: Families only in our results and only in the fixture
    """
    if isinstance(fixture, (str, Path)):
        data = load_fixture(fixture)
    else:
        data = parse_fixture_lines(fixture)

    ours = set()
    for item in results:
        ours.add(item.key() if isinstance(item, FamilyRecord) else
                 (tuple(item[0]), tuple(item[1])))
    theirs = set(data.keys)

    report = DiffReport(
        ours_only=sorted(ours - theirs, key=canonical_order),
        fixture_only=sorted(theirs - ours, key=canonical_order),
        malformed=data.malformed,
        duplicates=data.duplicates
    )
    logger.info("Diff: %d ours-only, %d fixture-only", len(report.ours_only),
                len(report.fixture_only))
    return report
