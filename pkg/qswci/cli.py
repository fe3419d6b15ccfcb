"""
Command-line surface: check, enumerate, bounds, jk and diff.

Exit codes are 0 on success, 1 when a checked family fails or a diff is
nonempty, and 2 on usage errors.
"""
from typing import List, Optional
from fractions import Fraction
import argparse
import logging
import os
import sys

from dotenv import load_dotenv

from .bounds import BoundsQuery, NoEffectiveBound, codim_bound, dc_bound
from .config import QswciConfig
from .core_model import linear_cone_reduce
from .enumeration import (
    K3_DEFAULT_MAX_DEGREE,
    SearchParams,
    check_one,
    enumerate_families,
    jk_templates,
    k3_triples,
)
from .fixtures import diff_fixture, format_key, load_triples
from .records import FamilyRecord, read_jsonl_keys, write_jsonl
from .singularity import KltParams

logger = logging.getLogger(__name__)


def int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational P/Q, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='qswci',
        description='Classify and enumerate quasismooth weighted complete intersections'
    )
    parser.add_argument('--config', type=str, help='YAML configuration file')
    parser.add_argument('--verbose', '-v', action='store_true', help='Log at INFO level')
    parser.add_argument('--quiet', '-q', action='store_true', help='Hide progress bars')
    sub = parser.add_subparsers(dest='command', required=True)

    check = sub.add_parser('check', help='Classify a single family')
    check.add_argument('--weights', type=int_list, required=True)
    check.add_argument('--degrees', type=int_list, required=True)
    check.add_argument('--epsilon', type=fraction)
    check.add_argument('--mode', choices=['necessary', 'strict'])
    check.add_argument('--json', action='store_true', help='Print the JSONL record')

    enum = sub.add_parser('enumerate', help='Enumerate families under caps')
    enum.add_argument('--dim', type=int, required=True)
    enum.add_argument('--amplitude', type=int, required=True)
    enum.add_argument('--codim', type=int_list)
    enum.add_argument('--max-degree', type=int)
    enum.add_argument('--max-weight', type=int)
    enum.add_argument('--volume-lb', type=fraction)
    enum.add_argument('--epsilon', type=fraction)
    enum.add_argument('--jobs', type=int)
    enum.add_argument('--mode', choices=['necessary', 'strict'])
    enum.add_argument('--no-prune', action='store_true', help='Brute-force search without pruning')
    enum.add_argument('--ignore-codim-bound', action='store_true',
                      help='Search codimensions above m + alpha + 1 too')
    enum.add_argument('--out', type=str, default='-')

    bounds = sub.add_parser('bounds', help='Print the effective bounds')
    bounds.add_argument('--dim', type=int, required=True)
    bounds.add_argument('--amplitude', type=int, required=True)
    bounds.add_argument('--codim', type=int)
    bounds.add_argument('--volume-lb', type=fraction)
    bounds.add_argument('--epsilon', type=fraction)

    jk = sub.add_parser('jk', help='Instantiate the amplitude -1 template families')
    jk.add_argument('--k', type=int_list, required=True)
    jk.add_argument('--triples', type=str, default='auto')
    jk.add_argument('--epsilon', type=fraction)
    jk.add_argument('--mode', choices=['necessary', 'strict'])
    jk.add_argument('--jobs', type=int)
    jk.add_argument('--json', action='store_true')

    diff = sub.add_parser('diff', help='Compare a JSONL result file with a fixture')
    diff.add_argument('--ours', type=str, required=True)
    diff.add_argument('--fixture', type=str, required=True)
    return parser


def setup_logging(verbose: bool) -> None:
    level = os.getenv('QSWCI_LOG_LEVEL') or ('INFO' if verbose else 'WARNING')
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format='%(asctime)s - %(levelname)s - %(message)s'
    )


def load_config(path: Optional[str]) -> QswciConfig:
    path = path or os.getenv('QSWCI_CONFIG')
    config = QswciConfig.from_yaml(path) if path else QswciConfig.load_default()
    errors = config.validate()
    if errors:
        raise ValueError("Invalid configuration: " + "; ".join(errors))
    return config


def describe(record: FamilyRecord, epsilon: Fraction) -> List[str]:
    """Human-readable report of one record."""
    lines = [str(record.input_family)]
    if record.reduction_steps:
        steps = ", ".join(f"x_{i} with degree #{j}" for i, j in record.reduction_steps)
        lines.append(f"  linear cones removed: {steps}")
    if record.degenerate:
        remaining = linear_cone_reduce(record.input_family).remaining_weights
        lines.append(f"  degenerate: X is P({','.join(str(a) for a in remaining)})")
        return lines
    if record.reduction_steps:
        lines.append(f"  reduced to {record.family}")

    deltas = ",".join(str(d) for d in record.delta.deltas)
    lines.append(f"  amplitude: {record.alpha}  delta: {record.delta.total} ({deltas})")
    lines.append(f"  O(1)^m = {record.volumes.o1_power}  K^m = {record.volumes.canonical_power}")
    if record.wellformed:
        lines.append("  well-formed: yes")
    elif record.wellformed_witness is not None:
        lines.append(f"  well-formed: no, stratum E={record.wellformed_witness} lies on X")
    else:
        lines.append("  well-formed: no, ambient space is not well-formed")

    verdict = record.quasismooth
    label = f"  quasismooth ({verdict.mode.value})"
    if not verdict.passed:
        lines.append(f"{label}: fail at E={verdict.failing_subsets[0].subset}")
        return lines
    lines.append(f"{label}: pass")

    for s in record.singularities:
        lines.append(f"  P_{s.point_index}: {s.type_string()} discrepancy {s.discrepancy}"
                     + (" (reduced type)" if s.reduced else ""))
    status = record.klt_status.value
    if record.klt_witness is not None:
        status += f" at P_{record.klt_witness.point_index}"
    lines.append(f"  klt (epsilon={epsilon}): {status}")
    return lines


def cmd_check(args, config: QswciConfig) -> int:
    eps = args.epsilon if args.epsilon is not None else config.klt.value
    record = check_one(args.weights, args.degrees, eps=eps, mode=args.mode or config.search.mode)
    if args.json:
        print(record.to_json_line())
    else:
        print("\n".join(describe(record, eps)))
    return 0 if record.passed else 1


def cmd_enumerate(args, config: QswciConfig) -> int:
    codims = args.codim
    d_max = args.max_degree
    if d_max is None and args.amplitude == 0:
        wanted = codims or range(1, codim_bound(args.dim, 0) + 1)
        defaults = [config.search.max_degree_for(args.dim, c) for c in wanted]
        if not defaults or None in defaults:
            raise ValueError("--max-degree is required when the amplitude is 0")
        d_max = max(defaults)
        logger.info("Using default max degree %d", d_max)
    b = args.volume_lb
    if b is None and d_max is None:
        b = config.volume.lower_bound(args.dim, args.amplitude)

    params = SearchParams(
        m=args.dim,
        alpha=args.amplitude,
        c_range=codims,
        d_max=d_max,
        a_max=args.max_weight,
        jobs=args.jobs or config.search.jobs,
        mode=args.mode or config.search.mode,
        epsilon=args.epsilon if args.epsilon is not None else config.klt.value,
        b=b,
        prune=not args.no_prune,
        trust_codim_bound=config.search.trust_codim_bound and not args.ignore_codim_bound
    )
    show_progress = config.search.show_progress and not args.quiet
    records = enumerate_families(params, show_progress=show_progress)
    if args.out == '-':
        count = write_jsonl(records, sys.stdout)
    else:
        with open(args.out, 'w') as f:
            count = write_jsonl(records, f)
    logger.info("Wrote %d families", count)
    return 0


def cmd_bounds(args, config: QswciConfig) -> int:
    if args.amplitude == 0:
        print(f"no effective bound: {NoEffectiveBound(m=args.dim, alpha=0).reason}")
        return 0
    b = args.volume_lb
    if b is None:
        b = config.volume.lower_bound(args.dim, args.amplitude)
    if b is None:
        raise ValueError("--volume-lb is required here")
    query = BoundsQuery(m=args.dim, alpha=args.amplitude, b=b, c=args.codim,
                        epsilon=args.epsilon)
    result = dc_bound(query)
    print(f"codim_max = {result.codim_max}")
    print(f"codim = {result.codim}")
    print(f"N = {result.N}")
    print(f"delta_max = {result.delta_max}")
    print(f"an_strict_sup = {result.an_strict_sup}")
    print(f"dc_max = {result.dc_max}")
    return 0


def cmd_jk(args, config: QswciConfig) -> int:
    mode = args.mode or config.search.mode
    jobs = args.jobs or config.search.jobs
    if args.triples == 'auto':
        d_max = config.search.max_degree_for(2, 1) or K3_DEFAULT_MAX_DEGREE
        triples = k3_triples(d_max, jobs=jobs, mode=mode)
    else:
        triples = load_triples(args.triples)
    eps = args.epsilon if args.epsilon is not None else config.klt.value
    records = jk_templates(args.k, triples, mode=mode, klt=KltParams(eps))
    for record in records:
        if args.json:
            print(record.to_json_line())
        else:
            types = " ".join(s.type_string() for s in record.singularities) or "-"
            print(f"{record.provenance}: {record.subject} alpha={record.alpha} "
                  f"quasismooth={record.to_json_dict()['quasismooth']} "
                  f"klt={record.klt_status.value} singularities={types}")
    return 0


def cmd_diff(args, config: QswciConfig) -> int:
    with open(args.ours, 'r') as f:
        ours = list(read_jsonl_keys(f))
    report = diff_fixture(ours, args.fixture)
    for key in report.ours_only:
        print(f"ours-only: {format_key(key)}")
    for key in report.fixture_only:
        print(f"fixture-only: {format_key(key)}")
    for lineno, text in report.malformed:
        print(f"malformed: line {lineno}: {text}")
    if report.empty:
        print("no differences")
    return 0 if report.empty else 1


COMMANDS = {
    'check': cmd_check,
    'enumerate': cmd_enumerate,
    'bounds': cmd_bounds,
    'jk': cmd_jk,
    'diff': cmd_diff,
}


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()  # picks up QSWCI_CONFIG / QSWCI_LOG_LEVEL
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)
    try:
        config = load_config(args.config)
        return COMMANDS[args.command](args, config)
    except (ValueError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def run():
    sys.exit(main())
