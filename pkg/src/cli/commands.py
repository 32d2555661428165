"""
Command-line surface for the union-closed families toolkit.

Exit status: 0 on success (and when every audited claim holds), 1 when a
counterexample, failed check or refuted construction is found, 2 on usage,
parse, configuration or precondition errors. Results go to stdout;
diagnostics, logging and progress bars go to stderr.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from src import __version__
from src.audit.auditor import audit_all
from src.audit.report import FORMATS, render_report, summary_frame
from src.audit.results import ClaimId
from src.config import AuditSettings
from src.data.loader import (
    FamilyFileLoader,
    parse_members,
    render_family,
    render_sequence,
)
from src.errors import FranklError
from src.family.basis import basis, decompose
from src.family.core import (
    Family,
    check_conjecture,
    complement_family,
    format_mask,
    is_union_closed,
    union_closure,
)
from src.family.predicates import (
    complement_shape,
    is_quasiminimal,
    is_vincolated,
    is_vincolated_to,
    minimal_elements,
)
from src.search.enumerator import brute_force_count, count_union_closed, enumerate_union_closed
from src.search.sampler import sample_family, sample_union_closed
from src.sequences.construct import build_ideal_sequence, build_union_closed_sequence
from src.sequences.deletion import validate_sequence
from src.sequences.optimal import RefutationReport, build_optimal_sequence

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FOUND = 1
EXIT_USAGE = 2

STRATEGY_ALIASES = {"greedy": "greedy-basis", "greedy-basis": "greedy-basis", "by-size": "by-size"}

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


class Session:
    """What every subcommand needs besides its own arguments."""

    def __init__(self, args: argparse.Namespace, parser: argparse.ArgumentParser, settings: AuditSettings):
        self.args = args
        self.parser = parser
        self.settings = settings
        self.loader = FamilyFileLoader(".", strip_empty=args.strip_empty)

    def family(self) -> Family:
        return self.loader.load_family(self.args.file)

    def emit(self, text: str, out: Optional[str] = None) -> None:
        if out:
            Path(out).write_text(text, encoding="utf-8")
            logger.info("wrote %s", out)
        else:
            sys.stdout.write(text)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_check(s: Session) -> int:
    family = s.family()
    verdict = check_conjecture(family)
    closed = bool(is_union_closed(family))
    abundant = ", ".join(str(i) for i in verdict.abundant_elements) or "none"
    lines = [
        f"family: {family}",
        f"union-closed: {_yes(closed)}",
        f"|F| = {verdict.family_size}   |D| = {verdict.complement_size}",
        "frequencies: " + " ".join(str(f) for f in verdict.frequencies),
        f"abundant elements: {abundant}",
        f"counting identity: {'holds' if verdict.identity_checked else 'FAILS'}",
    ]
    for link in verdict.chain:
        lines.append(
            f"minimal j={link.element}: 2|D^j| = {2 * link.complement_frequency}"
            f" <= |D|+1 = {verdict.complement_size + 1}: {_yes(link.bound_holds)}"
            f"   abundant: {_yes(link.abundant)}"
        )
    lines.append(f"conjecture: {'holds' if verdict.holds else 'FAILS'}")
    s.emit("\n".join(lines) + "\n")
    if closed and not (verdict.holds and verdict.identity_checked):
        return EXIT_FOUND
    return EXIT_OK


def cmd_basis(s: Session) -> int:
    s.emit(render_family(basis(s.family())))
    return EXIT_OK


def cmd_decompose(s: Session) -> int:
    family = s.family()
    target = parse_members(s.args.set, family.universe_size)
    parts = decompose(family, target)
    s.emit(render_family(Family.from_masks(family.universe_size, parts.parts)))
    return EXIT_OK


def cmd_closure(s: Session) -> int:
    s.emit(render_family(union_closure(s.family())))
    return EXIT_OK


def cmd_complement(s: Session) -> int:
    s.emit(render_family(complement_family(s.family())))
    return EXIT_OK


def cmd_seq(s: Session) -> int:
    args = s.args
    if args.kind in ("ideal", "optimal") and args.element is None:
        s.parser.error(f"--kind {args.kind} requires --element")
    family = s.family()
    if args.kind == "uc":
        sequence = build_union_closed_sequence(family, STRATEGY_ALIASES[args.strategy])
    elif args.kind == "ideal":
        sequence = build_ideal_sequence(family, args.element)
    else:
        outcome = build_optimal_sequence(family, args.element)
        if isinstance(outcome, RefutationReport):
            print(f"construction refuted: {outcome.reason}", file=sys.stderr)
            return EXIT_FOUND
        sequence = outcome
    s.emit(render_sequence(sequence), args.out)
    return EXIT_OK


def cmd_validate_seq(s: Session) -> int:
    sequence = s.loader.load_sequence(s.args.file)
    report = validate_sequence(sequence)
    lines = [f"kind: {sequence.kind.label}", f"target: {sequence.target}"]
    for step in report.steps:
        note = ""
        if not step.union_closed:
            x, y = step.witness
            note = f"   missing {format_mask(x | y)} = {format_mask(x)} | {format_mask(y)}"
        lines.append(f"X_{step.index} = {format_mask(step.removed)}   union-closed: {_yes(step.union_closed)}{note}")
    lines.extend(f"violation: {reason}" for reason in report.reasons)
    lines.append(f"valid: {_yes(report.valid)}")
    s.emit("\n".join(lines) + "\n")
    return EXIT_OK if report.valid else EXIT_FOUND


def _pred_vincolated(s: Session, family: Family) -> int:
    x = parse_members(s.args.set, family.universe_size)
    result = is_vincolated(family, x)
    lines = [f"vincolated: {_yes(result.vincolated)}"]
    if result.witness:
        w = result.witness
        lines.append(f"witness: Y = {format_mask(w.y)}, X | Y = {format_mask(w.result)}")
    s.emit("\n".join(lines) + "\n")
    return EXIT_OK


def _pred_vincolated_to(s: Session, family: Family) -> int:
    n = family.universe_size
    x = parse_members(s.args.set, n)
    y = parse_members(s.args.to, n)
    s.emit(f"vincolated-to: {_yes(is_vincolated_to(family, x, y))}\n")
    return EXIT_OK


def _pred_minimal(s: Session, family: Family) -> int:
    complement = complement_family(family)
    counts = complement.frequencies()
    lines = [f"|D^{j}| = {int(counts[j - 1])}" for j in range(1, family.universe_size + 1)]
    lines.append("minimal elements: " + ", ".join(str(j) for j in minimal_elements(complement)))
    s.emit("\n".join(lines) + "\n")
    return EXIT_OK


def _pred_quasiminimal(s: Session, family: Family) -> int:
    n = family.universe_size
    y1 = parse_members(s.args.y1, n)
    y2 = parse_members(s.args.y2, n)
    result = is_quasiminimal(family, s.args.element, y1, y2)
    lines = [f"quasiminimal: {_yes(result.holds)}"]
    if result.holds:
        lines.append("certificate:")
        lines.append(render_sequence(result.certificate.sequence).rstrip("\n"))
    else:
        lines.append(f"failed clause: {result.failed_clause} ({result.reason})")
    s.emit("\n".join(lines) + "\n")
    return EXIT_OK


def _pred_shape(s: Session, family: Family) -> int:
    shape = complement_shape(family)
    s.emit(f"|D| = {shape.size}   shape: {shape.kind}   expected: {_yes(shape.expected)}\n")
    return EXIT_OK if shape.expected else EXIT_FOUND


PREDICATES: Dict[str, Callable[[Session, Family], int]] = {
    "vincolated": _pred_vincolated,
    "vincolated-to": _pred_vincolated_to,
    "minimal": _pred_minimal,
    "quasiminimal": _pred_quasiminimal,
    "shape": _pred_shape,
}


def cmd_pred(s: Session) -> int:
    return PREDICATES[s.args.predicate](s, s.family())


def cmd_enumerate(s: Session) -> int:
    args = s.args
    long_run = args.long_run or s.settings.long_run
    if args.oracle:
        s.emit(f"{brute_force_count(args.n)}\n")
    elif args.count_only:
        s.emit(f"{count_union_closed(args.n, long_run=long_run)}\n")
    else:
        jobs = args.jobs or s.settings.jobs
        for family in enumerate_union_closed(args.n, jobs=jobs, long_run=long_run):
            s.emit(render_family(family))
    return EXIT_OK


def cmd_sample(s: Session) -> int:
    args = s.args
    if args.arbitrary:
        family = sample_family(args.n, args.sets, args.seed)
    else:
        family = sample_union_closed(args.n, args.sets, args.seed)
    s.emit(render_family(family))
    return EXIT_OK


def _parse_claims(text: Optional[str], parser: argparse.ArgumentParser) -> Optional[List[ClaimId]]:
    if not text:
        return None
    try:
        return [ClaimId.parse(token) for token in text.split(",") if token.strip()]
    except ValueError as exc:
        parser.error(str(exc))


def cmd_audit(s: Session) -> int:
    args = s.args
    settings = s.settings.override(
        jobs=args.jobs,
        candidate_budget=args.budget,
        long_run=True if args.long_run else None,
        random_families=args.random_families,
        seed=args.seed,
        progress=False if args.no_progress else None,
    )
    claims = _parse_claims(args.claims, s.parser)
    report = audit_all(args.n, claims, settings=settings)
    s.emit(render_report(report, args.format), args.out)
    if args.csv:
        summary_frame(report).to_csv(args.csv, index=False)
        logger.info("wrote %s", args.csv)
    return EXIT_OK if report.all_hold else EXIT_FOUND


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frankl_audit",
        description="Union-closed families: constructions, predicates and a claim auditor.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    parser.add_argument("--strip-empty", action="store_true", help="drop {} from input files with a warning")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in (
        ("check", "conjecture verdict and counting identities"),
        ("basis", "basis B(F)"),
        ("closure", "union closure of F"),
        ("complement", "D = A - F"),
        ("validate-seq", "validate a sequence file step by step"),
    ):
        sub.add_parser(name, help=helptext).add_argument("file")

    p = sub.add_parser("decompose", help="write a member as a union of basis members")
    p.add_argument("file")
    p.add_argument("--set", required=True, help="member, e.g. 1,2,3")

    p = sub.add_parser("seq", help="build a union-closed, ideal or optimal sequence")
    p.add_argument("file")
    p.add_argument("--kind", choices=("uc", "ideal", "optimal"), required=True)
    p.add_argument("--element", type=int)
    p.add_argument("--strategy", choices=sorted(STRATEGY_ALIASES), default="greedy")
    p.add_argument("--out")

    p = sub.add_parser("pred", help="predicates on F and D")
    preds = p.add_subparsers(dest="predicate", required=True)
    q = preds.add_parser("vincolated")
    q.add_argument("file")
    q.add_argument("--set", required=True)
    q = preds.add_parser("vincolated-to")
    q.add_argument("file")
    q.add_argument("--set", required=True)
    q.add_argument("--to", required=True)
    preds.add_parser("minimal").add_argument("file")
    q = preds.add_parser("quasiminimal")
    q.add_argument("file")
    q.add_argument("--element", type=int, required=True)
    q.add_argument("--y1", required=True)
    q.add_argument("--y2", required=True)
    preds.add_parser("shape").add_argument("file")

    p = sub.add_parser("enumerate", help="every union-closed family of [n]")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--oracle", action="store_true", help="count with the brute-force filter instead")
    p.add_argument("--long-run", action="store_true", help="allow n = 5")
    p.add_argument("--jobs", type=_positive)

    p = sub.add_parser("sample", help="seeded random family")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--sets", type=_positive, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--arbitrary", action="store_true", help="skip the union closure")

    p = sub.add_parser("audit", help="audit the claims over every small instance")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--claims", help="comma-separated subset of " + ",".join(c.value for c in ClaimId))
    p.add_argument("--jobs", type=_positive)
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--out")
    p.add_argument("--csv", help="also write the per-claim summary table")
    p.add_argument("--budget", type=_positive, help="quasiminimality candidates per family at n >= 4")
    p.add_argument("--long-run", action="store_true", help="allow n = 5")
    p.add_argument("--random-families", type=int, help="arbitrary families for L1/L3 when n > 3")
    p.add_argument("--seed", type=int, help="seed of the arbitrary-family supply")
    p.add_argument("--no-progress", action="store_true")
    return parser


COMMANDS: Dict[str, Callable[[Session], int]] = {
    "check": cmd_check,
    "basis": cmd_basis,
    "decompose": cmd_decompose,
    "closure": cmd_closure,
    "complement": cmd_complement,
    "seq": cmd_seq,
    "validate-seq": cmd_validate_seq,
    "pred": cmd_pred,
    "enumerate": cmd_enumerate,
    "sample": cmd_sample,
    "audit": cmd_audit,
}


def _configure_logging(level: str) -> None:
    logging.basicConfig(stream=sys.stderr, format=LOG_FORMAT)
    logging.getLogger().setLevel(level)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run one subcommand and map the outcome to an exit status.

    Args:
        argv: Arguments without the program name (sys.argv[1:] when None)

    Returns:
        0, 1 or 2 as described in the module docstring
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        settings = AuditSettings.from_env()
        _configure_logging("DEBUG" if args.verbose else settings.log_level)
        return COMMANDS[args.command](Session(args, parser, settings))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (FranklError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
