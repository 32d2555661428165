"""
Rendering, parsing and re-verification of audit reports.

Rendered output never includes the elapsed time, so identical invocations
produce byte-identical documents.
"""

import json
from typing import Any, Dict, List, Tuple

import pandas as pd

from src.audit.auditor import AuditReport, ClaimStats
from src.audit.oracle import Instance, binding_verdict
from src.audit.results import ClaimId, ClaimResult, Verdict
from src.errors import FranklError, ParseError

REPORT_VERSION = 1
FORMATS = ("text", "json")

SUMMARY_COLUMNS = [
    "claim",
    "instances_checked",
    "bindings_checked",
    "holds",
    "fails",
    "preconditions_skipped",
    "constructions_failed",
    "candidates_truncated",
]


def summary_frame(report: AuditReport) -> pd.DataFrame:
    """One row per audited claim, in claim order."""
    rows = []
    for claim in report.claims:
        stats = report.stats[claim]
        rows.append(
            {
                "claim": claim.value,
                "instances_checked": stats.instances_checked,
                "bindings_checked": stats.bindings_checked,
                "holds": stats.holds,
                "fails": len(stats.failures),
                "preconditions_skipped": stats.preconditions_skipped,
                "constructions_failed": stats.constructions_failed,
                "candidates_truncated": stats.candidates_truncated,
            }
        )
    return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)


def _failure_dict(result: ClaimResult) -> Dict[str, Any]:
    return {
        "family": result.family.element_lists(),
        "params": result.params,
        "witness": result.witness,
    }


def report_to_dict(report: AuditReport) -> Dict[str, Any]:
    claims = {}
    for claim in report.claims:
        stats = report.stats[claim]
        claims[claim.value] = {
            "instances_checked": stats.instances_checked,
            "bindings_checked": stats.bindings_checked,
            "preconditions_skipped": stats.preconditions_skipped,
            "constructions_failed": stats.constructions_failed,
            "candidates_truncated": stats.candidates_truncated,
            "failures": [_failure_dict(f) for f in stats.failures],
        }
    return {
        "version": REPORT_VERSION,
        "tool_version": report.version,
        "n": report.universe_size,
        "candidate_budget": report.candidate_budget,
        "claims": claims,
        "digest": report.digest,
    }


def _render_text(report: AuditReport) -> str:
    lines = [
        "=" * 80,
        f"UNION-CLOSED CLAIM AUDIT  n={report.universe_size}",
        "=" * 80,
        f"tool version:      {report.version}",
        f"candidate budget:  {report.candidate_budget} (applied from n = 4)",
        "",
        summary_frame(report).to_string(index=False),
        "",
    ]
    failures = report.failures
    if failures:
        lines.append("=" * 80)
        lines.append(f"FAILURES ({len(failures)})")
        lines.append("=" * 80)
        for number, failure in enumerate(failures, start=1):
            lines.append(f"#{number} {failure.claim.value}")
            lines.append(f"  family:  {failure.family}")
            lines.append(f"  members: {json.dumps(failure.family.element_lists())}")
            lines.append(f"  params:  {json.dumps(failure.params, sort_keys=True)}")
            for key in sorted(failure.witness):
                lines.append(f"  {key}: {json.dumps(failure.witness[key])}")
            lines.append("")
    lines.append(f"digest: {report.digest}")
    if report.all_hold:
        lines.append("RESULT: all audited claims hold (precondition-not-met bindings listed above)")
    else:
        lines.append(f"RESULT: {len(failures)} counterexample(s) found")
    return "\n".join(lines) + "\n"


def render_report(report: AuditReport, fmt: str = "text") -> str:
    """
    Render a report for people (text) or for tools (json).

    Args:
        report: AuditReport from audit_all or parse_report
        fmt: 'text' or 'json'

    Returns:
        The document, newline-terminated
    """
    if fmt == "json":
        return json.dumps(report_to_dict(report), indent=2) + "\n"
    if fmt == "text":
        return _render_text(report)
    raise ValueError(f"unknown report format {fmt!r}, expected one of {FORMATS}")


def parse_report(text: str) -> AuditReport:
    """
    Rebuild an AuditReport from its json rendering.

    Raises:
        ParseError: not a report document
    """
    try:
        data = json.loads(text)
        n = int(data["n"])
        stats: Dict[ClaimId, ClaimStats] = {}
        for name, entry in data["claims"].items():
            claim = ClaimId.parse(name)
            stats[claim] = ClaimStats(
                instances_checked=int(entry["instances_checked"]),
                bindings_checked=int(entry.get("bindings_checked", 0)),
                preconditions_skipped=int(entry["preconditions_skipped"]),
                constructions_failed=int(entry.get("constructions_failed", 0)),
                candidates_truncated=int(entry.get("candidates_truncated", 0)),
                failures=[ClaimResult.from_dict(f, n, claim) for f in entry["failures"]],
            )
        return AuditReport(
            universe_size=n,
            claims=tuple(stats),
            stats=stats,
            digest=str(data["digest"]),
            candidate_budget=int(data["candidate_budget"]),
            version=str(data.get("tool_version", "")),
        )
    except FranklError as exc:
        raise ParseError(f"invalid family in report: {exc}")
    except (ValueError, KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"not an audit report: {exc}")


def reverify_report(report: AuditReport) -> List[Tuple[ClaimResult, Verdict]]:
    """
    Recompute every reported failure from the definitions.

    Returns:
        (failure, recomputed verdict) pairs; a sound report has every
        recomputed verdict equal to fails
    """
    out = []
    for failure in report.failures:
        verdict = binding_verdict(failure.claim, Instance.of(failure), failure.params, report.candidate_budget)
        out.append((failure, verdict))
    return out
