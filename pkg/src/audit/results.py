"""
Claim identifiers, verdicts and per-binding results shared by the auditor,
the independent oracle and the report layer.
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict

from src.family.core import Family, make_family


class ClaimId(str, Enum):
    L1 = "L1"
    L2 = "L2"
    L3 = "L3"
    L4 = "L4"
    L5 = "L5"
    L6 = "L6"
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"
    T4A = "T4a"
    T4B = "T4b"
    T5 = "T5"

    @classmethod
    def parse(cls, text: str) -> "ClaimId":
        for claim in cls:
            if claim.value.lower() == text.strip().lower():
                return claim
        raise ValueError(f"unknown claim {text!r}, expected one of {', '.join(c.value for c in cls)}")


ALL_CLAIMS = tuple(ClaimId)

# stated for families that need not be union-closed
ARBITRARY_FAMILY_CLAIMS = frozenset({ClaimId.L1, ClaimId.L3})

# verdicts rest on a construction; the oracle searches when it breaks
CONSTRUCTIVE_CLAIMS = frozenset({ClaimId.T2, ClaimId.L5, ClaimId.L6})


class Verdict(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    PRECONDITION_NOT_MET = "precondition-not-met"


@dataclass(frozen=True)
class ClaimResult:
    """
    Outcome of one claim at one parameter binding on one family.

    Set-valued params and witness entries are 1-based element lists so a
    result serialises to JSON as is.
    """

    claim: ClaimId
    family: Family
    verdict: Verdict
    params: Dict[str, Any] = field(default_factory=dict)
    witness: Dict[str, Any] = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return self.verdict is Verdict.FAILS

    def to_dict(self) -> Dict[str, Any]:
        return {
            "claim": self.claim.value,
            "n": self.family.universe_size,
            "family": self.family.element_lists(),
            "params": self.params,
            "verdict": self.verdict.value,
            "witness": self.witness,
        }

    def canonical(self) -> str:
        """Stable one-line JSON used for the determinism digest."""
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: Dict[str, Any], n: int, claim: ClaimId) -> "ClaimResult":
        return cls(
            claim=claim,
            family=make_family(n, data["family"]),
            verdict=Verdict(data.get("verdict", Verdict.FAILS.value)),
            params=dict(data.get("params", {})),
            witness=dict(data.get("witness", {})),
        )

