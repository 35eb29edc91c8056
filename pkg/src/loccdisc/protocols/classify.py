from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import pandas as pd

from ..bell import BellSet, EquivalenceClass, equivalence_classes
from ..constraints import (
    Verdict,
    VerdictKind,
    condition_r_verdict,
    op_subsumption,
)
from ..constraints.engine import DEFAULT_RANK_TOL
from ..linalg import Side
from ..utils.setspec import format_set
from .catalog import OneWayProtocol
from .verifier import VERIFY_TOL, ZERO_PROBABILITY, find_protocol

logger = logging.getLogger(__name__)

CSV_COLUMNS = [
    "representative",
    "member_count",
    "verdict",
    "alice_op_dim",
    "alice_opr_dim",
    "bob_op_dim",
    "bob_opr_dim",
    "protocol",
]


@dataclass
class ClassReport:
    """Condition-R verdict and protocol search result for one equivalence class."""

    representative: BellSet
    verdict: Verdict
    protocol: Optional[OneWayProtocol] = None
    member_count: int = 0
    diagnostics: Dict[str, bool] = field(default_factory=dict)

    def __post_init__(self):
        if self.protocol is not None and self.verdict.kind is not VerdictKind.PASSES_R:
            raise ValueError(
                f"{format_set(self.representative)}: protocol found for a {self.verdict.kind.value} class"
            )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "representative": format_set(self.representative),
            "indices": [list(p) for p in self.representative.pairs],
            "member_count": self.member_count,
            **self.verdict.to_dict(),
            "protocol": self.protocol.to_dict() if self.protocol else None,
            "diagnostics": dict(self.diagnostics),
        }

    def to_row(self) -> Dict[str, Any]:
        alice = self.verdict.alice_dims
        bob = self.verdict.bob_dims
        return {
            "representative": format_set(self.representative),
            "member_count": self.member_count,
            "verdict": self.verdict.kind.value,
            "alice_op_dim": alice.op_only if alice else None,
            "alice_opr_dim": alice.op_plus_r if alice else None,
            "bob_op_dim": bob.op_only if bob else None,
            "bob_opr_dim": bob.op_plus_r if bob else None,
            "protocol": self.protocol.provenance.value if self.protocol else "",
        }


def classify_class(
    cls: EquivalenceClass,
    tol_rel: float = DEFAULT_RANK_TOL,
    diagnostics: bool = True,
    verify_tol: float = VERIFY_TOL,
    zero_probability: float = ZERO_PROBABILITY,
) -> ClassReport:
    rep = cls.representative
    verdict = condition_r_verdict(rep, tol_rel)
    protocol = None
    if verdict.kind is VerdictKind.PASSES_R and rep.d == 4:
        protocol = find_protocol(rep, verify_tol, zero_probability)

    diag: Dict[str, bool] = {}
    if diagnostics and verdict.kind is not VerdictKind.TRIVIALLY_INDISTINGUISHABLE:
        states = rep.states()
        diag = {
            "op_subsumed_alice": op_subsumption(states, Side.A, tol_rel),
            "op_subsumed_bob": op_subsumption(states, Side.B, tol_rel),
            "sides_agree": verdict.sides_agree,
        }
    via = f" via {protocol.provenance.value}" if protocol else ""
    logger.info(f"{format_set(rep)}: {verdict.kind.value}{via}")
    return ClassReport(
        representative=rep,
        verdict=verdict,
        protocol=protocol,
        member_count=cls.size,
        diagnostics=diag,
    )


def classify_all(
    d: int = 4,
    k: int = 4,
    tol_rel: float = DEFAULT_RANK_TOL,
    threads: Optional[int] = None,
    diagnostics: bool = True,
    verify_tol: float = VERIFY_TOL,
    zero_probability: float = ZERO_PROBABILITY,
) -> List[ClassReport]:
    """One report per equivalence class, ordered by representative.

    Protocol search runs only at d = 4, where the measurement catalog lives.
    """
    classes = equivalence_classes(d, k)

    def run(c: EquivalenceClass) -> ClassReport:
        return classify_class(c, tol_rel, diagnostics, verify_tol, zero_probability)

    if threads == 1:
        reports = [run(c) for c in classes]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(run, classes))
    reports.sort(key=lambda r: r.representative)

    counts = summarize(reports)
    logger.info(f"d={d}, k={k}: {counts}")
    return reports


def summarize(reports: List[ClassReport]) -> Dict[str, int]:
    kinds = [r.verdict.kind for r in reports]
    return {
        "classes": len(reports),
        "fails_r": kinds.count(VerdictKind.FAILS_R),
        "passes_r": kinds.count(VerdictKind.PASSES_R),
        "trivially_indistinguishable": kinds.count(VerdictKind.TRIVIALLY_INDISTINGUISHABLE),
        "with_protocol": sum(1 for r in reports if r.protocol is not None),
    }


def reports_frame(reports: List[ClassReport]) -> pd.DataFrame:
    """Tabular view with the CSV column order."""
    return pd.DataFrame([r.to_row() for r in reports], columns=CSV_COLUMNS)
