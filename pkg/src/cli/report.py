"""Verification reports: per-cell records, verdicts and serialization."""

import io
import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

import pandas as pd

from config.settings import get_settings
from src.homology.checks import IdentityReport
from src.homology.engine import DimProfile, SModuleInvariants
from src.theory.closedform import DimensionSpec

logger = logging.getLogger(__name__)
settings = get_settings()

CSV_COLUMNS = ["r", "p", "direction", "predicted", "computed", "verdict"]


class Verdict(str, Enum):
    MATCH = "match"
    MISMATCH = "mismatch"
    INCONCLUSIVE = "inconclusive"


@dataclass
class CellRecord:
    direction: str
    r: int
    p: int
    predicted: Optional[DimensionSpec] = None
    computed: Optional[DimProfile] = None
    s_invariants: Optional[SModuleInvariants] = None
    verdict: Optional[Verdict] = None
    error: Optional[str] = None
    notes: List[str] = field(default_factory=list)

    @property
    def sort_key(self):
        return self.direction, self.r, self.p

    def computed_text(self) -> str:
        if self.computed is None:
            return ""
        dims = ",".join(str(dim) for _, dim in self.computed.samples)
        if self.computed.slope is None:
            return f"[{dims}]"
        return f"[{dims}] slope={self.computed.slope} const={self.computed.constant}"

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"direction": self.direction, "r": self.r, "p": self.p}
        if self.predicted is not None:
            data["predicted"] = self.predicted.to_dict()
            if self.computed is not None:
                data["predicted"]["truncated"] = {
                    str(D): list(self.predicted.truncated_dim(D)) for D, _ in self.computed.samples
                }
        if self.computed is not None:
            data["computed"] = self.computed.to_dict()
        if self.s_invariants is not None:
            data["s_invariants"] = self.s_invariants.to_dict()
        if self.verdict is not None:
            data["verdict"] = self.verdict.value
        if self.error:
            data["error"] = self.error
        if self.notes:
            data["notes"] = list(self.notes)
        return data


def judge(
    predicted: Optional[DimensionSpec],
    computed: Optional[DimProfile],
    s_invariants: Optional[SModuleInvariants] = None,
) -> Verdict:
    """match needs a stabilized profile whose slope is the S-rank and whose samples fit the prediction."""
    if predicted is None or computed is None or not computed.stabilized:
        return Verdict.INCONCLUSIVE
    if computed.slope != predicted.s_rank:
        return Verdict.MISMATCH
    for D, dim in computed.samples:
        lo, hi = predicted.truncated_dim(D)
        if not lo <= dim <= hi:
            return Verdict.MISMATCH
    if s_invariants is not None and oracle_disagreements(predicted, computed, s_invariants):
        return Verdict.MISMATCH
    return Verdict.MATCH


def oracle_disagreements(
    predicted: DimensionSpec, computed: DimProfile, s_invariants: SModuleInvariants
) -> List[str]:
    problems = []
    if computed.slope is not None and computed.slope != s_invariants.free_rank:
        problems.append(f"slope {computed.slope} != free rank {s_invariants.free_rank}")
    if s_invariants.free_rank == 0 and computed.constant is not None and computed.constant != s_invariants.torsion_total:
        problems.append(f"constant {computed.constant} != torsion dimension {s_invariants.torsion_total}")
    if s_invariants.free_rank != predicted.s_rank:
        problems.append(f"free rank {s_invariants.free_rank} != predicted S-rank {predicted.s_rank}")
    if s_invariants.torsion_total != predicted.constant_part:
        problems.append(f"torsion dimension {s_invariants.torsion_total} != predicted {predicted.constant_part}")
    return problems


@dataclass
class Report:
    command: str
    metadata: Dict[str, Any] = field(default_factory=dict)
    records: List[CellRecord] = field(default_factory=list)
    identities: List[IdentityReport] = field(default_factory=list)

    def sorted_records(self) -> List[CellRecord]:
        return sorted(self.records, key=lambda record: record.sort_key)

    @property
    def has_mismatch(self) -> bool:
        return any(record.verdict is Verdict.MISMATCH for record in self.records)

    @property
    def has_error(self) -> bool:
        return any(record.error for record in self.records)

    @property
    def all_matched(self) -> bool:
        return all(record.verdict is Verdict.MATCH for record in self.records)

    @property
    def has_identity_failure(self) -> bool:
        return any(not identity.passed for identity in self.identities)

    def summary(self) -> Dict[str, int]:
        counts = {verdict.value: 0 for verdict in Verdict}
        for record in self.records:
            if record.verdict is not None:
                counts[record.verdict.value] += 1
        if self.identities:
            counts["identities_passed"] = sum(identity.passed for identity in self.identities)
            counts["identities_failed"] = len(self.identities) - counts["identities_passed"]
        return counts

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "schema": settings.report_schema,
            "command": self.command,
            "metadata": self.metadata,
            "records": [record.to_dict() for record in self.sorted_records()],
        }
        if self.identities:
            data["identities"] = [identity.to_dict() for identity in self.identities]
        data["summary"] = self.summary()
        return data


def to_frame(report: Report) -> pd.DataFrame:
    rows = [
        {
            "r": record.r,
            "p": record.p,
            "direction": record.direction,
            "predicted": "" if record.predicted is None else str(record.predicted),
            "computed": record.computed_text(),
            "verdict": "" if record.verdict is None else record.verdict.value,
        }
        for record in report.sorted_records()
    ]
    return pd.DataFrame(rows, columns=CSV_COLUMNS)


def emit(report: Report, fmt: str = "json") -> str:
    if fmt == "csv":
        buffer = io.StringIO()
        to_frame(report).to_csv(buffer, index=False)
        return buffer.getvalue()
    return json.dumps(report.to_dict(), indent=2, ensure_ascii=False)
