from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from ..algebra.pseries import MultiSeries, VarTable


class Status(str, Enum):
    CONFIRMED = "CONFIRMED"
    REFUTED = "REFUTED"
    UNDEFINED = "UNDEFINED"
    SKIPPED = "SKIPPED"


@dataclass(frozen=True)
class Params:
    n: Optional[int] = None
    k: Optional[int] = None

    def as_dict(self) -> Dict[str, int]:
        return {name: value for name, value in (("n", self.n), ("k", self.k)) if value is not None}

    def sort_key(self) -> Tuple[int, int]:
        return (-1 if self.n is None else self.n, -1 if self.k is None else self.k)

    def __str__(self) -> str:
        return ", ".join(f"{k}={v}" for k, v in self.as_dict().items()) or "-"


Builder = Callable[[Params, int], MultiSeries]


@dataclass
class IdentitySpec:
    id: str
    description: str
    anchor: str
    vars: VarTable
    uses: Tuple[str, ...] = ()
    default_grid: List[Params] = field(default_factory=lambda: [Params()])
    lhs: Optional[str] = None
    rhs: Optional[str] = None
    corrected_rhs: Optional[str] = None
    skipped: bool = False
    note: str = ""
    grid_filter: Optional[Callable[[Params], bool]] = None

    @property
    def policy(self) -> str:
        return "SKIPPED" if self.skipped else "VERIFY"

    def grid(self, n_values: Optional[List[int]] = None, k_values: Optional[List[int]] = None) -> List[Params]:
        """Default grid, or the override restricted to the parameters this entry uses"""
        if n_values is None and k_values is None or not self.uses:
            return list(self.default_grid)
        ns = n_values if "n" in self.uses and n_values is not None else sorted({p.n for p in self.default_grid})
        ks = k_values if "k" in self.uses and k_values is not None else sorted({p.k for p in self.default_grid})
        cells = [Params(n if "n" in self.uses else None, k if "k" in self.uses else None) for n in ns for k in ks]
        if self.grid_filter is not None:
            cells = [p for p in cells if self.grid_filter(p)]
        return sorted(set(cells), key=Params.sort_key)


class Witness(BaseModel):
    index: List[int]
    monomial: str
    lhs: str
    rhs: str


class Verdict(BaseModel):
    status: Status
    witness: Optional[Witness] = None
    note: str = ""
    numeric: Optional[str] = None

    @model_validator(mode="after")
    def _witness_matches_status(self) -> "Verdict":
        if self.status == Status.REFUTED:
            if self.witness is None:
                raise ValueError("REFUTED verdict needs a witness")
            if self.witness.lhs == self.witness.rhs:
                raise ValueError("witness coefficients must differ")
        if self.status == Status.UNDEFINED and not self.note:
            raise ValueError("UNDEFINED verdict must name the vanishing denominator")
        return self


class ReportEntry(BaseModel):
    id: str
    params: Dict[str, int] = Field(default_factory=dict)
    order: int
    verdict: Verdict
    corrected: Optional[Verdict] = None
    elapsed_ms: Optional[float] = None


class RunMetadata(BaseModel):
    order: int
    ids: Optional[List[str]] = None
    n_values: Optional[List[int]] = None
    k_values: Optional[List[int]] = None
    q_check: Optional[str] = None
    timestamp: Optional[str] = None


class VerificationReport(BaseModel):
    metadata: RunMetadata
    entries: List[ReportEntry]
    summary: Dict[str, int]
    corrected_summary: Dict[str, int] = Field(default_factory=dict)

    def strip_volatile(self) -> "VerificationReport":
        """Copy without timestamp and timings"""
        entries = [entry.model_copy(update={"elapsed_ms": None}) for entry in self.entries]
        metadata = self.metadata.model_copy(update={"timestamp": None})
        return self.model_copy(update={"entries": entries, "metadata": metadata})


def summarize(verdicts: List[Verdict]) -> Dict[str, int]:
    counts = {status.value: 0 for status in Status}
    for verdict in verdicts:
        counts[verdict.status.value] += 1
    counts["total"] = len(verdicts)
    return counts
