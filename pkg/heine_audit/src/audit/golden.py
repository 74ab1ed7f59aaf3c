"""
Committed golden verdicts: one status (and corrected status) per
(id, params) of the default grid at a single order.
"""

from pathlib import Path
from typing import Dict, List, Optional, Tuple

import yaml
from loguru import logger
from pydantic import BaseModel, Field

from .models import Params, Status, VerificationReport


class GoldenEntry(BaseModel):
    id: str
    params: Dict[str, int] = Field(default_factory=dict)
    status: Status
    corrected: Optional[Status] = None

    @property
    def key(self) -> Tuple[str, Params]:
        return self.id, Params(**self.params)


class GoldenFile(BaseModel):
    order: int
    entries: List[GoldenEntry]

    def lookup(self) -> Dict[Tuple[str, Params], GoldenEntry]:
        return {entry.key: entry for entry in self.entries}


class Deviation(BaseModel):
    id: str
    params: Dict[str, int]
    field: str
    expected: Optional[str]
    actual: Optional[str]

    def __str__(self) -> str:
        return f"{self.id} [{Params(**self.params)}] {self.field}: expected {self.expected}, got {self.actual}"


def load_golden(path: Path) -> Optional[GoldenFile]:
    path = Path(path)
    if not path.exists():
        logger.warning(f"Golden file {path} not found; nothing to compare against")
        return None
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    golden = GoldenFile.model_validate(data)
    logger.debug(f"Loaded {len(golden.entries)} golden verdicts at order {golden.order} from {path}")
    return golden


def compare_with_golden(report: VerificationReport, golden: Optional[GoldenFile]) -> List[Deviation]:
    """Deviations of the report from golden; only runs at the golden order can deviate"""
    if golden is None:
        return []
    if report.metadata.order != golden.order:
        logger.warning(f"Report order {report.metadata.order} differs from golden order {golden.order}; "
                       f"skipping golden comparison")
        return []
    expected = golden.lookup()
    deviations = []
    for entry in report.entries:
        gold = expected.get((entry.id, Params(**entry.params)))
        if gold is None:
            continue
        if entry.verdict.status != gold.status:
            deviations.append(Deviation(id=entry.id, params=entry.params, field="status",
                                        expected=gold.status.value, actual=entry.verdict.status.value))
        actual_corrected = entry.corrected.status if entry.corrected else None
        if actual_corrected != gold.corrected:
            deviations.append(Deviation(
                id=entry.id, params=entry.params, field="corrected",
                expected=gold.corrected.value if gold.corrected else None,
                actual=actual_corrected.value if actual_corrected else None,
            ))
    for deviation in deviations:
        logger.warning(f"Golden deviation: {deviation}")
    return deviations


def golden_from_report(report: VerificationReport) -> GoldenFile:
    entries = [
        GoldenEntry(
            id=entry.id,
            params=entry.params,
            status=entry.verdict.status,
            corrected=entry.corrected.status if entry.corrected else None,
        )
        for entry in report.entries
    ]
    return GoldenFile(order=report.metadata.order, entries=entries)


def write_golden(report: VerificationReport, path: Path) -> GoldenFile:
    golden = golden_from_report(report)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        yaml.safe_dump(golden.model_dump(mode="json", exclude_none=True), f, sort_keys=False)
    logger.info(f"Wrote {len(golden.entries)} golden verdicts at order {golden.order} to {path}")
    return golden
