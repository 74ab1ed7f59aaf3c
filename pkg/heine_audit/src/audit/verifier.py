"""
Exact LHS/RHS comparison for catalog entries.

A side is built by its registered builder, truncated to the requested order
and compared coefficient by coefficient. A vanishing denominator met while
building a closed form is an UNDEFINED verdict, not an error.
"""

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from loguru import logger

from ..algebra.pseries import MultiSeries, first_difference, monomial_str, ms_coeff, ms_rename, ms_truncate
from ..algebra.qfield import ratfun_eval_at, ratfun_str
from ..core.config import MIN_ORDER
from ..core.errors import PoleError, UndefinedSeriesError, UsageError
from .builders import V_BXY, V_BXYZ, get_builder
from .catalog import catalog, catalog_ids, get_identity
from .models import (
    IdentitySpec,
    Params,
    ReportEntry,
    RunMetadata,
    Status,
    Verdict,
    VerificationReport,
    Witness,
    summarize,
)


@dataclass
class VerifyDetails:
    lhs: Optional[MultiSeries] = None
    rhs: Optional[MultiSeries] = None
    corrected_rhs: Optional[MultiSeries] = None
    corrected: Optional[Verdict] = None
    elapsed_ms: float = 0.0


def check_order(order: int) -> None:
    if order < MIN_ORDER:
        raise UsageError(f"order {order} is too small to be informative (need >= {MIN_ORDER})")


def build_side(tag: str, params: Params, order: int) -> MultiSeries:
    return ms_truncate(get_builder(tag)(params, order), order)


def compare(lhs: MultiSeries, rhs: MultiSeries, note: str = "") -> Verdict:
    """CONFIRMED, or REFUTED at the first differing monomial in canonical order"""
    idx = first_difference(lhs, rhs)
    if idx is None:
        return Verdict(status=Status.CONFIRMED, note=note)
    witness = Witness(
        index=list(idx),
        monomial=monomial_str(lhs.vars, idx),
        lhs=ratfun_str(ms_coeff(lhs, idx)),
        rhs=ratfun_str(ms_coeff(rhs, idx)),
    )
    return Verdict(status=Status.REFUTED, witness=witness, note=note)


def numeric_check(lhs: MultiSeries, rhs: MultiSeries, q0: Fraction) -> str:
    """Evaluate every coefficient pair at q = q0 and compare the rationals"""
    order = min(lhs.order, rhs.order)
    keys = {e for e in lhs.terms if sum(e) <= order} | {e for e in rhs.terms if sum(e) <= order}
    for exps in sorted(keys):
        mono = monomial_str(lhs.vars, exps)
        try:
            left = ratfun_eval_at(ms_coeff(lhs, exps), q0)
            right = ratfun_eval_at(ms_coeff(rhs, exps), q0)
        except PoleError:
            return f"pole at q={q0} in the coefficient of {mono}"
        if left != right:
            return f"differs at q={q0} for {mono}: {left} vs {right}"
    return f"agrees at q={q0}"


class Verifier:
    def __init__(self, order: int = 8, q_check: Optional[Fraction] = None):
        check_order(order)
        self.order = order
        self.q_check = q_check

        # Statistics tracking
        self.entries_verified = 0
        self.status_counts: Counter = Counter()
        self.corrected_counts: Counter = Counter()
        self.numeric_mismatches = 0

    def verify(self, id: str, params: Params) -> Tuple[Verdict, VerifyDetails]:
        spec = get_identity(id)
        started = time.perf_counter()
        details = VerifyDetails()
        if spec.skipped:
            verdict = Verdict(status=Status.SKIPPED, note=spec.note)
        else:
            try:
                verdict = self._verify_sides(spec, params, details)
            except Exception as e:
                logger.error(f"{spec.id} [{params}] failed at order {self.order}: {e}")
                raise
        details.elapsed_ms = (time.perf_counter() - started) * 1000

        self.entries_verified += 1
        self.status_counts[verdict.status.value] += 1
        if details.corrected is not None:
            self.corrected_counts[details.corrected.status.value] += 1
        logger.info(f"{spec.id} [{params}] order {self.order}: {verdict.status.value}"
                    + (f" (corrected: {details.corrected.status.value})" if details.corrected else ""))
        return verdict, details

    def _verify_sides(self, spec: IdentitySpec, params: Params, details: VerifyDetails) -> Verdict:
        details.lhs = build_side(spec.lhs, params, self.order)
        try:
            details.rhs = build_side(spec.rhs, params, self.order)
        except UndefinedSeriesError as e:
            note = f"{e}; {spec.note}" if spec.note else str(e)
            return Verdict(status=Status.UNDEFINED, note=note)
        verdict = self._judge(details.lhs, details.rhs, spec.note)

        if spec.corrected_rhs is not None:
            try:
                details.corrected_rhs = build_side(spec.corrected_rhs, params, self.order)
                details.corrected = self._judge(details.lhs, details.corrected_rhs, "corrected closed form")
            except UndefinedSeriesError as e:
                details.corrected = Verdict(status=Status.UNDEFINED, note=str(e))
        return verdict

    def _judge(self, lhs: MultiSeries, rhs: MultiSeries, note: str) -> Verdict:
        verdict = compare(lhs, rhs, note)
        if verdict.status == Status.CONFIRMED and self.q_check is not None:
            outcome = numeric_check(lhs, rhs, self.q_check)
            if not outcome.startswith("agrees"):
                self.numeric_mismatches += 1
                logger.warning(f"numeric check: {outcome}")
            verdict = verdict.model_copy(update={"numeric": outcome})
        return verdict

    def verify_entry(self, id: str, params: Params) -> ReportEntry:
        verdict, details = self.verify(id, params)
        return ReportEntry(
            id=id,
            params=params.as_dict(),
            order=self.order,
            verdict=verdict,
            corrected=details.corrected,
            elapsed_ms=round(details.elapsed_ms, 3),
        )

    def get_verification_stats(self) -> Dict[str, object]:
        return {
            'entries_verified': self.entries_verified,
            'status_counts': dict(self.status_counts),
            'corrected_counts': dict(self.corrected_counts),
            'numeric_mismatches': self.numeric_mismatches,
        }


def verify(id: str, params: Params, order: int, q_check: Optional[Fraction] = None) -> Tuple[Verdict, VerifyDetails]:
    return Verifier(order, q_check).verify(id, params)


def _run_task(id: str, params: Dict[str, int], order: int, q_check: Optional[Fraction]) -> ReportEntry:
    return Verifier(order, q_check).verify_entry(id, Params(**params))


def plan(ids: Optional[List[str]] = None, n_values: Optional[List[int]] = None,
         k_values: Optional[List[int]] = None) -> List[Tuple[str, Params]]:
    """(id, params) pairs in catalog order"""
    if ids:
        unknown = [i for i in ids if i not in catalog_ids()]
        if unknown:
            raise UsageError(f"unknown identity id(s): {', '.join(unknown)}")
    tasks = []
    for spec in catalog():
        if ids and spec.id not in ids:
            continue
        for params in spec.grid(n_values, k_values):
            tasks.append((spec.id, params))
    return tasks


def entry_sort_key(entry: ReportEntry) -> Tuple[int, Tuple[int, int]]:
    return catalog_ids().index(entry.id), Params(**entry.params).sort_key()


def verify_all(order: int = 8, ids: Optional[List[str]] = None, n_values: Optional[List[int]] = None,
               k_values: Optional[List[int]] = None, q_check: Optional[Fraction] = None, workers: int = 1,
               on_result: Optional[Callable[[ReportEntry], None]] = None) -> VerificationReport:
    """Run every requested entry over its grid; the report is sorted by catalog position then params"""
    check_order(order)
    tasks = plan(ids, n_values, k_values)
    logger.info(f"Verifying {len(tasks)} entries at order {order} with {workers} worker(s)")

    entries: List[ReportEntry] = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_task, id, params.as_dict(), order, q_check) for id, params in tasks]
            for future in as_completed(futures):
                entry = future.result()
                entries.append(entry)
                if on_result:
                    on_result(entry)
    else:
        verifier = Verifier(order, q_check)
        for id, params in tasks:
            entry = verifier.verify_entry(id, params)
            entries.append(entry)
            if on_result:
                on_result(entry)
        logger.debug(f"verification stats: {verifier.get_verification_stats()}")

    entries.sort(key=entry_sort_key)
    metadata = RunMetadata(
        order=order,
        ids=ids,
        n_values=n_values,
        k_values=k_values,
        q_check=str(q_check) if q_check is not None else None,
        timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )
    report = VerificationReport(
        metadata=metadata,
        entries=entries,
        summary=summarize([entry.verdict for entry in entries]),
        corrected_summary=summarize([entry.corrected for entry in entries if entry.corrected is not None]),
    )
    logger.info(f"Verification complete: {report.summary}")
    return report


def _t8_against_t2(params: Params, order: int) -> Tuple[MultiSeries, MultiSeries]:
    n = params.n if params.n is not None else params.k
    renamed = ms_rename(build_side("T2.rhs", Params(n=n), order), {"a": "y"}, V_BXY)
    return renamed, build_side("T8.rhs", Params(n=n), order)


def _t13_against_t4(params: Params, order: int) -> Tuple[MultiSeries, MultiSeries]:
    k = params.k if params.k is not None else params.n
    renamed = ms_rename(build_side("T4.rhs", Params(n=k), order), {"a": "b", "b": "y", "c": "z"}, V_BXYZ)
    return renamed, build_side("T13.rhs", Params(k=k), order)


LINKAGES: Dict[str, Callable[[Params, int], Tuple[MultiSeries, MultiSeries]]] = {
    "T8~T2": _t8_against_t2,
    "T13~T4": _t13_against_t4,
}


def verify_linkage(name: str, order: int, params: Params) -> Verdict:
    """Confirm that two closed forms agree after renaming variables"""
    check_order(order)
    try:
        sides = LINKAGES[name]
    except KeyError:
        raise UsageError(f"unknown linkage {name!r}; known: {', '.join(LINKAGES)}") from None
    renamed, target = sides(params, order)
    verdict = compare(renamed, target, note=f"linkage {name}")
    logger.info(f"linkage {name} [{params}] order {order}: {verdict.status.value}")
    return verdict
