import csv
import io
from typing import List, Optional, Tuple

from rich.console import Console
from rich.table import Table
from rich.text import Text

from ..algebra.pseries import VarTable, monomial_str, ms_coeff, ms_const, ms_var
from ..algebra.qfield import qpow, ratfun_str
from ..calculus.qops import hahn, rogers_szego
from ..core.errors import UsageError
from .models import IdentitySpec, Params, ReportEntry, Verdict, VerificationReport

CSV_COLUMNS = [
    "id", "params", "order", "status", "witness_monomial", "witness_lhs", "witness_rhs", "note",
    "numeric", "corrected_status", "corrected_monomial", "corrected_lhs", "corrected_rhs", "elapsed_ms",
]
TABLE_KINDS = ("hahn", "rogers-szego")
V_TABLE = VarTable.of("bx")


def _witness_cells(verdict: Optional[Verdict]) -> Tuple[str, str, str]:
    if verdict is None or verdict.witness is None:
        return "", "", ""
    w = verdict.witness
    return w.monomial, w.lhs, w.rhs


def _render_json(report: VerificationReport) -> str:
    return report.model_dump_json(indent=2) + "\n"


def _render_csv(report: VerificationReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for entry in report.entries:
        corrected = entry.corrected
        writer.writerow([
            entry.id,
            str(Params(**entry.params)),
            entry.order,
            entry.verdict.status.value,
            *_witness_cells(entry.verdict),
            entry.verdict.note,
            entry.verdict.numeric or "",
            corrected.status.value if corrected else "",
            *_witness_cells(corrected),
            "" if entry.elapsed_ms is None else entry.elapsed_ms,
        ])
    return buffer.getvalue()


def _verdict_text(verdict: Optional[Verdict]) -> str:
    if verdict is None:
        return ""
    text = verdict.status.value
    if verdict.witness is not None:
        w = verdict.witness
        text += f" at {w.monomial}: {w.lhs} vs {w.rhs}"
    return text


def _render_text(report: VerificationReport) -> str:
    table = Table(title=f"Identity audit at order {report.metadata.order}")
    table.add_column("Id", style="cyan")
    table.add_column("Params")
    table.add_column("Verdict", style="green")
    table.add_column("Corrected")
    table.add_column("Note", overflow="fold")
    timed = any(entry.elapsed_ms is not None for entry in report.entries)
    if timed:
        table.add_column("ms", justify="right")

    for entry in report.entries:
        note = entry.verdict.note
        if entry.verdict.numeric:
            note = f"{note} [{entry.verdict.numeric}]" if note else entry.verdict.numeric
        row = [Text(entry.id), Text(str(Params(**entry.params))), Text(_verdict_text(entry.verdict)),
               Text(_verdict_text(entry.corrected)), Text(note)]
        if timed:
            row.append(Text("" if entry.elapsed_ms is None else f"{entry.elapsed_ms:.1f}"))
        table.add_row(*row)

    console = Console(file=io.StringIO(), width=200, record=True, color_system=None)
    console.print(table)
    console.print("Summary: " + ", ".join(f"{k}={v}" for k, v in report.summary.items()))
    if report.corrected_summary:
        console.print("Corrected forms: " + ", ".join(f"{k}={v}" for k, v in report.corrected_summary.items()))
    if report.metadata.timestamp:
        console.print(f"Generated {report.metadata.timestamp}")
    return console.export_text()


def render_report(report: VerificationReport, format: str = "text") -> str:
    if format == "json":
        return _render_json(report)
    if format == "csv":
        return _render_csv(report)
    if format == "text":
        return _render_text(report)
    raise UsageError(f"unknown report format {format!r}")


def catalog_table(specs: List[IdentitySpec]) -> Table:
    table = Table(title=f"Identity catalog ({len(specs)} entries)")
    table.add_column("Id", style="cyan")
    table.add_column("Policy")
    table.add_column("Anchor", overflow="fold")
    table.add_column("Default grid", overflow="fold")
    for spec in specs:
        grid = "; ".join(str(p) for p in spec.default_grid)
        table.add_row(spec.id, spec.policy, Text(spec.anchor), Text(grid))
    return table


def polynomial_rows(kind: str, m_max: int, n: int = 1) -> List[Tuple[int, List[Tuple[str, str]]]]:
    """Coefficients of b^k x^(m-k), k = 0..m, for m = 0..m_max"""
    if kind not in TABLE_KINDS:
        raise UsageError(f"unknown table kind {kind!r}; choose from {', '.join(TABLE_KINDS)}")
    if m_max < 0:
        raise UsageError(f"m_max must be >= 0, got {m_max}")
    order = max(m_max, 1)
    b, x = ms_var(V_TABLE, order, "b"), ms_var(V_TABLE, order, "x")
    alpha = ms_const(V_TABLE, order, qpow(n))
    rows = []
    for m in range(m_max + 1):
        poly = hahn(m, alpha, b, x) if kind == "hahn" else rogers_szego(m, b, x)
        cells = []
        for k in range(m + 1):
            exps = (k, m - k)
            cells.append((monomial_str(V_TABLE, exps), ratfun_str(ms_coeff(poly, exps))))
        rows.append((m, cells))
    return rows


def polynomial_table(kind: str, m_max: int, n: int = 1) -> Table:
    title = f"Phi_m^(q^{n})(b,x|q)" if kind == "hahn" else "r_m(b,x)"
    table = Table(title=title)
    table.add_column("m", justify="right", style="cyan")
    table.add_column("coefficients")
    for m, cells in polynomial_rows(kind, m_max, n):
        table.add_row(str(m), ", ".join(f"{mono}: {coeff}" for mono, coeff in cells))
    return table


def entry_line(entry: ReportEntry) -> str:
    """One-line progress message"""
    line = f"{entry.id} ({Params(**entry.params)}) {entry.verdict.status.value}"
    if entry.corrected is not None:
        line += f" / corrected {entry.corrected.status.value}"
    return line
