#!/usr/bin/env python3
"""
Heine operator identity audit
Command-line entry point: catalog listing, verification runs, polynomial tables, golden files
"""

import json
import sys
from pathlib import Path
from typing import Optional, Tuple

import click
from dotenv import load_dotenv
from loguru import logger
from pydantic import ValidationError
from rich.console import Console
from rich.progress import BarColumn, Progress, SpinnerColumn, TaskProgressColumn, TextColumn

from .audit import (
    catalog,
    compare_with_golden,
    load_golden,
    polynomial_rows,
    polynomial_table,
    render_report,
    verify_all,
    write_golden,
)
from .audit.report import TABLE_KINDS, catalog_table, entry_line
from .audit.verifier import plan
from .core import QAuditError, RunConfig, UsageError, get_settings, parse_rational

# Load environment variables
load_dotenv()

console = Console()
err_console = Console(stderr=True)

LOG_FORMAT = ("<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | "
              "<cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>")


def setup_logging(level: str) -> None:
    logger.remove()
    logger.add(sys.stderr, level=level.upper(), format=LOG_FORMAT)


def build_run_config(degree: Optional[int], ids: Tuple[str, ...], n_values: Tuple[int, ...],
                     k_values: Tuple[int, ...], fmt: str, out: Optional[Path], q_check: Optional[str],
                     workers: Optional[int]) -> RunConfig:
    """Flags win over QAUDIT_* environment, environment wins over defaults"""
    settings = get_settings()
    q_text = q_check if q_check is not None else settings.q_check
    try:
        return RunConfig(
            order=degree if degree is not None else settings.degree,
            ids=list(ids) or None,
            n_values=list(n_values) or None,
            k_values=list(k_values) or None,
            format=fmt,
            output=out,
            q_check=parse_rational(q_text) if q_text else None,
            workers=workers if workers is not None else settings.workers,
        )
    except ValidationError as e:
        messages = "; ".join(err["msg"] for err in e.errors())
        raise click.UsageError(messages) from e
    except UsageError as e:
        raise click.UsageError(str(e)) from e


@click.group()
def cli():
    """Exact audit of Heine binomial operator identities"""
    setup_logging(get_settings().log_level)


@cli.command("list")
def cmd_list():
    """List every catalog entry with its anchor and default grid"""
    console.print(catalog_table(catalog()))


@cli.command("verify")
@click.option('--id', 'ids', multiple=True, help='Identity id (repeatable); default is the whole catalog')
@click.option('--degree', type=int, default=None, help='Truncation order (env QAUDIT_DEGREE, default 8)')
@click.option('--n', 'n_values', multiple=True, type=int, help='Override n values (repeatable)')
@click.option('--k', 'k_values', multiple=True, type=int,
              help='Override k values (repeatable); I4 uses k as the seed of its random polynomial pair')
@click.option('--format', 'fmt', type=click.Choice(['text', 'json', 'csv']), default='text')
@click.option('--out', type=click.Path(dir_okay=False, path_type=Path), default=None, help='Write the report here')
@click.option('--q-check', default=None, help='Also evaluate confirmed coefficients at q = NUM/DEN')
@click.option('--workers', type=int, default=None, help='Process pool size (env QAUDIT_WORKERS)')
@click.option('--golden', 'golden_path', type=click.Path(dir_okay=False, path_type=Path), default=None,
              help='Golden verdict file (env QAUDIT_GOLDEN_PATH)')
@click.option('--strip-volatile', is_flag=True, help='Omit timestamp and timings')
def cmd_verify(ids, degree, n_values, k_values, fmt, out, q_check, workers, golden_path, strip_volatile):
    """Verify catalog entries; exit 1 if any verdict deviates from the golden file"""
    cfg = build_run_config(degree, ids, n_values, k_values, fmt, out, q_check, workers)

    try:
        total = len(plan(cfg.ids, cfg.n_values, cfg.k_values))
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            TaskProgressColumn(),
            console=err_console,
            transient=True,
        ) as progress:
            task = progress.add_task(f"Verifying at order {cfg.order}", total=total)

            def advance(entry):
                progress.update(task, description=entry_line(entry))
                progress.advance(task)

            report = verify_all(cfg.order, cfg.ids, cfg.n_values, cfg.k_values,
                                q_check=cfg.q_check, workers=cfg.workers, on_result=advance)
    except UsageError as e:
        raise click.UsageError(str(e)) from e
    except QAuditError as e:
        logger.error(f"Verification failed: {e}")
        err_console.print(f"❌ Verification failed: {e}", style="red", markup=False)
        sys.exit(1)

    if strip_volatile:
        report = report.strip_volatile()
    text = render_report(report, cfg.format)
    if cfg.output:
        cfg.output.parent.mkdir(parents=True, exist_ok=True)
        cfg.output.write_text(text, encoding="utf-8")
        err_console.print(f"✅ Report written to {cfg.output}", style="green")
    else:
        click.echo(text, nl=False)

    golden = load_golden(golden_path or get_settings().golden_path)
    deviations = compare_with_golden(report, golden)
    if deviations:
        for deviation in deviations:
            err_console.print(f"❌ {deviation}", style="red", markup=False)
        sys.exit(1)


@cli.command("table")
@click.argument('kind', type=click.Choice(list(TABLE_KINDS)))
@click.option('--m-max', type=int, default=4, show_default=True)
@click.option('--n', 'n', type=int, default=1, show_default=True, help='alpha = q^n (hahn only)')
@click.option('--format', 'fmt', type=click.Choice(['text', 'json', 'csv']), default='text')
def cmd_table(kind, m_max, n, fmt):
    """Coefficient tables of Phi_m^(q^n)(b,x|q) or r_m(b,x)"""
    try:
        if fmt == 'text':
            console.print(polynomial_table(kind, m_max, n))
            return
        rows = polynomial_rows(kind, m_max, n)
    except UsageError as e:
        raise click.UsageError(str(e)) from e

    if fmt == 'json':
        data = [{"m": m, "coefficients": dict(cells)} for m, cells in rows]
        click.echo(json.dumps(data, indent=2))
    else:
        click.echo("m,monomial,coefficient")
        for m, cells in rows:
            for mono, coeff in cells:
                click.echo(f"{m},{mono},{coeff}")


@cli.command("golden")
@click.option('--degree', type=int, default=None, help='Truncation order (env QAUDIT_DEGREE, default 8)')
@click.option('--out', type=click.Path(dir_okay=False, path_type=Path), default=None,
              help='Destination (env QAUDIT_GOLDEN_PATH)')
@click.option('--workers', type=int, default=None)
def cmd_golden(degree, out, workers):
    """Recompute the default grid and write the golden verdict file (review before committing)"""
    cfg = build_run_config(degree, (), (), (), 'text', out, None, workers)
    try:
        report = verify_all(cfg.order, workers=cfg.workers)
    except UsageError as e:
        raise click.UsageError(str(e)) from e
    path = cfg.output or get_settings().golden_path
    golden = write_golden(report, path)
    console.print(f"✅ {len(golden.entries)} golden verdicts at order {golden.order} written to {path}",
                  style="green")


if __name__ == "__main__":
    cli()
