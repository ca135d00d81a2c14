from pathlib import Path
from typing import Optional, Tuple

import click

from mutdiff.cli.params import DOMAIN, OPERATORS, build_config
from mutdiff.constants import EXIT_PARSE_ERROR
from mutdiff.core.config import settings
from mutdiff.exceptions import SuiteFormatException
from mutdiff.models.schemas.config import FlagStrategy
from mutdiff.services.metrics import MetricsService
from mutdiff.services.report.pipeline import run_pipeline
from mutdiff.services.report.suite import dump_suite, load_suite
from mutdiff.services.report.table import render_table
from mutdiff.utils.logger import get_logger
from mutdiff.utils.serialization import dumps

logger = get_logger(__name__)


@click.command("check")
@click.argument("files", nargs=-1, required=True, type=click.Path(path_type=Path))
@click.option("--nd", type=click.IntRange(min=1), help="Initial nesting depth")
@click.option("--nd-max", type=click.IntRange(min=1), help="Largest nesting depth tried")
@click.option("--timeout", type=click.FloatRange(min=0, min_open=True), help="Solver time per mutant in seconds")
@click.option("--domain", type=DOMAIN, help="Integer domain MIN:MAX")
@click.option("--ops", type=OPERATORS, help="Operator classes, e.g. AOR,ROR,CRP")
@click.option("--suite", "suite_path", type=click.Path(path_type=Path), help="Test-suite JSON file to score")
@click.option("--json", "json_out", type=click.Path(path_type=Path), help="Write the JSON report here")
@click.option("--emit-smt", type=click.Path(path_type=Path), help="Write one .smt2 file per (mutant, nd)")
@click.option("--jobs", type=click.IntRange(min=1), default=lambda: settings.DEFAULT_JOBS, show_default="1")
@click.option("--flag-strategy", type=click.Choice([s.value for s in FlagStrategy]), help="Loop flag handling")
@click.option("--max-blocking-rounds", type=click.IntRange(min=1), help="Blocking clauses allowed per nd")
@click.option("--no-timings", is_flag=True, help="Leave wall-clock times out of the report")
@click.option("--augment-suite", type=click.Path(path_type=Path), help="Write the suite extended by every witness")
@click.option("--metrics-out", type=click.Path(path_type=Path), help="Write Prometheus metrics here")
@click.pass_context
def check_command(
    ctx: click.Context,
    files: Tuple[Path, ...],
    nd: Optional[int],
    nd_max: Optional[int],
    timeout: Optional[float],
    domain: Optional[Tuple[int, int]],
    ops,
    suite_path: Optional[Path],
    json_out: Optional[Path],
    emit_smt: Optional[Path],
    jobs: int,
    flag_strategy: Optional[str],
    max_blocking_rounds: Optional[int],
    no_timings: bool,
    augment_suite: Optional[Path],
    metrics_out: Optional[Path],
):
    """Generate mutants of FILES and decide which of them are equivalent."""
    cfg = build_config(nd, nd_max, domain, timeout, max_blocking_rounds, flag_strategy)

    suite = None
    if suite_path is not None:
        try:
            suite = load_suite(suite_path)
        except SuiteFormatException as e:
            click.echo(str(e), err=True)
            ctx.exit(EXIT_PARSE_ERROR)

    metrics = MetricsService() if metrics_out is not None else None
    result = run_pipeline(
        list(files),
        cfg,
        suite=suite,
        ops=ops,
        jobs=jobs,
        emit_smt=emit_smt,
        timings=not no_timings,
        metrics=metrics,
        suite_path=suite_path,
    )

    for error in result.report.errors:
        click.echo(f"{error.path}: {error.message}", err=True)
    click.echo(render_table(result.report))

    if json_out is not None:
        json_out.write_bytes(dumps(result.report))
    if augment_suite is not None:
        augment_suite.write_bytes(dump_suite(result.augmented_suite))
    if metrics is not None:
        metrics.write(metrics_out)

    ctx.exit(result.exit_code)
