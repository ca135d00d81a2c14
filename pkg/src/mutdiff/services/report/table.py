from typing import List, Optional

from mutdiff.schemas.report import CheckReport, RunReport

COLUMNS = ("Program", "LOC", "No_Mut", "Det_EqMut", "NotEq", "Unknown", "Eq%", "Score", "Score+W")


def _percent(value: Optional[float]) -> str:
    return "-" if value is None else f"{value * 100:.1f}"


def table_row(run: RunReport) -> List[str]:
    return [
        run.program,
        str(run.loc),
        str(run.no_mut),
        str(run.det_eqmut),
        str(run.not_eq),
        str(run.unknown),
        _percent(run.equivalent_fraction),
        _percent(run.score),
        _percent(run.augmented_score),
    ]


def render_table(report: CheckReport) -> str:
    """One row per program with totals, program name left aligned and numbers right aligned."""
    rows = [table_row(run) for run in report.programs]
    if len(report.programs) > 1:
        fields = ("loc", "no_mut", "det_eqmut", "not_eq", "unknown")
        totals = [sum(getattr(run, name) for run in report.programs) for name in fields]
        rows.append(["Total", *map(str, totals), _percent(totals[2] / totals[1] if totals[1] else 0.0), "", ""])

    widths = [max([len(COLUMNS[i])] + [len(row[i]) for row in rows]) for i in range(len(COLUMNS))]

    def line(cells: List[str]) -> str:
        first = f"{cells[0]:<{widths[0]}}"
        rest = [f"{cell:>{width}}" for cell, width in zip(cells[1:], widths[1:])]
        return "  ".join([first, *rest]).rstrip()

    lines = [line(list(COLUMNS)), "  ".join("-" * width for width in widths)]
    lines += [line(row) for row in rows]
    for error in report.errors:
        lines.append(f"{error.path}: {error.error_type}: {error.message}")
    return "\n".join(lines)
