"""Report rendering: aligned plain-text table and structured JSON."""
from typing import Optional, Union

from src.entity_hallucination.entities.schemas import CountMode
from src.entity_hallucination.metrics.schemas import ComparisonReport, MetricReport

# (column header, aggregate key or None for metrics that are not computed)
_ROUGE_COLUMNS: list[tuple[str, Optional[str]]] = [
    ("R-1", "rouge1_f"),
    ("R-2", "rouge2_f"),
    ("R-L", "rougeL_f"),
    ("R-LSum", "rougeLsum_f"),
    ("METEOR*", None),
    ("BERTScore*", None),
]
_ENTITY_COLUMNS: list[tuple[str, str, CountMode]] = [
    ("prec_s^U", "prec_s_u", CountMode.U),
    ("prec_s^NU", "prec_s_nu", CountMode.NU),
    ("F1_t^U", "f1_t_u", CountMode.U),
    ("F1_t^NU", "f1_t_nu", CountMode.NU),
]


def format_percentage(value: Optional[float]) -> str:
    """Fixed two-decimal rendering; 'n/a' when undefined."""
    return "n/a" if value is None else f"{value:.2f}"


def table_columns(modes: tuple[CountMode, ...]) -> list[tuple[str, Optional[str]]]:
    """Column layout for the requested counting variants."""
    entity = [(header, key) for header, key, mode in _ENTITY_COLUMNS if mode in modes]
    return _ROUGE_COLUMNS + entity  # type: ignore[operator]


def report_rows(report: Union[MetricReport, ComparisonReport]) -> list[MetricReport]:
    """System reports in table row order."""
    if isinstance(report, ComparisonReport):
        return list(report.systems)
    return [report]


def render_table(
    report: Union[MetricReport, ComparisonReport],
    modes: tuple[CountMode, ...] = (CountMode.U, CountMode.NU),
) -> str:
    """Aligned table with one row per system, followed by bookkeeping lines."""
    columns = table_columns(modes)
    systems = report_rows(report)

    headers = ["Model"] + [header for header, _ in columns]
    rows = [
        [f"{system.system} ({len(system.per_record)} records)"]
        + ["n/c" if key is None else format_percentage(system.aggregate.get(key)) for _, key in columns]
        for system in systems
    ]
    widths = [max(len(cell) for cell in column) for column in zip(headers, *rows)]

    lines = [
        "  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    lines.extend("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows)
    lines.extend(["", "* not computed by this toolkit"])

    for system in systems:
        prefix = f"{system.system}: " if len(systems) > 1 else ""
        skipped = {k: v for k, v in system.undefined_counts.items() if v}
        if skipped:
            lines.append(
                f"{prefix}undefined (skipped) records: "
                + ", ".join(f"{k}={v}" for k, v in sorted(skipped.items()))
            )
        if system.errors:
            lines.append(f"{prefix}record errors: {len(system.errors)}")
    return "\n".join(lines) + "\n"


def render_json(report: Union[MetricReport, ComparisonReport]) -> str:
    """Structured report: meta, policy echo, aggregate block and per-record array, per system."""
    return report.model_dump_json(indent=2) + "\n"
