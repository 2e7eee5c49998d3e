"""Per-record metric rows, the dataset mean row, and report files."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from ..exceptions import InvalidArgumentError

__all__ = ["ReportRow", "Report", "COLUMNS", "emit_report", "read_report"]

# (field, markdown header); ROUGE and control metrics first, in the usual table order.
COLUMNS = (
    ("rouge1", "R-1"),
    ("rouge2", "R-2"),
    ("rougeL", "R-L"),
    ("k_conciseness", "Con"),
    ("k_narrative", "Nar"),
    ("k_keywords", "Key"),
    ("fkgl", "FKGL"),
    ("novel_bigrams", "Novel-2 (%)"),
    ("tokens", "Tokens (words)"),
)
METRIC_FIELDS = tuple(name for name, _ in COLUMNS)
PERCENT_FIELDS = ("rouge1", "rouge2", "rougeL", "k_narrative", "k_keywords", "novel_bigrams")


@dataclass
class ReportRow:
    """Metric values for one record (or the dataset mean, ``id='mean'``).

    ROUGE values are F1 scores in percent. ``None`` marks an undefined metric.
    """

    id: str
    rouge1: float | None = None
    rouge2: float | None = None
    rougeL: float | None = None
    k_conciseness: float | None = None
    k_narrative: float | None = None
    k_keywords: float | None = None
    fkgl: float | None = None
    novel_bigrams: float | None = None
    tokens: float | None = None
    gamma: float | None = None
    seed: int | None = None
    truncated: bool | None = None

    def check_ranges(self):
        for name in PERCENT_FIELDS:
            value = getattr(self, name)
            if value is not None and not (0.0 <= value <= 100.0):
                raise InvalidArgumentError(f"{self.id}: {name}={value} outside [0, 100]")
        for name in ("k_conciseness", "tokens"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise InvalidArgumentError(f"{self.id}: {name}={value} is negative")
        if self.fkgl is not None and not math.isfinite(self.fkgl):
            raise InvalidArgumentError(f"{self.id}: fkgl is not finite")


@dataclass
class Report:
    rows: list[ReportRow]
    mean: ReportRow
    excluded: dict[str, int]

    def to_dict(self) -> dict:
        return {
            "rows": [asdict(r) for r in self.rows],
            "mean": asdict(self.mean),
            "excluded": dict(self.excluded),
        }

    @classmethod
    def from_dict(cls, data) -> "Report":
        return cls(
            [ReportRow(**r) for r in data["rows"]],
            ReportRow(**data["mean"]),
            dict(data["excluded"]),
        )


def read_report(path) -> Report:
    return Report.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def _csv_value(value):
    if value is None:
        return ""
    return repr(value) if isinstance(value, float) else str(value)


def _md_value(value):
    if value is None:
        return "–"
    if isinstance(value, float):
        return f"{value:.2f}"
    return str(value)


def render_report(report: Report, fmt: str) -> str:
    if not report.rows:
        raise InvalidArgumentError("cannot emit a report without rows")
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        names = [f.name for f in fields(ReportRow)]
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(names)
        for row in report.rows + [report.mean]:
            writer.writerow([_csv_value(getattr(row, n)) for n in names])
        return buf.getvalue()
    if fmt == "markdown":
        headers = ["ID"] + [h for _, h in COLUMNS]
        lines = [
            "| " + " | ".join(headers) + " |",
            "|" + "|".join(["---"] + ["---:"] * len(COLUMNS)) + "|",
        ]
        for row in report.rows + [report.mean]:
            cells = [row.id if row is not report.mean else "**mean**"]
            cells += [_md_value(getattr(row, name)) for name, _ in COLUMNS]
            lines.append("| " + " | ".join(cells) + " |")
        return "\n".join(lines) + "\n"
    raise InvalidArgumentError(f"unknown report format {fmt!r}")


def emit_report(report: Report, fmt: str, path) -> Path:
    """Write ``report`` as csv, json or markdown to ``path``."""
    text = render_report(report, fmt)
    path = Path(path)
    path.write_text(text, encoding="utf-8")
    return path
