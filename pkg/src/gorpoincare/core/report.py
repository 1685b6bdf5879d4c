"""Serialization of reports and measurement tables to JSON, CSV and Markdown."""

import json
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from gorpoincare.core.models import SCHEMA_VERSION, VerificationReport
from gorpoincare.generators.summary import SummaryGenerator

FORMATS = ("json", "csv", "markdown")


def _plain(value: Any) -> Any:
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, tuple):
        return list(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps_json(data: Any) -> str:
    """Deterministic JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, default=_plain) + "\n"


def reports_to_dict(
    reports: list[VerificationReport], include_timings: bool = False
) -> dict[str, Any]:
    """A single report as is; several wrapped in one document."""
    if len(reports) == 1:
        return reports[0].to_dict(include_timings)
    statuses = {r.status for r in reports}
    overall = next((s for s in ("fail", "inconclusive") if s in statuses), "pass")
    return {
        "schema": SCHEMA_VERSION,
        "status": overall,
        "reports": [r.to_dict(include_timings) for r in reports],
    }


def reports_frame(reports: list[VerificationReport]) -> pd.DataFrame:
    rows = [
        {
            "suite": report.suite,
            "name": check.name,
            "status": check.status,
            "hard": check.hard,
            "anchor": check.anchor,
            "ref": check.ref,
        }
        for report in reports
        for check in report.checks
    ]
    return pd.DataFrame(rows, columns=["suite", "name", "status", "hard", "anchor", "ref"])


def render_reports(
    reports: list[VerificationReport], fmt: str = "json", include_timings: bool = False
) -> str:
    """Render verification reports in one of FORMATS."""
    if fmt == "json":
        return dumps_json(reports_to_dict(reports, include_timings))
    if fmt == "csv":
        return reports_frame(reports).to_csv(index=False)
    if fmt == "markdown":
        return SummaryGenerator().generate(reports, include_timings)
    raise ValueError(f"unknown output format {fmt!r}")


def render_table(
    title: str,
    meta: dict[str, Any],
    rows: list[dict[str, Any]],
    columns: list[str],
    fmt: str = "json",
) -> str:
    """Render a measurement (Hilbert function, Betti table, series) with its metadata.

    JSON carries everything; CSV only the rows; Markdown a heading, the
    metadata as a bullet list and the rows as a table.
    """
    frame = pd.DataFrame(rows, columns=columns)
    if fmt == "json":
        return dumps_json({"schema": SCHEMA_VERSION, "kind": title, **meta, "rows": rows})
    if fmt == "csv":
        return frame.to_csv(index=False)
    if fmt == "markdown":
        return SummaryGenerator().generate_table(title, meta, frame)
    raise ValueError(f"unknown output format {fmt!r}")


def write_output(text: str, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path
