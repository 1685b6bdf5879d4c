"""Markdown summaries of verification reports."""

from pathlib import Path
from typing import Any

import pandas as pd
from jinja2 import Environment, FileSystemLoader, select_autoescape

from gorpoincare.core.models import VerificationReport
from gorpoincare.utils.helpers import format_vector


class SummaryGenerator:
    """Render VerificationReports and Betti tables as Markdown."""

    STATUS_MARKS = {
        "pass": "PASS",
        "fail": "FAIL",
        "inconclusive": "INCONCLUSIVE",
        "skipped": "skipped",
    }

    def __init__(self, template: str = "report.md.j2"):
        self.template = template
        self._setup_templates()

    def _setup_templates(self) -> None:
        """Set up the Jinja2 template environment."""
        template_dir = Path(__file__).parent / "templates"
        self.env = Environment(
            loader=FileSystemLoader(template_dir),
            autoescape=select_autoescape(["html", "xml"]),
            trim_blocks=True,
            lstrip_blocks=True,
        )
        self.env.filters["status_mark"] = self._status_mark
        self.env.filters["vector"] = self._format_value
        self.env.filters["witness"] = self._format_witness

    def generate(self, reports: list[VerificationReport], include_timings: bool = False) -> str:
        """Render one Markdown document covering all given reports."""
        template = self.env.get_template(self.template)
        context = {
            "reports": [self._report_context(r, include_timings) for r in reports],
            "overall": self._overall(reports),
        }
        return template.render(**context).rstrip() + "\n"

    def generate_table(
        self,
        title: str,
        meta: dict[str, Any],
        frame: pd.DataFrame,
        template: str = "table.md.j2",
    ) -> str:
        """Render a measurement table with its metadata as Markdown."""
        rows = [list(row) for row in frame.itertuples(index=False)]
        text = self.env.get_template(template).render(
            title=title, meta=meta, columns=[str(c) for c in frame.columns], rows=rows
        )
        return text.rstrip() + "\n"

    def _report_context(self, report: VerificationReport, include_timings: bool) -> dict[str, Any]:
        return {
            "suite": report.suite,
            "status": report.status,
            "instance": report.instance,
            "counts": report.counts(),
            "checks": report.checks,
            "timings": report.timings if include_timings else {},
        }

    @staticmethod
    def _overall(reports: list[VerificationReport]) -> str:
        statuses = {r.status for r in reports}
        for status in ("fail", "inconclusive"):
            if status in statuses:
                return status
        return "pass"

    def _status_mark(self, status: str) -> str:
        return self.STATUS_MARKS.get(status, status)

    @staticmethod
    def _format_value(value: Any) -> str:
        if isinstance(value, (list, tuple)) and all(isinstance(v, int) for v in value):
            return format_vector(value)
        return str(value)

    def _format_witness(self, witness: dict[str, Any]) -> str:
        """Compact one-line rendering; nested dicts are shown by their keys only."""
        parts = []
        for key in sorted(witness):
            value = witness[key]
            if isinstance(value, dict):
                parts.append(f"{key}: {{{', '.join(sorted(map(str, value)))}}}")
            else:
                parts.append(f"{key}: {self._format_value(value)}")
        return "; ".join(parts)
