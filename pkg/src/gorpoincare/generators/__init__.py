"""Markdown rendering of verification reports."""

from gorpoincare.generators.summary import SummaryGenerator

__all__ = ["SummaryGenerator"]
