"""Tests for the gorpoincare package."""
