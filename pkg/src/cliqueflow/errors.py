"""Exceptions shared across the package."""

from __future__ import annotations


class LimitExceeded(ValueError):
    """An exhaustive routine refused an instance larger than its configured cap."""
