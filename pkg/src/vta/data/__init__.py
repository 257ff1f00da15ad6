"""Bundled sample data (benchmark task files)."""

from importlib import resources


def tasks_dir():
    """Filesystem path of the bundled task directory."""
    return resources.files(__name__) / "tasks"
