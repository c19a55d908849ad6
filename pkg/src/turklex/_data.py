"""Locate data files shipped inside the package."""

from importlib import resources
from pathlib import Path


def bundled_path(name: str) -> Path:
    """Return the on-disk path of a packaged data file."""
    return Path(str(resources.files("turklex").joinpath("data", name)))
