"""Exact index computations in the completed discrete cluster category of type A."""

from cluster_index.cli import app
from cluster_index.config import Settings, settings

__version__ = "0.1.0"
__all__ = ["Settings", "settings", "app"]
