"""Batch command line for verification runs."""

from .config import JOB_TYPES, THEOREMS, load_config, parse_config
from .main import list_jobs, main, run

__all__ = ["JOB_TYPES", "THEOREMS", "list_jobs", "load_config", "main", "parse_config", "run"]
