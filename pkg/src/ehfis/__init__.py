"""Fixed-parameter independent set search in even-hole-free graphs."""

from .cover import isehf_solve
from .graph import Graph
from .tisehf import tisehf_solve

__all__ = ["Graph", "isehf_solve", "tisehf_solve"]
