"""Alternating paths in edge-colored complete bipartite and complete graphs."""

__version__ = "0.1.0"

from .core import (
    BLUE,
    RED,
    BudgetExceeded,
    Code,
    CodegreeTable,
    ColoringMatrix,
    CompleteColoring,
    PathRecord,
    codegree_table,
    from_code,
    hamming,
    to_code,
    validate,
)

__all__ = [
    "BLUE", "RED", "BudgetExceeded", "Code", "CodegreeTable", "ColoringMatrix",
    "CompleteColoring", "PathRecord", "codegree_table", "from_code", "hamming",
    "to_code", "validate",
]
