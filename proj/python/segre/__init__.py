"""Recover the factors of a scrambled tensor product from its simple vectors.

Vectors are lists of ``fractions.Fraction``; inputs may also be ints or
``"p/q"`` strings.
"""

from ._segre import (
    Error,
    Instance,
    Reconstruction,
    complete_square,
    recover_factors,
    run_props,
)

__all__ = [
    "Error",
    "Instance",
    "Reconstruction",
    "complete_square",
    "recover_factors",
    "run_props",
]
