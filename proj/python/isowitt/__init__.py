"""Exact decision and construction procedures for isometries of even unimodular lattices.

Every function mirrors an ``isowitt`` CLI subcommand and returns the same
payload shape as its ``--json`` output: rationals are strings ``"p/q"`` or
``"n"``, polynomials are lists of integer strings (constant term first),
matrices are lists of rows of rational strings, and square classes are plain
integers (or decimal strings when too large).
"""

from isowitt._core import (
    BudgetExceeded,
    __version__,
    boundary,
    even_criterion,
    feasibility,
    gate,
    lattice,
    realize,
    spinor_norm,
    splitting,
    trace_form,
    unimodular_witness,
    witt_equal,
    witt_neutral,
)

__all__ = [
    "BudgetExceeded",
    "__version__",
    "boundary",
    "even_criterion",
    "feasibility",
    "gate",
    "lattice",
    "realize",
    "spinor_norm",
    "splitting",
    "trace_form",
    "unimodular_witness",
    "witt_equal",
    "witt_neutral",
]
