"""Exact-arithmetic toolkit for generalized Zeckendorf decompositions.

Submodules:

- ``plrs``: recurrence specs, sequence terms, legality, exhaustive enumeration
- ``zeckendorf``: greedy decomposition and bijection checks
- ``distribution``: exact summand-count tables, generating functions, moments
- ``spectral``: characteristic polynomial roots, growth rate, mean-slope fit
- ``far_difference``: signed Fibonacci representations and their statistics
"""

from .exceptions import BudgetExceeded, SequenceRangeError, VerificationError
from .plrs import (
    PRESETS,
    Decomposition,
    PlrsSequence,
    PlrsSpec,
    build_sequence,
    enumerate_legal,
    is_legal,
    load_spec,
)
from .zeckendorf import decompose, value_of, verify_bijection
from .distribution import build_table, build_tables, gaussian_metrics, moments

__version__ = "0.1.0"
