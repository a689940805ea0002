"""Greedy generalized Zeckendorf decomposition."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field

from .exceptions import SequenceRangeError, VerificationError
from .plrs import (
    DEFAULT_BUDGET,
    Decomposition,
    PlrsSequence,
    PlrsSpec,
    build_sequence,
    enumerate_legal,
)

__all__ = ["decompose", "value_of", "verify_bijection", "BijectionReport"]


def decompose(seq: PlrsSequence, N: int) -> Decomposition:
    """Legal decomposition of ``N`` over the generated terms of ``seq``.

    At each level the largest multiple of ``H`` that fits is taken, capped so
    the string keeps following the recurrence pattern: while the current
    block matches ``c_1..c_j`` the next coefficient may go up to ``c_{j+1}``,
    except at the last position of a full block where it must stay below
    ``c_L``.

    >>> from zecklab.plrs import PRESETS
    >>> decompose(build_sequence(PRESETS["fibonacci"], 12), 100).coeffs
    (1, 0, 0, 0, 0, 1, 0, 1, 0, 0)
    """
    spec = seq.spec
    if N < 0:
        raise ValueError("N must be non-negative")
    if N == 0:
        return Decomposition(spec, (), 0)
    upper = seq.next_term()
    if N >= upper:
        raise SequenceRangeError(
            f"{N} is not below H_{len(seq) + 1} = {upper}; extend the sequence first"
        )
    c = spec.coeffs
    L = len(c)
    level = bisect_right(seq.terms, N)
    rem = N
    j = 0
    coeffs = []
    for i in range(level, 0, -1):
        h = seq.terms[i - 1]
        cap = c[j] - 1 if j == L - 1 else c[j]
        a = min(rem // h, cap)
        coeffs.append(a)
        rem -= a * h
        j = j + 1 if a == c[j] and j < L - 1 else 0
    if rem:
        raise VerificationError(f"greedy pass left remainder {rem} for N={N}")
    return Decomposition(spec, tuple(coeffs), N)


def value_of(seq: PlrsSequence, d: Decomposition) -> int:
    if d.level > len(seq):
        raise SequenceRangeError(f"decomposition of level {d.level} needs more terms")
    return sum(a * seq.terms[d.level - 1 - i] for i, a in enumerate(d.coeffs))


@dataclass
class BijectionReport:
    spec: PlrsSpec
    level: int
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_bijection(spec: PlrsSpec, n: int, budget: int = DEFAULT_BUDGET) -> BijectionReport:
    """Compare greedy decompositions of ``[H_n, H_{n+1})`` with the exhaustive oracle."""
    oracle = enumerate_legal(spec, n, budget)
    seq = build_sequence(spec, n)
    report = BijectionReport(spec, n)
    for expected in oracle:
        N = expected.value
        report.checked += 1
        try:
            got = decompose(seq, N)
        except (ValueError, VerificationError) as exc:
            report.failures.append((N, f"decompose raised {exc!r}"))
            continue
        if value_of(seq, got) != N:
            report.failures.append((N, "value mismatch"))
        elif got.level != n:
            report.failures.append((N, f"level {got.level} != {n}"))
        elif got.coeffs != expected.coeffs:
            report.failures.append((N, f"greedy {got.coeffs} != oracle {expected.coeffs}"))
    return report
