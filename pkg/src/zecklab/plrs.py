"""
Positive linear recurrence sequences and legal decompositions.

A PLRS is fixed by non-negative integer coefficients ``c_1, ..., c_L`` with
``c_1, c_L > 0``.  Its terms are

    H_1 = 1
    H_{n+1} = c_1 H_n + ... + c_n H_1 + 1          (1 <= n < L)
    H_{n+1} = c_1 H_n + ... + c_L H_{n+1-L}        (n >= L)

A decomposition of level ``m`` is a coefficient string ``a_1 .. a_m`` read as
``a_1 H_m + a_2 H_{m-1} + ... + a_m H_1``.  All indexing is 1-based in
docstrings and 0-based in code.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from .exceptions import BudgetExceeded, VerificationError

__all__ = [
    "PRESETS",
    "DEFAULT_BUDGET",
    "PlrsSpec",
    "PlrsSequence",
    "Decomposition",
    "build_sequence",
    "is_legal",
    "enumerate_legal",
    "load_spec",
]

DEFAULT_BUDGET = 100_000


@dataclass(frozen=True)
class PlrsSpec:
    coeffs: tuple[int, ...]
    partial_sums: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("a PLRS needs at least one coefficient")
        if any(c < 0 for c in coeffs):
            raise ValueError(f"coefficients must be non-negative, got {coeffs}")
        if coeffs[0] == 0 or coeffs[-1] == 0:
            raise ValueError(f"first and last coefficients must be positive, got {coeffs}")
        if coeffs == (1,):
            raise ValueError("coefficients (1,) give the constant sequence 1, 1, 1, ...")
        object.__setattr__(self, "coeffs", coeffs)
        sums = [0]
        for c in coeffs:
            sums.append(sums[-1] + c)
        object.__setattr__(self, "partial_sums", tuple(sums))

    @property
    def L(self) -> int:
        return len(self.coeffs)

    def to_json(self) -> str:
        return json.dumps({"coeffs": list(self.coeffs)})

    @classmethod
    def from_json(cls, text: str) -> "PlrsSpec":
        obj = json.loads(text)
        if isinstance(obj, list):
            return cls(tuple(obj))
        if not isinstance(obj, dict) or "coeffs" not in obj:
            raise ValueError('spec JSON must look like {"coeffs": [c_1, ..., c_L]}')
        return cls(tuple(obj["coeffs"]))


PRESETS = {
    "fibonacci": PlrsSpec((1, 1)),
    "decimal": PlrsSpec((10,)),
}


def load_spec(text: str) -> PlrsSpec:
    """Resolve a preset name, inline JSON, or a path to a JSON file."""
    text = text.strip()
    if text in PRESETS:
        return PRESETS[text]
    if text[:1] in "{[":
        return PlrsSpec.from_json(text)
    return PlrsSpec.from_json(Path(text).read_text())


@dataclass(frozen=True)
class PlrsSequence:
    spec: PlrsSpec
    terms: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.terms)

    def H(self, n: int) -> int:
        """Term ``H_n`` (1-based)."""
        if not 1 <= n <= len(self.terms):
            raise IndexError(f"H_{n} is outside the generated range 1..{len(self.terms)}")
        return self.terms[n - 1]

    def next_term(self) -> int:
        """``H_{N+1}`` for a sequence holding ``H_1..H_N``; does not extend the sequence."""
        return _next_term(self.spec.coeffs, self.terms)

    def delta(self, n: int) -> int:
        """Number of integers in ``[H_n, H_{n+1})``."""
        upper = self.next_term() if n == len(self.terms) else self.H(n + 1)
        return upper - self.H(n)


def _next_term(coeffs: Sequence[int], terms: Sequence[int]) -> int:
    n = len(terms)
    if n == 0:
        return 1
    L = len(coeffs)
    depth = min(n, L)
    total = sum(coeffs[i] * terms[n - 1 - i] for i in range(depth))
    return total + 1 if n < L else total


def build_sequence(spec: PlrsSpec, count: int) -> PlrsSequence:
    if count < 1:
        raise ValueError("count must be at least 1")
    terms: list[int] = []
    for _ in range(count):
        terms.append(_next_term(spec.coeffs, terms))
    return PlrsSequence(spec, tuple(terms))


def is_legal(spec: PlrsSpec, coeffs: Iterable[int]) -> bool:
    """Decide whether a coefficient string is a legal decomposition.

    The string is consumed block by block.  Each block either is a proper
    prefix ``c_1..c_t`` (t < L) running to the end of the string, or matches
    ``c_1..c_{s-1}`` and then drops strictly below ``c_s``; the run of zeros
    after a block is skipped before the next block starts.
    """
    a = tuple(coeffs)
    c = spec.coeffs
    L, m = len(c), len(a)
    if m == 0 or a[0] <= 0 or any(x < 0 for x in a):
        return False
    i = 0
    while i < m:
        rest = m - i
        if rest < L and a[i:] == c[:rest]:
            return True
        j = 0
        while j < L and i + j < m and a[i + j] == c[j]:
            j += 1
        if j == L:
            # the whole recurrence pattern: collapses into a single higher term
            return False
        if a[i + j] > c[j]:
            return False
        i += j + 1
        while i < m and a[i] == 0:
            i += 1
    return True


@dataclass(frozen=True)
class Decomposition:
    """Legal coefficient string with its value.

    ``coeffs[0]`` multiplies ``H_level``; the empty string stands for 0.
    """

    spec: PlrsSpec
    coeffs: tuple[int, ...]
    value: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if self.coeffs and not is_legal(self.spec, self.coeffs):
            raise ValueError(f"illegal coefficient string {self.coeffs} for {self.spec.coeffs}")

    @property
    def level(self) -> int:
        return len(self.coeffs)

    @property
    def summands(self) -> int:
        return sum(self.coeffs)


def _legal_strings(spec: PlrsSpec, n: int) -> list[tuple[int, ...]]:
    # Generated from the block grammar directly; the verdict of is_legal is
    # never consulted here so the two stay independent of each other.
    c = spec.coeffs
    L = len(c)
    memo: dict[int, list[tuple[int, ...]]] = {}

    def of_length(m: int) -> list[tuple[int, ...]]:
        if m in memo:
            return memo[m]
        out: list[tuple[int, ...]] = []
        if m < L:
            out.append(c[:m])
        for s in range(1, min(L, m) + 1):
            lo = 1 if s == 1 else 0
            for a_s in range(lo, c[s - 1]):
                head = c[: s - 1] + (a_s,)
                rem = m - s
                out.append(head + (0,) * rem)
                for t in range(1, rem + 1):
                    pad = head + (0,) * (rem - t)
                    out.extend(pad + tail for tail in of_length(t))
        memo[m] = out
        return out

    return of_length(n)


def enumerate_legal(spec: PlrsSpec, n: int, budget: int = DEFAULT_BUDGET) -> list[Decomposition]:
    """Every legal decomposition of level ``n``, in increasing order of value.

    Refuses with :class:`BudgetExceeded` when the level holds more than
    ``budget`` integers.  The values are checked to be exactly the integers of
    ``[H_n, H_{n+1})``.
    """
    if n < 1:
        raise ValueError("level must be at least 1")
    seq = build_sequence(spec, n + 1)
    lo, hi = seq.H(n), seq.H(n + 1)
    if hi - lo > budget:
        raise BudgetExceeded(f"level {n} holds {hi - lo} integers, budget is {budget}")
    weights = seq.terms[:n][::-1]
    out = []
    for coeffs in _legal_strings(spec, n):
        value = sum(a * h for a, h in zip(coeffs, weights))
        out.append(Decomposition(spec, coeffs, value))
    out.sort(key=lambda d: d.value)
    values = [d.value for d in out]
    if values != list(range(lo, hi)):
        raise VerificationError(
            f"legal strings of level {n} do not biject onto [{lo}, {hi}) for {spec.coeffs}"
        )
    return out


@lru_cache(maxsize=64)
def summand_histogram(spec: PlrsSpec, n: int, budget: int = DEFAULT_BUDGET) -> dict[int, int]:
    """Summand counts of the exhaustive enumeration at level ``n``."""
    hist: dict[int, int] = {}
    for d in enumerate_legal(spec, n, budget):
        hist[d.summands] = hist.get(d.summands, 0) + 1
    return dict(sorted(hist.items()))
