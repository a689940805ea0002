"""
Exact distribution of the number of summands.

``p_{n,k}`` counts the integers of ``[H_n, H_{n+1})`` whose legal
decomposition has exactly ``k`` summands (with multiplicity).  Rows are
built by the linear recurrence

    p_{n+1,k} = sum_{m=0}^{L-1} sum_{j=s_m}^{s_{m+1}-1} p_{n-m,k-j}

seeded from exhaustive enumeration, and every row is checked to sum to
``Delta_n = H_{n+1} - H_n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .exceptions import VerificationError
from .plrs import DEFAULT_BUDGET, PlrsSpec, build_sequence, summand_histogram

__all__ = [
    "DistributionTable",
    "SummandStats",
    "GaussianMetrics",
    "fib_count_closed_form",
    "build_table",
    "build_tables",
    "gf_series",
    "fibonacci_gf_series",
    "moments",
    "gaussian_metrics",
    "double_factorial",
]


@dataclass(frozen=True)
class DistributionTable:
    spec: PlrsSpec
    level: int
    counts: dict  # k -> p_{n,k}, zero entries omitted, increasing k
    delta: int

    def __post_init__(self):
        if any(v < 0 for v in self.counts.values()):
            raise VerificationError(f"negative count at level {self.level}")
        if sum(self.counts.values()) != self.delta:
            raise VerificationError(
                f"level {self.level} counts sum to {sum(self.counts.values())}, expected {self.delta}"
            )

    @property
    def mean(self) -> Fraction:
        return Fraction(sum(k * v for k, v in self.counts.items()), self.delta)

    def polynomial(self) -> list[int]:
        """Coefficients of ``g(x) = sum_k p_{n,k} x^k``, constant term first."""
        if not self.counts:
            return []
        g = [0] * (max(self.counts) + 1)
        for k, v in self.counts.items():
            g[k] = v
        return g


def _row_to_counts(row) -> dict:
    return {k: v for k, v in enumerate(row) if v}


def _counts_to_row(counts: dict) -> list[int]:
    row = [0] * (max(counts) + 1) if counts else []
    for k, v in counts.items():
        row[k] = v
    return row


def fib_count_closed_form(n: int, j: int) -> int:
    """Number of ``x`` in ``[F_n, F_{n+1})`` with exactly ``j`` summands.

    Stars and bars gives ``binom(n-1-k, k)`` for ``k = j - 1`` extra summands
    beyond the leading ``F_n``; out-of-range binomials are zero.
    """
    if n < 1 or j < 1:
        raise ValueError("need n >= 1 and j >= 1")
    k = j - 1
    top = n - 1 - k
    if top < 0 or k > top:
        return 0
    return comb(top, k)


def _seed_levels(spec: PlrsSpec) -> int:
    return spec.L + 2


@lru_cache(maxsize=None)
def _check_overlap(spec: PlrsSpec, budget: int) -> None:
    # Recurrence rows past the seed window must agree with the oracle.
    seed = _seed_levels(spec)
    seq = build_sequence(spec, seed + 10)
    hi = seed
    for n in range(seed + 1, seed + 7):
        if seq.delta(n) > budget:
            break
        hi = n
    if hi == seed:
        return
    rows = _recurrence_rows(spec, hi, budget)
    for n in range(seed + 1, hi + 1):
        if _row_to_counts(rows[n]) != summand_histogram(spec, n, budget):
            raise VerificationError(f"recurrence disagrees with enumeration at level {n}")


def _recurrence_rows(spec: PlrsSpec, n_max: int, budget: int) -> list[list[int]]:
    sums = spec.partial_sums
    L = spec.L
    seed = min(_seed_levels(spec), n_max)
    rows: list[list[int]] = [[]]
    for n in range(1, seed + 1):
        rows.append(_counts_to_row(summand_histogram(spec, n, budget)))
    for n in range(seed, n_max):
        width = max(len(rows[n - m]) + sums[m + 1] - 1 for m in range(L) if n - m >= 1)
        new = [0] * width
        for m in range(L):
            src = rows[n - m] if n - m >= 1 else []
            for j in range(sums[m], sums[m + 1]):
                for k, v in enumerate(src):
                    if v:
                        new[k + j] += v
        while new and new[-1] == 0:
            new.pop()
        rows.append(new)
    return rows


def build_tables(spec: PlrsSpec, n_max: int, budget: int = DEFAULT_BUDGET) -> list[DistributionTable]:
    """Tables for levels ``1..n_max`` (list index ``n - 1``)."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    _check_overlap(spec, budget)
    rows = _recurrence_rows(spec, n_max, budget)
    seq = build_sequence(spec, n_max + 1)
    return [
        DistributionTable(spec, n, _row_to_counts(rows[n]), seq.delta(n)) for n in range(1, n_max + 1)
    ]


def build_table(spec: PlrsSpec, n: int, budget: int = DEFAULT_BUDGET) -> DistributionTable:
    return build_tables(spec, n, budget)[-1]


# -- generating functions ---------------------------------------------------
# Bivariate series are lists indexed by the power of y; each entry is a list
# of integer coefficients in x, constant term first.


def _padd(p: list[int], q: list[int], shift: int = 0, scale: int = 1) -> list[int]:
    out = list(p) + [0] * max(0, len(q) + shift - len(p))
    for i, v in enumerate(q):
        out[i + shift] += scale * v
    return out


def _pmul(p: list[int], q: list[int]) -> list[int]:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _trim(p: list[int]) -> list[int]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _denominator(spec: PlrsSpec) -> list[list[int]]:
    """``A(x, y) = 1 - sum_m sum_{j=s_m}^{s_{m+1}-1} x^j y^{m+1}`` as a series in y."""
    sums = spec.partial_sums
    A = [[1]]
    for m in range(spec.L):
        A.append([0] * sums[m] + [-1] * (sums[m + 1] - sums[m]))
    return A


def _series_inverse(A: list[list[int]], order: int) -> list[list[int]]:
    # A[0] == [1], so Q = 1/A has integer coefficients.
    Q: list[list[int]] = [[1]]
    for n in range(1, order + 1):
        acc: list[int] = []
        for i in range(1, min(n, len(A) - 1) + 1):
            acc = _padd(acc, _pmul(A[i], Q[n - i]), scale=-1)
        Q.append(_trim(acc))
    return Q


def gf_series(spec: PlrsSpec, n_max: int, budget: int = DEFAULT_BUDGET) -> list[dict]:
    """Coefficients of ``B(x, y) / A(x, y)`` up to ``y^{n_max}``.

    Entry ``n`` maps ``k`` to the coefficient of ``x^k y^n``, which is
    ``p_{n,k}``.  The numerator ``B`` is the product ``A * P`` truncated to
    degree ``L`` in ``y``, with the low rows of ``P`` taken from exhaustive
    enumeration.  The expansion multiplies ``B`` by the power-series inverse
    of ``A`` and never runs the row recurrence itself.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    L = spec.L
    A = _denominator(spec)
    low = [[]] + [_counts_to_row(summand_histogram(spec, n, budget)) for n in range(1, L + 1)]
    B: list[list[int]] = []
    for N in range(L + 1):
        acc: list[int] = []
        for i in range(0, min(N, L) + 1):
            if N - i >= 1:
                acc = _padd(acc, _pmul(A[i], low[N - i]))
        B.append(_trim(acc))
    Q = _series_inverse(A, n_max)
    out = []
    for n in range(n_max + 1):
        acc = []
        for i in range(0, min(n, L) + 1):
            acc = _padd(acc, _pmul(B[i], Q[n - i]))
        out.append(_row_to_counts(_trim(acc)))
    return out


def fibonacci_gf_series(n_max: int) -> list[list[int]]:
    """Raw coefficients of ``y / (1 - y - x y^2)`` up to ``y^{n_max}``.

    The coefficient of ``x^k y^n`` here counts the integers of level ``n``
    with ``k`` summands besides the leading ``F_n``, so it equals
    ``p_{n,k+1}``.
    """
    a: list[list[int]] = [[], [1]]
    for n in range(2, n_max + 1):
        a.append(_padd(a[n - 1], a[n - 2], shift=1))
    return a[: n_max + 1]


# -- moments -----------------------------------------------------------------


@dataclass(frozen=True)
class SummandStats:
    raw_moments: tuple  # E[K^r] for r = 0..max_order, exact
    mean: Fraction
    variance: Fraction
    centered_moments: dict  # r -> E[(K - mean)^r], exact, r >= 2
    standardized_moments: dict  # r -> float or None, r >= 3

    @property
    def mean_float(self) -> float:
        return float(self.mean)

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)


def _raw_power_sums(counts: dict, max_order: int) -> list[int]:
    return [sum(k**r * v for k, v in counts.items()) for r in range(max_order + 1)]


def _operator_power_sums(g: list[int], max_order: int) -> list[int]:
    # Repeatedly apply x d/dx to g and evaluate at x = 1.
    out = []
    cur = list(g)
    for _ in range(max_order + 1):
        out.append(sum(cur))
        deriv = [i * cur[i] for i in range(1, len(cur))]
        cur = [0] + deriv
    return out


def _standardize(central: Fraction, variance: Fraction, r: int) -> float:
    if r % 2 == 0:
        return float(central / variance ** (r // 2))
    return float(central / variance ** (r // 2)) / math.sqrt(variance)


def moments(table: DistributionTable, max_order: int = 4) -> SummandStats:
    """Exact moments of the summand count at one level.

    Raw power sums are computed twice, directly and through the operator
    ``x d/dx`` applied to the level polynomial, and must agree exactly.
    """
    if max_order < 2:
        raise ValueError("max_order must be at least 2")
    if not table.counts:
        raise ValueError("empty table")
    direct = _raw_power_sums(table.counts, max_order)
    via_operator = _operator_power_sums(table.polynomial(), max_order)
    if direct != via_operator:
        raise VerificationError("moment paths disagree")
    delta = table.delta
    raw = tuple(Fraction(s, delta) for s in direct)
    s1 = direct[1]
    central = {}
    for r in range(2, max_order + 1):
        num = sum(v * (k * delta - s1) ** r for k, v in table.counts.items())
        central[r] = Fraction(num, delta ** (r + 1))
    variance = central[2]
    if variance == 0:
        standardized = {r: None for r in range(3, max_order + 1)}
    else:
        standardized = {r: _standardize(central[r], variance, r) for r in range(3, max_order + 1)}
    return SummandStats(raw, raw[1], variance, central, standardized)


def double_factorial(n: int) -> int:
    return math.prod(range(n, 0, -2)) if n > 0 else 1


@dataclass(frozen=True)
class GaussianMetrics:
    skewness: float
    excess_kurtosis: float
    standardized_even_moments: dict  # 2m -> (observed, (2m-1)!!)
    ks_distance: float


def _normal_cdf(z: float) -> float:
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


def ks_distance(counts: dict, delta: int, mean: Fraction, variance: Fraction) -> float:
    """Sup distance between the standardized lattice CDF and the normal CDF.

    The lattice CDF jumps at each integer ``k``; it is compared with the
    normal CDF at the half-integer ``k + 1/2`` just past each jump, and at the
    half-integer before the smallest support point.
    """
    sd = math.sqrt(variance)
    mu = float(mean)
    ks = sorted(counts)
    worst = _normal_cdf((ks[0] - 0.5 - mu) / sd)
    cum = 0
    for k in ks:
        cum += counts[k]
        worst = max(worst, abs(float(Fraction(cum, delta)) - _normal_cdf((k + 0.5 - mu) / sd)))
    return worst


def gaussian_metrics(table: DistributionTable, max_even_order: int = 6) -> GaussianMetrics:
    top = max(4, max_even_order + max_even_order % 2)
    stats = moments(table, top)
    if stats.variance == 0:
        raise ValueError(f"level {table.level} has zero variance")
    sm = stats.standardized_moments
    even = {2: (float(stats.centered_moments[2] / stats.variance), 1)}
    for r in range(4, top + 1, 2):
        even[r] = (sm[r], double_factorial(r - 1))
    return GaussianMetrics(
        skewness=sm[3],
        excess_kurtosis=sm[4] - 3.0,
        standardized_even_moments=even,
        ks_distance=ks_distance(table.counts, table.delta, stats.mean, stats.variance),
    )
