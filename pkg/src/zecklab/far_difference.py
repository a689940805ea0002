"""
Far-difference representations: signed sums of Fibonacci numbers
(``F_1 = 1, F_2 = 2``) in which same-sign terms are at least 4 indices apart
and opposite-sign terms at least 3.

``S_n = F_n + F_{n-4} + F_{n-8} + ...`` bounds the integers whose
representation leads with ``+F_n``: exactly those in ``(S_{n-1}, S_n]``.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .exceptions import VerificationError

__all__ = [
    "SignedDecomposition",
    "FarDiffTable",
    "FarDiffStats",
    "fib",
    "s_n",
    "fd_decompose",
    "fd_is_valid",
    "enumerate_far_difference",
    "fd_table",
    "iter_fd_tables",
    "fd_stats",
    "fd_gf_series",
]

_FIB: list[int] = [1, 2]


def fib(n: int) -> int:
    """``F_n`` with ``F_1 = 1, F_2 = 2``."""
    if n < 1:
        raise ValueError(f"F_{n} is undefined")
    while len(_FIB) < n:
        _FIB.append(_FIB[-1] + _FIB[-2])
    return _FIB[n - 1]


def s_n(n: int) -> int:
    return sum(fib(i) for i in range(n, 0, -4)) if n > 0 else 0


@dataclass(frozen=True)
class SignedDecomposition:
    terms: tuple  # ((index, sign), ...) with indices strictly decreasing

    def __post_init__(self):
        terms = tuple((int(i), int(s)) for i, s in self.terms)
        object.__setattr__(self, "terms", terms)

    @property
    def value(self) -> int:
        return sum(s * fib(i) for i, s in self.terms)

    @property
    def positives(self) -> int:
        return sum(1 for _, s in self.terms if s > 0)

    @property
    def negatives(self) -> int:
        return sum(1 for _, s in self.terms if s < 0)


def fd_is_valid(sd: SignedDecomposition) -> bool:
    terms = sd.terms
    for i, s in terms:
        if i < 1 or s not in (1, -1):
            return False
    for (i, s), (j, t) in zip(terms, terms[1:]):
        need = 4 if s == t else 3
        if i - j < need:
            return False
    return True


def fd_decompose(N: int) -> SignedDecomposition:
    """The far-difference representation of any integer.

    Repeatedly take ``+F_n`` with ``S_{n-1} < r <= S_n`` and continue on
    ``r - F_n``; a negative remainder flips the sign of what follows.
    """
    sign = -1 if N < 0 else 1
    r = abs(N)
    bounds = [0]
    terms = []
    while r:
        while bounds[-1] < r:
            bounds.append(s_n(len(bounds)))
        n = bisect_left(bounds, r)
        terms.append((n, sign))
        r -= fib(n)
        if r < 0:
            sign, r = -sign, -r
    sd = SignedDecomposition(tuple(terms))
    if not fd_is_valid(sd) or sd.value != N:
        raise VerificationError(f"far-difference construction failed for {N}: {terms}")
    return sd


def enumerate_far_difference(max_index: int) -> list[SignedDecomposition]:
    """Every valid representation using indices ``<= max_index``, the empty one included."""
    out = [SignedDecomposition(())]

    def extend(prefix: tuple, last: int, last_sign: int):
        for sign in (1, -1):
            top = last - (4 if sign == last_sign else 3)
            for i in range(top, 0, -1):
                rep = prefix + ((i, sign),)
                out.append(SignedDecomposition(rep))
                extend(rep, i, sign)

    for i in range(1, max_index + 1):
        for sign in (1, -1):
            out.append(SignedDecomposition(((i, sign),)))
            extend(((i, sign),), i, sign)
    return out


@dataclass(frozen=True)
class FarDiffTable:
    level: int
    grid: np.ndarray  # object array, grid[k, l] = p_{n,k,l}
    total: int

    def __post_init__(self):
        if self.grid.sum() != self.total:
            raise VerificationError(f"level {self.level} counts do not sum to {self.total}")
        if self.grid.shape[0] and any(self.grid[0]):
            raise VerificationError(f"level {self.level} has representations with no positive term")

    @property
    def counts(self) -> dict:
        return {
            (k, l): int(v) for (k, l), v in np.ndenumerate(self.grid) if v
        }


def _trim_square(grid: np.ndarray) -> np.ndarray:
    nz = np.argwhere(grid != 0)
    size = int(nz.max()) + 1 if len(nz) else 1
    return grid[:size, :size]


def _exhaustive_grids(max_level: int) -> dict[int, dict]:
    grids: dict[int, dict] = {n: {} for n in range(1, max_level + 1)}
    for rep in enumerate_far_difference(max_level):
        if rep.terms and rep.terms[0][1] == 1:
            key = (rep.positives, rep.negatives)
            g = grids[rep.terms[0][0]]
            g[key] = g.get(key, 0) + 1
    return grids


def _grid_from_counts(counts: dict) -> np.ndarray:
    size = max((max(key) for key in counts), default=0) + 1
    grid = np.zeros((size, size), dtype=object)
    for (k, l), v in counts.items():
        grid[k, l] = v
    return grid


def iter_fd_tables(n_max: int) -> Iterator[FarDiffTable]:
    """Tables for levels ``1..n_max`` in order.

    Levels up to 4 come from exhaustive search; beyond that

        p_{n,k,l} = p_{n-1,k,l} + p_{n-4,k-1,l} + p_{n-3,l,k-1}

    where the last term has its two indices swapped.
    """
    seeds = _exhaustive_grids(min(4, n_max))
    window: list[np.ndarray] = []
    for n in range(1, n_max + 1):
        if n <= 4:
            grid = _grid_from_counts(seeds[n])
        else:
            prev, g4, g3 = window[-1], window[-4], window[-3].T
            size = max(prev.shape[0], g4.shape[0] + 1, g3.shape[0] + 1)
            grid = np.zeros((size, size), dtype=object)
            grid[: prev.shape[0], : prev.shape[1]] += prev
            grid[1 : g4.shape[0] + 1, : g4.shape[1]] += g4
            grid[1 : g3.shape[0] + 1, : g3.shape[1]] += g3
            grid = _trim_square(grid)
        window.append(grid)
        if len(window) > 4:
            window.pop(0)
        yield FarDiffTable(n, grid, s_n(n) - s_n(n - 1))


def fd_table(n: int) -> FarDiffTable:
    if n < 1:
        raise ValueError("level must be at least 1")
    for table in iter_fd_tables(n):
        pass
    return table


@dataclass(frozen=True)
class FarDiffStats:
    level: int
    EK: Fraction
    EL: Fraction
    VarK: Fraction
    VarL: Fraction
    CovKL: Fraction
    corr_KL: float | None
    corr_sum_diff: float | None


def _corr(cov: Fraction, va: Fraction, vb: Fraction) -> float | None:
    if va == 0 or vb == 0:
        return None
    return math.copysign(math.sqrt(float(cov * cov / (va * vb))), cov)


def fd_stats(table: FarDiffTable) -> FarDiffStats:
    """Exact means, variances and correlations of the positive/negative counts."""
    total = table.total
    if total <= 0:
        raise ValueError("empty table")
    g = table.grid
    k = np.arange(g.shape[0], dtype=object)[:, None]
    l = np.arange(g.shape[1], dtype=object)[None, :]
    sk, sl = int((g * k).sum()), int((g * l).sum())
    skk, sll, skl = int((g * k * k).sum()), int((g * l * l).sum()), int((g * k * l).sum())
    EK, EL = Fraction(sk, total), Fraction(sl, total)
    VarK = Fraction(skk, total) - EK * EK
    VarL = Fraction(sll, total) - EL * EL
    Cov = Fraction(skl, total) - EK * EL
    # Var(K+L), Var(K-L) and Cov(K+L, K-L) = VarK - VarL
    corr_sd = _corr(VarK - VarL, VarK + VarL + 2 * Cov, VarK + VarL - 2 * Cov)
    return FarDiffStats(table.level, EK, EL, VarK, VarL, Cov, _corr(Cov, VarK, VarL), corr_sd)


# -- trivariate generating function -------------------------------------------
# G(x, y, z) = sum p_{n,k,l} x^k y^l z^n.  The recurrence couples G with its
# x<->y swap; solving the resulting 2x2 system gives
#
#   G = (B(x,y) (1 - z - y z^4) + x z^3 B(y,x)) / ((1 - z - x z^4)(1 - z - y z^4) - x y z^6)
#
# where B collects the z^1..z^4 boundary terms.  Coefficients in z are
# dicts {(k, l): int}.


def _dadd(p: dict, q: dict, scale: int = 1, shift: tuple = (0, 0), swap: bool = False) -> dict:
    out = dict(p)
    for (k, l), v in q.items():
        if swap:
            k, l = l, k
        key = (k + shift[0], l + shift[1])
        out[key] = out.get(key, 0) + scale * v
    return {key: v for key, v in out.items() if v}


def _dmul(p: dict, q: dict) -> dict:
    out: dict = {}
    for (a, b), u in p.items():
        for (c, d), v in q.items():
            out[(a + c, b + d)] = out.get((a + c, b + d), 0) + u * v
    return {key: v for key, v in out.items() if v}


def _zmul(P: list, Q: list, order: int) -> list:
    out = [dict() for _ in range(order + 1)]
    for i, p in enumerate(P[: order + 1]):
        if not p:
            continue
        for j, q in enumerate(Q[: order + 1 - i]):
            if q:
                out[i + j] = _dadd(out[i + j], _dmul(p, q))
    return out


def fd_gf_series(n_max: int) -> list[dict]:
    """Coefficients of ``z^0..z^{n_max}`` of the trivariate generating function."""
    seeds = _exhaustive_grids(4)
    p = [dict()] + [seeds[n] for n in range(1, 5)]

    def low(n):
        return p[n] if 1 <= n <= 4 else {}

    B = [dict()]
    for n in range(1, 5):
        b = _dadd(low(n), low(n - 1), scale=-1)
        b = _dadd(b, low(n - 4), scale=-1, shift=(1, 0))
        b = _dadd(b, low(n - 3), scale=-1, shift=(1, 0), swap=True)
        B.append(b)
    B_swap = [_dadd({}, b, swap=True) for b in B]

    one = {(0, 0): 1}
    a_y = [one, {(0, 0): -1}, {}, {}, {(0, 1): -1}]
    num = _zmul(B, a_y, n_max)
    for n, b in enumerate(B_swap):
        if n + 3 <= n_max:
            num[n + 3] = _dadd(num[n + 3], b, shift=(1, 0))

    a_x = [one, {(0, 0): -1}, {}, {}, {(1, 0): -1}]
    den = _zmul(a_x, a_y, n_max)
    if n_max >= 6:
        den[6] = _dadd(den[6], {(1, 1): -1})

    inv = [one]
    for n in range(1, n_max + 1):
        acc: dict = {}
        for i in range(1, n + 1):
            if den[i] and inv[n - i]:
                acc = _dadd(acc, _dmul(den[i], inv[n - i]), scale=-1)
        inv.append(acc)
    return _zmul(num, inv, n_max)
