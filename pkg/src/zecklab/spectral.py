"""Characteristic polynomial, roots, growth rate and the mean-slope fit."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np
import sympy

from .distribution import build_tables
from .exceptions import VerificationError
from .plrs import PlrsSpec, build_sequence

__all__ = [
    "RootReport",
    "GrowthRate",
    "LekkerkerkerFit",
    "char_poly",
    "find_roots",
    "spec_roots",
    "growth_rate",
    "lekkerkerker_fit",
    "GAP_TOLERANCE",
]

GAP_TOLERANCE = 1e-8
POLISH_TOLERANCE = 1e-12
RESIDUAL_TOLERANCE = 1e-10


def char_poly(spec: PlrsSpec, x=1) -> tuple:
    """Coefficients of ``A(y) = 1 - sum_m sum_{j=s_m}^{s_{m+1}-1} x^j y^{m+1}``.

    Returned constant term first.  Integer, Fraction or decimal-string ``x``
    keeps the coefficients exact; a float ``x`` gives float coefficients.
    """
    if isinstance(x, str):
        x = Fraction(x)
    elif isinstance(x, Rational):
        x = Fraction(x)
    if x <= 0:
        raise ValueError("x must be positive")
    sums = spec.partial_sums
    coeffs = [Fraction(1) if isinstance(x, Fraction) else 1.0]
    for m in range(spec.L):
        coeffs.append(-sum(x**j for j in range(sums[m], sums[m + 1])))
    return tuple(coeffs)


@dataclass(frozen=True)
class RootReport:
    x_value: float | None
    poly_coeffs: tuple
    roots: tuple
    dominant: int
    min_pairwise_gap: float
    has_multiple_root: bool
    residuals: tuple

    @property
    def dominant_root(self) -> complex:
        return self.roots[self.dominant]


def _horner(coeffs_desc: np.ndarray, y: complex) -> tuple[complex, complex]:
    p, dp = 0j, 0j
    for c in coeffs_desc:
        dp = dp * y + p
        p = p * y + c
    return p, dp


def _newton(desc: np.ndarray, r: complex) -> complex:
    for _ in range(50):
        p, dp = _horner(desc, r)
        if dp == 0:
            break
        step = p / dp
        r -= step
        if abs(step) <= POLISH_TOLERANCE * max(1.0, abs(r)):
            break
    return r


def _merge_clusters(desc: np.ndarray, roots: list[complex]) -> list[complex]:
    # A double root comes out of the eigenvalue solver split by about
    # sqrt(machine epsilon).  A close pair is collapsed onto the nearby zero
    # of A' when A itself vanishes there to machine precision.
    deriv = np.polyder(desc)
    scale = 1.0 + float(np.max(np.abs(desc)))
    roots = list(roots)
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            a, b = roots[i], roots[j]
            if abs(a - b) > 1e-4 * max(1.0, abs(a)):
                continue
            z = _newton(deriv, (a + b) / 2)
            if abs(_horner(desc, z)[0]) <= 1e-14 * scale:
                roots[i] = roots[j] = z
    return roots


def _exact_repeated_root(poly: tuple) -> bool:
    y = sympy.Symbol("y")
    p = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(poly)], y)
    return p.degree() >= 2 and sympy.discriminant(p) == 0


def find_roots(poly, tolerance: float = GAP_TOLERANCE, x_value=None) -> RootReport:
    """All complex roots of a polynomial given constant term first.

    Roots come from the companion-matrix eigenvalues and are then polished by
    Newton steps.  A repeated root is flagged when two roots are closer than
    ``tolerance``, or, for exact rational coefficients, when the discriminant
    vanishes.
    """
    poly = tuple(poly)
    if len(poly) < 2:
        raise ValueError("polynomial must have degree at least 1")
    if poly[-1] == 0:
        raise ValueError("leading coefficient is zero")
    desc = np.array([complex(c) for c in reversed(poly)])
    polished = [_newton(desc, complex(r)) for r in np.roots(desc)]
    polished = [complex(r) for r in _merge_clusters(desc, polished)]
    scale = 1.0 + max(abs(c) for c in desc)
    residuals = tuple(float(abs(_horner(desc, r)[0])) for r in polished)
    if any(res >= RESIDUAL_TOLERANCE * scale for res in residuals):
        raise VerificationError(f"root residuals too large: {residuals}")
    gaps = [float(abs(a - b)) for i, a in enumerate(polished) for b in polished[i + 1 :]]
    min_gap = min(gaps) if gaps else math.inf
    multiple = bool(min_gap < tolerance)
    if not multiple and all(isinstance(c, (int, Fraction)) for c in poly):
        multiple = _exact_repeated_root(tuple(Fraction(c) for c in poly))
    dominant = min(range(len(polished)), key=lambda i: abs(polished[i]))
    return RootReport(
        x_value=None if x_value is None else float(x_value),
        poly_coeffs=poly,
        roots=tuple(polished),
        dominant=dominant,
        min_pairwise_gap=min_gap,
        has_multiple_root=multiple,
        residuals=residuals,
    )


def spec_roots(spec: PlrsSpec, x=1, tolerance: float = GAP_TOLERANCE) -> RootReport:
    if isinstance(x, str):
        x = Fraction(x)
    poly = char_poly(spec, x)
    return find_roots(poly, tolerance, x_value=x)


@dataclass(frozen=True)
class GrowthRate:
    lam: float
    ratio_residual: float


def growth_rate(spec: PlrsSpec, n_probe: int = 100) -> GrowthRate:
    """Growth rate from consecutive terms, checked against the dominant root."""
    if n_probe < 2:
        raise ValueError("n_probe must be at least 2")
    seq = build_sequence(spec, n_probe)
    lam = float(Fraction(seq.H(n_probe), seq.H(n_probe - 1)))
    report = spec_roots(spec, 1)
    return GrowthRate(lam, float(abs(lam - 1.0 / abs(report.dominant_root))))


@dataclass(frozen=True)
class LekkerkerkerFit:
    C: float
    d: float
    residual_tail: list  # |mu_n - (C n + d)| for n in [n_lo, n_hi]
    C_exact: Fraction
    d_exact: Fraction
    n_lo: int
    n_hi: int
    slope_errors: list  # |(mu_n - mu_{n-1}) - C| for n in (n_lo, n_hi]


def lekkerkerker_fit(spec: PlrsSpec, n_lo: int, n_hi: int) -> LekkerkerkerFit:
    """Fit ``mu_n ~ C n + d`` from exact means.

    ``C`` is the average first difference of the mean over the top half of
    the window and ``d`` the average of ``mu_n - C n`` there; both exact.
    """
    if n_lo < 2 or n_hi - n_lo < 10:
        raise ValueError("window must satisfy n_lo >= 2 and n_hi - n_lo >= 10")
    tables = build_tables(spec, n_hi)
    mu = {n: tables[n - 1].mean for n in range(n_lo - 1, n_hi + 1)}
    tail = range(n_hi - (n_hi - n_lo) // 2, n_hi + 1)
    C = sum((mu[n] - mu[n - 1] for n in tail), Fraction(0)) / len(tail)
    d = sum((mu[n] - C * n for n in tail), Fraction(0)) / len(tail)
    residual = [float(abs(mu[n] - C * n - d)) for n in range(n_lo, n_hi + 1)]
    slope = [float(abs(mu[n] - mu[n - 1] - C)) for n in range(n_lo + 1, n_hi + 1)]
    return LekkerkerkerFit(float(C), float(d), residual, C, d, n_lo, n_hi, slope)
