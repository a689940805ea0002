"""
Generating functions and roots
==============================

Expand the bivariate generating function, compare with the tables, and
look at the roots of the denominator.
"""

from zecklab import PRESETS, PlrsSpec, build_tables
from zecklab.distribution import fibonacci_gf_series, gf_series
from zecklab.spectral import char_poly, growth_rate, lekkerkerker_fit, spec_roots

fib = PRESETS["fibonacci"]

# y / (1 - y - x y^2): the power of x is one less than the summand count
for n, row in enumerate(fibonacci_gf_series(8)):
    print(n, row)

# the general form agrees level by level
spec = PlrsSpec((2, 3, 1))
series = gf_series(spec, 12)
print(all(series[t.level] == t.counts for t in build_tables(spec, 12)))

# the denominator at x = 1 and its smallest root
print(char_poly(spec))
report = spec_roots(spec)
print("dominant", report.dominant_root, "gap", report.min_pairwise_gap)
print("growth", growth_rate(spec).lam, 1 / abs(report.dominant_root))

# roots move with x but stay simple
for x in ("1/2", 1, 2, 4):
    r = spec_roots(spec, x)
    print(x, abs(r.dominant_root), r.has_multiple_root)

# slope and intercept of the mean
fit = lekkerkerker_fit(spec, 50, 200)
print(fit.C, fit.d)
