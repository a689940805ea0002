"""
Distribution of the number of summands
======================================

Exact counts from the level recursion, their moments, and how close the
standardized distribution is to a Gaussian.
"""

import math

from zecklab import PRESETS, PlrsSpec, build_table, gaussian_metrics, moments

fib = PRESETS["fibonacci"]

# counts at a small level: binom(n-1-k, k) for k + 1 summands
table = build_table(fib, 10)
print(table.counts)
print([math.comb(9 - k, k) for k in range(5)])

# exact moments
stats = moments(table, 4)
print("mean", stats.mean, "variance", stats.variance)

# the mean grows linearly with slope 1/(phi^2 + 1)
phi = (1 + math.sqrt(5)) / 2
a, b = build_table(fib, 199), build_table(fib, 200)
print(float(b.mean - a.mean), 1 / (phi**2 + 1))

# Gaussian diagnostics shrink as the level grows
for spec in (fib, PlrsSpec((2, 3, 1))):
    for n in (10, 100, 1000):
        m = gaussian_metrics(build_table(spec, n))
        print(spec.coeffs, n,
              f"skew={m.skewness:+.4f} exkurt={m.excess_kurtosis:+.4f} "
              f"m6={m.standardized_even_moments[6][0]:.3f} ks={m.ks_distance:.4f}")
