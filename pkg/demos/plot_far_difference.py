"""
Signed Fibonacci representations
================================

Far-difference representations, the joint counts of positive and negative
terms, and their statistics.
"""

import math

from zecklab.far_difference import fd_decompose, fd_stats, fib, iter_fd_tables, s_n

for N in (4, 10, 100, 2014, -2014):
    sd = fd_decompose(N)
    print(N, " ".join(f"{'+' if s > 0 else '-'}F{i}" for i, s in sd.terms))

# the integers led by +F_n are exactly (S_{n-1}, S_n]
print([s_n(n) for n in range(1, 12)])
print([fib(n) - s_n(n - 3) - 1 for n in range(2, 13)])

# statistics along the levels
phi = (1 + math.sqrt(5)) / 2
for t in iter_fd_tables(1000):
    if t.level in (10, 100, 1000):
        st = fd_stats(t)
        print(t.level,
              f"EK-n/10={float(st.EK) - t.level / 10:.5f}",
              f"EK-EL={float(st.EK - st.EL):.6f} (phi/2={phi / 2:.6f})",
              f"VarK/n={float(st.VarK) / t.level:.5f}",
              f"corr={st.corr_KL:.5f}",
              f"corr(K+L,K-L)={st.corr_sum_diff:+.5f}")
