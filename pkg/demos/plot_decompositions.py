"""
Greedy decompositions over a recurrence
=======================================

Build a few recurrences, decompose integers greedily and check the result
against the exhaustive list of legal strings.
"""

from zecklab import PlrsSpec, build_sequence, decompose, enumerate_legal, verify_bijection

# Fibonacci with H_1 = 1, H_2 = 2
fib = PlrsSpec((1, 1))
seq = build_sequence(fib, 12)
print(seq.terms)

d = decompose(seq, 100)
print(100, "->", [seq.H(d.level - i) for i, a in enumerate(d.coeffs) if a])

# a recurrence with three coefficients; multiplicities can exceed 1
spec = PlrsSpec((2, 3, 1))
seq = build_sequence(spec, 8)
print(seq.terms)
d = decompose(seq, 184)
print(184, "->", d.coeffs, "with", d.summands, "summands")

# every integer of a level shows up exactly once
for n in range(1, 7):
    report = verify_bijection(spec, n)
    print(f"level {n}: {report.checked} integers, ok={report.ok}")

# the strings of level 3, smallest value first
for legal in enumerate_legal(spec, 3)[:8]:
    print(legal.value, legal.coeffs)
