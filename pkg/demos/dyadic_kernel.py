"""
Oscillatory kernel sums, range by range
=======================================

The smoothed projector kernel splits into dyadic distance ranges; each
range is an oscillatory lattice sum whose size is what the square-root
cancellation heuristics are about.
"""

import numpy as np

from shellcap.expsum import (DyadicSumSpec, dyadic_sum, guo_bound,
                             in_guo_window, mollified_symbol_physical,
                             trivial_bound)

lam, delta = 64.0, 64.0 ** -0.5

# frequency side: the mollified shell symbol is ~1 on the shell and decays
# fast off it
for rho in (lam - 2.0, lam, lam + 0.4, lam + 5.0):
    v = mollified_symbol_physical(lam, delta, np.array([rho, 0.0, 0.0]))
    print(f"symbol at |k| = {rho:6.1f}: {v:10.3e}")

# physical side: one dyadic range at a generic base point
x = (0.31, 0.47, 0.62)
print(f"\n{'M':>4} {'|S|':>10} {'trivial':>9} {'ratio':>7}  window")
m = 1
while m * delta <= 4.0:
    s = dyadic_sum(DyadicSumSpec(lam=lam, delta=delta, m_scale=m, x=x))
    t = trivial_bound(lam, delta, m)
    tag = f"refined {abs(s) / guo_bound(lam, delta, m):.3f}" \
        if in_guo_window(lam, m) else "-"
    print(f"{m:4d} {abs(s):10.4f} {t:9.3f} {abs(s) / t:7.4f}  {tag}")
    m *= 2

# the same sum at a rational point picks up arithmetic resonance
s_generic = dyadic_sum(DyadicSumSpec(lam=lam, delta=delta, m_scale=4, x=x))
s_corner = dyadic_sum(DyadicSumSpec(lam=lam, delta=delta, m_scale=4,
                                    x=(0.5, 0.5, 0.5)))
print(f"\nM=4 at generic x: |S| = {abs(s_generic):.4f}")
print(f"M=4 at (1/2,1/2,1/2): |S| = {abs(s_corner):.4f}")
