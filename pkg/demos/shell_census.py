"""
Counting lattice points in thin shells
======================================

How many integer vectors land in |sqrt(Q(x)) - lam| < delta, and how does
the count track the volume heuristic lam^2 delta?
"""

import math

from shellcap.linalg import QuadraticForm
from shellcap.shell import enumerate_shell, shell_census

form = QuadraticForm.identity()

print(f"{'lam':>6} {'delta':>8} {'count':>8} {'count/(lam^2 delta)':>20}")
for lam in (8.0, 16.0, 32.0, 64.0, 128.0):
    for delta in (0.5, lam ** -0.5, 1.5 / lam):
        sp = enumerate_shell(form, lam, delta)
        c = shell_census(sp)
        print(f"{lam:6.0f} {delta:8.4f} {c.count:8d} {c.ratio:20.3f}")

# an anisotropic form changes the constant but not the scaling
squeezed = QuadraticForm.diagonal(1, 2, 5)
print("\ndiag(1,2,5):")
for lam in (16.0, 32.0, 64.0):
    sp = enumerate_shell(squeezed, lam, lam ** -0.5)
    c = shell_census(sp)
    print(f"{lam:6.0f} {'':8} {c.count:8d} {c.ratio:20.3f}")

# the sphere of radius 5 meets the lattice in exactly 30 points; widening
# the window past the neighboring radii sweeps in their points too
for delta in (0.05, 0.15, 0.3):
    n = len(enumerate_shell(form, 5.0, delta).points)
    print(f"lam=5 delta={delta}: {n} points "
          f"(window {5 - delta:.2f}..{5 + delta:.2f}, "
          f"sqrt(24)={math.sqrt(24):.3f}, sqrt(26)={math.sqrt(26):.3f})")
