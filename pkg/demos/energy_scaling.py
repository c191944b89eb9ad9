"""
Additive energy of shell point sets
===================================

E_2 counts quadruples with a + b = c + d.  For shells at the natural width
delta = lam^(-1/2) the interesting comparison is against n^2 (diagonal
only) and n^3 (worst case).
"""

import math
import time

from shellcap.energy import additive_energy, z_max
from shellcap.linalg import QuadraticForm
from shellcap.shell import enumerate_shell

form = QuadraticForm.identity()

print(f"{'lam':>5} {'n':>7} {'E_2':>13} {'E_2/n^2':>9} {'Z':>7}")
for lam in (8.0, 16.0, 32.0):
    sp = enumerate_shell(form, lam, lam ** -0.5)
    n = len(sp.points)
    t0 = time.time()
    e2 = additive_energy(sp.points, 2)
    _, z = z_max(sp.points, 2)
    print(f"{lam:5.0f} {n:7d} {e2:13d} {e2 / n ** 2:9.3f} {z:7d} "
          f"[{time.time() - t0:.1f}s]")

# the log-slope of E_2/n^2 against lam estimates the energy exponent
lams = (8.0, 32.0)
vals = []
for lam in lams:
    sp = enumerate_shell(form, lam, lam ** -0.5)
    vals.append(additive_energy(sp.points, 2) / len(sp.points) ** 2)
slope = math.log(vals[1] / vals[0]) / math.log(lams[1] / lams[0])
print(f"\nE_2/n^2 grows like lam^{slope:.2f} over lam {lams[0]:.0f}..{lams[1]:.0f}")
