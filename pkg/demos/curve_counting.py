"""
Integer points near plane curves
================================

Counting lattice points within delta of a dilated curve, the Fejer-kernel
majorant that proves the counting lemma, and the resulting bound for a
degenerate annulus.
"""

from shellcap.oracles import (CurveSpec, annulus_report, count_near_curve,
                              fejer_majorant, vdc_bound)

# the classic setting: y = g(x/X) scaled to height Y, points within delta
for name in ("circle", "parabola", "hyperbola"):
    spec = CurveSpec.catalog(name, 128.0, 128.0, 0.02)
    c = count_near_curve(spec)
    print(f"{name:10s} count {c:5d}   curve-lemma bound {vdc_bound(spec):8.1f}")

# the proof device: a nonnegative kernel whose Fourier support is short
# dominates the sharp count for every admissible frequency cutoff k
spec = CurveSpec.catalog("parabola", 64.0, 64.0, 0.01)
c = count_near_curve(spec)
print(f"\nparabola X=64 delta=0.01: count {c}")
for k in (1, 4, 15):
    print(f"  Fejer majorant, k={k:2d}: {fejer_majorant(spec, k):9.2f}")

# a thin annulus of a binary quadratic form is the curve setting that feeds
# the cap incidence bounds; eta plays the role of delta
rep = annulus_report(1, 0, 1, 100.0, 100.0, 0.02)
print(f"\nunit-circle annulus, scale 100, eta=0.02: count {rep.count}, "
      f"cube-root bound {rep.bound_cbrt:.1f}, "
      f"refined bound {rep.bound_huxley:.1f} "
      f"({'inside' if rep.in_window else 'outside'} its window)")
