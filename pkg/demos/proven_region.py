"""
The proven exponent region
==========================

For each p, delta = lam^e with e at or below the threshold exponent gives
shells where the quasimode L^p bound is a theorem.  The threshold is a
piecewise rational function of p with one genuine jump.
"""

from fractions import Fraction

from shellcap.norms import proven_region_threshold, region_breakpoints

print(f"{'p':>8} {'threshold':>12} {'piece':>6}")
for p in (2, 3, 4, Fraction(9, 2), Fraction(235, 52), Fraction(389, 79),
          Fraction(49, 10), 5, 6, 20, 49, 100, float("inf")):
    rt = proven_region_threshold(p)
    print(f"{str(p):>8} {str(rt.exponent):>12} {rt.piece:>6}")

print("\nbreakpoints (left value, right value, continuous?):")
for p, left, right, cont in region_breakpoints():
    print(f"  p = {str(p):>7}: {str(left):>9} | {str(right):>9}   "
          f"{'continuous' if cont else 'JUMP'}")

# the only discontinuity: approaching p = 5 from below the proven exponent
# is -179/346, at p = 5 it improves to -1/2 and stays there up to p = 49
left = proven_region_threshold(Fraction(499, 100)).exponent
at5 = proven_region_threshold(5).exponent
print(f"\np -> 5^-: {left} = {float(left):.5f};  p = 5: {at5} = {float(at5):.2f}")
