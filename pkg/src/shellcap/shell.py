"""Integer points in thin shells of a positive-definite ternary form.

The shell is { x in Z^3 : |sqrt(Q(x)) - lam| < delta }, both inequalities
strict.  Membership is decided exactly: Q(x) is evaluated in cleared-denominator
integer arithmetic, and the float inputs lam, delta are treated as the dyadic
rationals they are, so the boundary cases never depend on rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .linalg import QuadraticForm


@dataclass(frozen=True)
class ShellPointSet:
    """Enumerated shell: lexicographically sorted integer points plus the
    parameters that produced them."""

    form: QuadraticForm
    lam: float
    delta: float
    points: tuple = field(repr=False)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def count(self):
        return len(self.points)

    def as_array(self):
        if not self.points:
            return np.zeros((0, 3), dtype=np.int64)
        return np.array(self.points, dtype=np.int64)


def _check_params(lam, delta):
    if not (lam > 0):
        raise ValueError(f"lam must be positive, got {lam}")
    if not (0 < delta < lam):
        raise ValueError(f"delta must lie in (0, lam), got {delta}")


def enumerate_shell(form, lam, delta):
    """All integer points with |sqrt(Q(x)) - lam| < delta, sorted.

    Per (x1, x2) column the admissible x3 fill at most two intervals, whose
    float endpoints come from the quadratic formula; every candidate integer in
    the widened intervals is then accepted or rejected exactly via
    denom * Q(x) compared against the cleared bounds (lam +- delta)^2.
    """
    _check_params(lam, delta)
    hi = Fraction(lam) + Fraction(delta)
    lo = Fraction(lam) - Fraction(delta)
    d = form.denom
    # Q(x) < hi^2  <=>  d * Q(x) * hi_den < hi_num * d  with d*Q integral
    hi2 = hi * hi
    lo2 = lo * lo
    hi_num, hi_den = hi2.numerator, hi2.denominator
    lo_num, lo_den = lo2.numerator, lo2.denominator
    check_lo = lo > 0

    a = form.matrix
    inv_diag = np.diag(np.linalg.inv(a))
    hi_f = float(hi)
    b1 = int(math.floor(hi_f * math.sqrt(inv_diag[0]))) + 1
    b2 = int(math.floor(hi_f * math.sqrt(inv_diag[1]))) + 1

    m = form.int_matrix
    a33 = m[2][2]
    pts = []
    hi2_f = float(hi2) * d  # float threshold on d*Q for root finding
    for x1 in range(-b1, b1 + 1):
        c1 = m[0][0] * x1 * x1
        b_part1 = m[0][2] * x1
        for x2 in range(-b2, b2 + 1):
            # d*Q = a33 x3^2 + 2 b x3 + c with integer coefficients
            b = b_part1 + m[1][2] * x2
            c = c1 + m[1][1] * x2 * x2 + 2 * m[0][1] * x1 * x2
            t = c - hi2_f
            disc = b * b - a33 * t
            # float guard: never let roundoff hide a boundary-grazing column,
            # the exact per-candidate test below is the real filter
            if disc < -4e-16 * (abs(b * b) + abs(a33 * t) + 1.0):
                continue
            root = math.sqrt(max(disc, 0.0))
            z_lo = int(math.ceil((-b - root) / a33)) - 1
            z_hi = int(math.floor((-b + root) / a33)) + 1
            for x3 in range(z_lo, z_hi + 1):
                qd = a33 * x3 * x3 + 2 * b * x3 + c  # d * Q(x)
                if qd * hi_den >= hi_num * d:
                    continue
                if check_lo and qd * lo_den <= lo_num * d:
                    continue
                pts.append((x1, x2, x3))
    pts.sort()
    return ShellPointSet(form=form, lam=float(lam), delta=float(delta),
                         points=tuple(pts))


@dataclass(frozen=True)
class ShellCensus:
    lam: float
    delta: float
    count: int
    volume_proxy: float
    ratio: float


def shell_census(shell):
    """Count and count / (lam^2 delta), the natural volume normalization."""
    proxy = shell.lam ** 2 * shell.delta
    ratio = shell.count / proxy if shell.count else 0.0
    return ShellCensus(lam=shell.lam, delta=shell.delta, count=shell.count,
                       volume_proxy=proxy, ratio=ratio)


def brute_force_shell(form, lam, delta):
    """Independent oracle: scan the full bounding cube and test each point
    exactly.  Same membership predicate, completely different enumeration."""
    _check_params(lam, delta)
    hi = Fraction(lam) + Fraction(delta)
    lo = Fraction(lam) - Fraction(delta)
    hi2, lo2 = hi * hi, lo * lo
    d = form.denom
    check_lo = lo > 0
    bound = int(math.ceil(float(hi) * math.sqrt(
        np.max(np.diag(np.linalg.inv(form.matrix)))))) + 1
    rng = np.arange(-bound, bound + 1, dtype=np.int64)
    xs, ys, zs = np.meshgrid(rng, rng, rng, indexing="ij")
    grid = np.stack([xs.ravel(), ys.ravel(), zs.ravel()], axis=1)
    qf = np.einsum("ij,jk,ik->i", grid.astype(float), form.matrix,
                   grid.astype(float))
    # float prefilter with a wide margin, exact arbitration afterwards
    margin = 1e-6 * max(1.0, float(hi2))
    mask = qf < float(hi2) + margin
    if check_lo:
        mask &= qf > float(lo2) - margin
    cand = grid[mask]
    keep = []
    for row in cand:
        x = (int(row[0]), int(row[1]), int(row[2]))
        qd = form.evaluate_int(x)
        if qd * hi2.denominator >= hi2.numerator * d:
            continue
        if check_lo and qd * lo2.denominator <= lo2.numerator * d:
            continue
        keep.append(x)
    keep.sort()
    return tuple(keep)
