"""Counting oracles for lattice points near curves and in thin annuli.

These are the closed-form upper bounds the cap statistics are checked against:
a divided-difference curve count delta*X + (XY)^(1/3) with a Fejer-kernel
majorant certificate, the sharper (AB)^(131/416) exponent inside its validity
window (observational only), and the dyadic-bin bound formulas for the cap
censuses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

# snapping guard for float values that are meant to hit integers exactly
_SNAP = 1e-9

# catalog of strictly convex/concave graphs on [0, 1] with the second
# derivative bounded away from 0 and infinity
CURVES = {
    "circle": lambda t: math.sqrt(1.0 - t * t / 4.0),
    "parabola": lambda t: t * t,
    "hyperbola": lambda t: 1.0 / (1.0 + t),
}


@dataclass(frozen=True)
class CurveSpec:
    """Points (x, y) counted: 0 <= x <= X integer, |y - Y g(x/X)| <= delta."""

    g: Callable[[float], float]
    x_max: float
    y_scale: float
    delta: float
    name: str = "custom"

    @classmethod
    def catalog(cls, name, x_max, y_scale, delta):
        return cls(g=CURVES[name], x_max=float(x_max), y_scale=float(y_scale),
                   delta=float(delta), name=name)


def _snap(c):
    r = round(c)
    if abs(c - r) <= _SNAP * max(1.0, abs(c)):
        return float(r)
    return c


def count_near_curve(spec):
    """Exact number of integer pairs within delta of the scaled graph
    (closed inequality).  Float targets within 1e-9 relative of an integer are
    snapped to it so that exact-hit cases do not depend on rounding."""
    if spec.x_max < 0 or spec.delta < 0:
        raise ValueError("x_max and delta must be nonnegative")
    total = 0
    for x in range(int(math.floor(spec.x_max)) + 1):
        c = _snap(spec.y_scale * spec.g(x / spec.x_max if spec.x_max else 0.0))
        y_lo = math.ceil(_snap(c - spec.delta))
        y_hi = math.floor(_snap(c + spec.delta))
        if y_hi >= y_lo:
            total += y_hi - y_lo + 1
    return total


def vdc_bound(spec):
    """delta X + (XY)^(1/3), the divided-difference counting bound."""
    return spec.delta * spec.x_max + (spec.x_max * spec.y_scale) ** (1.0 / 3.0)


def huxley_bound(spec):
    """delta X + (XY)^(131/416); valid in the exponent-pair window only."""
    return spec.delta * spec.x_max + (spec.x_max * spec.y_scale) ** (131.0 / 416.0)


def huxley_window(x, y, eps=0.0):
    """Is Y^(147/253 + eps) <= X <= Y^(253/147 - eps)?"""
    if y <= 1.0:
        return False
    return y ** (147.0 / 253.0 + eps) <= x <= y ** (253.0 / 147.0 - eps)


def fejer_kernel(k, t):
    """F_k(t) = sum_{|j|<k} (1 - |j|/k) e(jt), evaluated as a cosine sum.

    Nonnegative, F_k(0) = k, and F_k(t) >= k/3 for |t| < 1/(2 pi k); that lower
    bound is what makes (3/k) F_k a majorant of the near-integer indicator.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    acc = 1.0
    for j in range(1, k):
        acc += 2.0 * (1.0 - j / k) * math.cos(2.0 * math.pi * j * t)
    return acc


def fejer_majorant(spec, k):
    """(3/k) sum_x F_k(Y g(x/X)): an upper bound for count_near_curve
    whenever 1 <= k <= 1/(2 pi delta)."""
    if spec.delta <= 0:
        raise ValueError("majorant invalid for this k: delta must be positive")
    if not 1 <= k <= 1.0 / (2.0 * math.pi * spec.delta):
        raise ValueError(
            f"majorant invalid for this k: need 1 <= k <= 1/(2 pi delta),"
            f" got k={k}, delta={spec.delta}")
    acc = 0.0
    for x in range(int(math.floor(spec.x_max)) + 1):
        c = spec.y_scale * spec.g(x / spec.x_max if spec.x_max else 0.0)
        acc += fejer_kernel(k, c)
    return 3.0 * acc / k


def count_annulus(q1, q2, q3, a_scale, b_scale, eta):
    """Integer pairs (a, b) with |q(a/A, b/B) - 1| < eta (strict), where
    q(x, y) = q1 x^2 + 2 q2 x y + q3 y^2 is positive definite."""
    det = q1 * q3 - q2 * q2
    if det <= 0 or q1 <= 0:
        raise ValueError("the binary form must be positive definite")
    if eta <= 0 or a_scale <= 0 or b_scale <= 0:
        raise ValueError("eta, A, B must be positive")
    hi = 1.0 + eta
    a_bound = int(math.floor(a_scale * math.sqrt(hi * q3 / det))) + 1
    count = 0
    for a in range(-a_bound, a_bound + 1):
        x = a / a_scale
        # q3 t^2 + 2 q2 x t + (q1 x^2 - hi) = 0 brackets the admissible b/B
        disc = (q2 * x) ** 2 - q3 * (q1 * x * x - hi)
        if disc < 0:
            continue
        root = math.sqrt(disc)
        t_lo = (-q2 * x - root) / q3
        t_hi = (-q2 * x + root) / q3
        for b in range(int(math.ceil(t_lo * b_scale)) - 1,
                       int(math.floor(t_hi * b_scale)) + 2):
            y = b / b_scale
            q = q1 * x * x + 2.0 * q2 * x * y + q3 * y * y
            if abs(q - 1.0) < eta:
                count += 1
    return count


@dataclass(frozen=True)
class AnnulusReport:
    count: int
    bound_cbrt: float       # eta A B + (A B)^(1/3)
    bound_huxley: float     # eta A B + (A B)^(131/416)
    in_window: bool         # B^(147/181) <= A <= B^(181/147)


def annulus_report(q1, q2, q3, a_scale, b_scale, eta):
    """Strict annulus count next to its two closed-form bounds.  The window
    flag marks where the 131/416 exponent is proved; nothing is asserted
    about it (the underlying estimate is imported, not re-derived here)."""
    n = count_annulus(q1, q2, q3, a_scale, b_scale, eta)
    ab = a_scale * b_scale
    in_window = (b_scale > 1.0
                 and b_scale ** (147.0 / 181.0) <= a_scale <= b_scale ** (181.0 / 147.0))
    return AnnulusReport(
        count=n,
        bound_cbrt=eta * ab + ab ** (1.0 / 3.0),
        bound_huxley=eta * ab + ab ** (131.0 / 416.0),
        in_window=in_window,
    )


# --- dyadic cap-census bound formulas ---------------------------------------
#
# Each entry: (rank whose histogram it bounds, bound(lam, delta, s)).
# Constants are 1 and the small-power fudge is taken at exponent 0, so the
# ratios observed/bound are meaningful across lam rather than certified.

def _rank1_main(lam, delta, s):
    return ((lam * delta) ** 3 * 2.0 ** (-4 * s)
            + lam ** (1903.0 / 832.0) * delta ** (1379.0 / 832.0)
            * 2.0 ** (-1379.0 * s / 416.0))


def _rank1_alt(lam, delta, s):
    return (2.0 ** (-10 * s) * lam ** 7 * delta ** 5) ** (1.0 / 3.0)


def _rank2_volume(lam, delta, s):
    return (2.0 ** (-s) * lam * delta) ** 3


def _rank2_refined(lam, delta, s):
    t = 2.0 ** (-s) * lam * delta
    return t * t + delta * t ** 4


def _rank2_incidence(lam, delta, s):
    return ((lam * delta) ** 3 * 2.0 ** (-2.5 * s)
            + lam ** (1903.0 / 832.0) * delta ** (1379.0 / 832.0)
            * 2.0 ** (-1795.0 * s / 832.0))


BOUNDS = {
    "rank1_main": (1, _rank1_main),
    "rank1_alt": (1, _rank1_alt),
    "rank2_volume": (2, _rank2_volume),
    "rank2_refined": (2, _rank2_refined),
    "rank2_incidence": (2, _rank2_incidence),
}


@dataclass(frozen=True)
class BoundRatioReport:
    lam: float
    delta: float
    bound_id: str
    rows: tuple  # (s, observed, bound, ratio)
    max_ratio: float


def bound_ratio_report(cap_census, bound_id):
    """observed / bound per admissible dyadic bin of the census.

    Bins with 2^s < max(1, lam delta^2) fall outside the regime the formulas
    address and are skipped."""
    if bound_id not in BOUNDS:
        raise ValueError(f"unknown bound id {bound_id!r}; "
                         f"choose from {sorted(BOUNDS)}")
    rank, formula = BOUNDS[bound_id]
    lam, delta = cap_census.lam, cap_census.delta
    floor_val = max(1.0, lam * delta * delta)
    rows = []
    for s, observed in sorted(cap_census.rank_counts(rank).items()):
        if 2.0 ** s < floor_val:
            continue
        bound = formula(lam, delta, s)
        rows.append((s, observed, bound, observed / bound))
    return BoundRatioReport(
        lam=lam, delta=delta, bound_id=bound_id, rows=tuple(rows),
        max_ratio=max((r[3] for r in rows), default=0.0),
    )
