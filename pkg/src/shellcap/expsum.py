"""Oscillatory lattice sums approximating the mollified shell kernel.

The kernel's Fourier transform factors through the sphere surface measure
transform m and a Gaussian mollifier; on the physical side the kernel is cut
into dyadic ranges |n - x| ~ M and each range is summed exactly as written,
with a fixed C^2 bump and the leading stationary-phase amplitude.  Square
torus only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

A1 = -2j          # leading amplitude of the surface-measure transform
THETA_COEFF = 2.0 * math.pi  # phase Theta(y) = 2 pi y


def _smoothstep(u):
    # C^2 quintic rise 0 -> 1 on [0, 1]; only +,* so scalars and arrays agree
    u2 = u * u
    return u2 * u * (10.0 + u * (-15.0 + 6.0 * u))


def bump_psi(t):
    """Radial C^2 bump supported on [1/2, 2]: quintic rise on [1/2, 1],
    plateau 1 on [1, 3/2], quintic fall on [3/2, 2].  Works elementwise."""
    t = np.asarray(t, dtype=float)
    rise = _smoothstep(np.clip((t - 0.5) * 2.0, 0.0, 1.0))
    fall = _smoothstep(np.clip((2.0 - t) * 2.0, 0.0, 1.0))
    out = np.where(t < 1.0, rise, np.where(t > 1.5, fall, 1.0))
    out = np.where((t < 0.5) | (t > 2.0), 0.0, out)
    if out.ndim == 0:
        return float(out)
    return out


def surface_ft_sphere(xi):
    """Fourier transform of the unit-sphere surface measure:
    2 sin(2 pi |xi|) / |xi|, with value 4 pi at xi = 0."""
    rho = float(np.linalg.norm(np.asarray(xi, dtype=float)))
    return _m_radial(rho)


def _m_radial(rho):
    if rho == 0.0:
        return 4.0 * math.pi
    return 2.0 * math.sin(2.0 * math.pi * rho) / rho


def chi_hat(t):
    """Transform of the Gaussian mollifier chi(x) = exp(-pi |x|^2)."""
    return math.exp(-math.pi * t * t)


def mollified_symbol(lam, delta, xi):
    """Fourier side of the mollified shell kernel:
    lam^2 delta m(lam |xi|) chi_hat(delta |xi|)."""
    rho = float(np.linalg.norm(np.asarray(xi, dtype=float)))
    return lam * lam * delta * _m_radial(lam * rho) * chi_hat(delta * rho)


def mollified_symbol_physical(lam, delta, k):
    """Physical side at k: delta^-2 (chi(./delta) * dsigma_lam)(k), by 1D
    radial quadrature over the sphere."""
    rho = float(np.linalg.norm(np.asarray(k, dtype=float)))
    # integrand over t = cos angle, peak factored out for stable quadrature:
    # exp(-pi(rho^2+lam^2-2 rho lam t)/delta^2)
    #   = exp(-pi (rho-lam)^2/delta^2) exp(-2 pi rho lam (1-t)/delta^2)
    peak = math.exp(-math.pi * (rho - lam) ** 2 / delta ** 2)
    alpha = 2.0 * math.pi * rho * lam / delta ** 2
    if alpha == 0.0:
        integral = 2.0
    else:
        cut = min(2.0, 30.0 / alpha)
        val1, _ = quad(lambda s: math.exp(-alpha * s), 0.0, cut)
        val2 = 0.0
        if cut < 2.0:
            val2, _ = quad(lambda s: math.exp(-alpha * s), cut, 2.0)
        integral = val1 + val2
    return delta ** -2 * 2.0 * math.pi * lam * lam * peak * integral


@dataclass(frozen=True)
class DyadicSumSpec:
    """One dyadic range |n - x| ~ m_scale of the kernel sum."""

    lam: float
    delta: float
    m_scale: int
    x: tuple

    def __post_init__(self):
        m = self.m_scale
        if m < 1 or (m & (m - 1)) != 0:
            raise ValueError("m_scale must be a positive power of two")
        if m * self.delta > 4.0:
            raise ValueError("m_scale delta must stay <= 4")
        if len(self.x) != 3:
            raise ValueError("x must be a 3-vector")


def term_values(dist, lam, m_scale):
    """The canonical summand at distance(s) dist, without the lam delta
    prefactor.  psi(d/M) a1 e^{i lam Theta(d)} / d is assembled in one fixed
    operation order so every caller produces bit-identical terms."""
    d = np.asarray(dist, dtype=float)
    psi = bump_psi(d / m_scale)
    phase = np.exp((1j * THETA_COEFF * lam) * d)
    return (psi * A1) * phase / d


def dyadic_sum(spec):
    """S^M(x) = lam delta sum_n psi(|n-x|/M) a1 e^{i lam Theta(|n-x|)}/|n-x|,
    summed exactly over the integer annulus M/2 <= |n-x| <= 2M.

    The reduction is math.fsum over real and imaginary parts, so the value is
    independent of enumeration order down to the last bit."""
    lam, delta, m, x = spec.lam, spec.delta, spec.m_scale, spec.x
    x0, x1, x2 = float(x[0]), float(x[1]), float(x[2])
    lo0, hi0 = math.ceil(x0 - 2 * m), math.floor(x0 + 2 * m)
    lo1, hi1 = math.ceil(x1 - 2 * m), math.floor(x1 + 2 * m)
    lo2, hi2 = math.ceil(x2 - 2 * m), math.floor(x2 + 2 * m)
    n1 = np.arange(lo1, hi1 + 1, dtype=float) - x1
    n2 = np.arange(lo2, hi2 + 1, dtype=float) - x2
    sq12 = n1[:, None] ** 2 + n2[None, :] ** 2
    re_parts, im_parts = [], []
    r_lo, r_hi = 0.5 * m, 2.0 * m
    for n0 in range(lo0, hi0 + 1):
        d0 = n0 - x0
        d = np.sqrt(d0 * d0 + sq12)
        mask = (d >= r_lo) & (d <= r_hi)
        if not mask.any():
            continue
        vals = term_values(d[mask], lam, m)
        re_parts.append(vals.real)
        im_parts.append(vals.imag)
    if not re_parts:
        return 0.0 + 0.0j
    re = math.fsum(np.concatenate(re_parts).tolist())
    im = math.fsum(np.concatenate(im_parts).tolist())
    return (lam * delta) * complex(re, im)


def trivial_bound(lam, delta, m):
    """lam delta M^2, the no-cancellation budget for one dyadic range."""
    return lam * delta * m * m


GUO_WINDOW_EXP = 2.0 / 7.0
_GUO_POW = 2.0 - 30.0 / 94.0


def guo_bound(lam, delta, m):
    """delta lam^(103/94) M^(2 - 30/94), meaningful for M > lam^(2/7)."""
    return delta * lam ** (103.0 / 94.0) * m ** _GUO_POW


def in_guo_window(lam, m):
    return m > lam ** GUO_WINDOW_EXP


def halton(n, skip=0):
    """First n Halton points in (0,1)^3, bases 2, 3, 5; deterministic."""
    def radical_inverse(i, base):
        f, r = 1.0, 0.0
        while i > 0:
            f /= base
            r += f * (i % base)
            i //= base
        return r

    return np.array([
        [radical_inverse(i, b) for b in (2, 3, 5)]
        for i in range(1 + skip, n + 1 + skip)
    ])


@dataclass(frozen=True)
class ExpSumReport:
    lam: float
    delta: float
    rows: tuple   # (m, x_index, abs_s, ratio_trivial, ratio_guo or None)
    maxima: dict  # m -> (max trivial ratio, max guo ratio or None)


def expsum_bound_report(lam, delta, n_samples=8, m_values=None):
    """|S^M| against the trivial and window bounds over dyadic M <= 4/delta,
    at deterministic low-discrepancy base points.  delta = 0 kills the
    prefactor, so the report is empty."""
    if delta <= 0.0:
        return ExpSumReport(lam=lam, delta=delta, rows=(), maxima={})
    if m_values is None:
        m_values = []
        m = 1
        while m * delta <= 4.0:
            m_values.append(m)
            m *= 2
    xs = halton(n_samples)
    rows = []
    maxima = {}
    for m in m_values:
        best_t, best_g = 0.0, None
        for xi, x in enumerate(xs):
            s = dyadic_sum(DyadicSumSpec(lam=lam, delta=delta, m_scale=m,
                                         x=tuple(x)))
            a = abs(s)
            rt = a / trivial_bound(lam, delta, m)
            rg = a / guo_bound(lam, delta, m) if in_guo_window(lam, m) else None
            rows.append((m, xi, a, rt, rg))
            best_t = max(best_t, rt)
            if rg is not None:
                best_g = rg if best_g is None else max(best_g, rg)
        maxima[m] = (best_t, best_g)
    return ExpSumReport(lam=lam, delta=delta, rows=tuple(rows), maxima=maxima)
