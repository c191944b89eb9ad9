"""L^p norms of trigonometric polynomials with shell-supported frequencies.

Even exponents go through exact convolution (the 2r-th power of the norm is a
finite sum of squared representation sums); general p falls back to FFT grid
quadrature.  Alongside the norms live the conjectured two-term operator bound,
its regime classification, and the piecewise-rational exponent of the proven
region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .energy import weighted_rep_sums


@dataclass
class CoefficientVector:
    """Weights aligned with shell.points; the function is
    f(x) = sum_n a_n e(n . x) over the shell frequencies."""

    shell: object
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.complex128)
        if w.shape != (len(self.shell.points),):
            raise ValueError("weights must align with the shell points")
        self.weights = w

    def support(self):
        mask = self.weights != 0
        pts = [p for p, keep in zip(self.shell.points, mask) if keep]
        return pts, self.weights[mask]


def make_quasimode(shell, kind, cap=None):
    """Unit-weight quasimode: kind 'point' puts 1 on every shell frequency,
    kind 'cap' puts 1 on the members of the given cap."""
    n = len(shell.points)
    if kind == "point":
        if n == 0:
            raise ValueError("empty shell has no quasimode")
        return CoefficientVector(shell=shell, weights=np.ones(n, dtype=complex))
    if kind == "cap":
        if cap is None:
            raise ValueError("cap quasimode needs a cap")
        if not len(cap.members):
            raise ValueError("empty cap has no quasimode")
        index = {p: i for i, p in enumerate(shell.points)}
        w = np.zeros(n, dtype=complex)
        for m in cap.members:
            w[index[m]] = 1.0
        return CoefficientVector(shell=shell, weights=w)
    raise ValueError(f"unknown quasimode kind {kind!r}")


def l2_norm(f):
    return float(np.sqrt(np.sum(np.abs(f.weights) ** 2)))


def lp_norm_even_power(f, r):
    """||f||_{2r}^{2r} = sum_k |sum_{n_1+...+n_r=k} a_{n_1}...a_{n_r}|^2.

    Returns an exact int for integer weights (all arithmetic stays below
    2^53, asserted), else a float.  Shares the convolution guard."""
    pts, wts = f.support()
    if not pts:
        return 0
    _, vals = weighted_rep_sums(pts, wts, r)
    power = float(np.sum(vals.real ** 2 + vals.imag ** 2))
    integral = (np.array_equal(wts.real, np.round(wts.real))
                and np.array_equal(wts.imag, np.round(wts.imag)))
    if integral:
        assert power < 2.0 ** 53, "exact-integer range exceeded"
        return int(round(power))
    return power


def lp_norm_even(f, r):
    """The L^{2r} norm via the exact even-power identity."""
    return float(lp_norm_even_power(f, r)) ** (1.0 / (2 * r))


def default_grid(lam):
    """Smallest power of two above 4 lam."""
    n = 1
    while n <= 4 * lam:
        n *= 2
    return n


def _grid_values(f, n_grid):
    pts, wts = f.support()
    arr = np.zeros((n_grid, n_grid, n_grid), dtype=np.complex128)
    for (a, b, c), w in zip(pts, wts):
        arr[a % n_grid, b % n_grid, c % n_grid] += w
    return np.fft.ifftn(arr) * n_grid ** 3


# full complex grids above this many cells switch to the half-spectrum path
# when the function is real-valued; 256^3 complex is ~270 MB, 512^3 is ~2.1 GB
_FULL_GRID_CELLS = 1 << 24


def _hermitian_weights(pts, wts):
    """True when a_{-n} = conj(a_n) across the support, i.e. f is real."""
    table = {p: w for p, w in zip(pts, wts)}
    for p, w in zip(pts, wts):
        m = (-p[0], -p[1], -p[2])
        if m not in table or table[m] != np.conj(w):
            return False
    return True


def _grid_values_real(pts, wts, n_grid):
    """Real-valued samples via a half-spectrum transform.

    Only frequencies with last coordinate in [0, n/2] are stored; the
    conjugate half is implied, so each (n, -n) pair must be entered once.
    Needs n_grid > 2 max|coordinate| (checked by the caller), which keeps
    the folded last coordinate off the self-conjugate n/2 plane."""
    half = np.zeros((n_grid, n_grid, n_grid // 2 + 1), dtype=np.complex128)
    for (a, b, c), w in zip(pts, wts):
        cm = c % n_grid
        if cm <= n_grid // 2:
            half[a % n_grid, b % n_grid, cm] += w
    return np.fft.irfftn(half, s=(n_grid, n_grid, n_grid),
                         axes=(0, 1, 2)) * n_grid ** 3


def _power_mean(vals, p):
    """mean(|vals|^p) accumulated in slabs: no value-sized temporaries."""
    acc = []
    for lo in range(0, vals.shape[0], 8):
        slab = np.abs(vals[lo:lo + 8])
        acc.append(float(np.sum(slab ** p)))
    return math.fsum(acc) / vals.size


def lp_norm_grid(f, p, n_grid=None, with_error=False):
    """Grid quadrature of the L^p norm on an n_grid^3 uniform mesh.

    Needs n_grid > 2 max|frequency| (no aliasing).  For even p with
    n_grid > p lam the quadrature is exact up to float roundoff; otherwise
    with_error=True reports the difference against a 2x finer grid."""
    if p < 1 and p != math.inf:
        raise ValueError("p must be >= 1")
    pts, wts = f.support()
    if not pts:
        raise ValueError("empty support")
    maxc = max(abs(c) for q in pts for c in q)
    if n_grid is None:
        n_grid = default_grid(f.shell.lam)
    if n_grid <= 2 * maxc:
        raise ValueError(
            f"grid {n_grid} aliases frequencies up to {maxc}; need > {2 * maxc}")
    if n_grid ** 3 > _FULL_GRID_CELLS and _hermitian_weights(pts, wts):
        vals = _grid_values_real(pts, wts, n_grid)
    else:
        vals = _grid_values(f, n_grid)
    if p == math.inf:
        out = 0.0
        for lo in range(0, n_grid, 8):
            out = max(out, float(np.abs(vals[lo:lo + 8]).max()))
    else:
        out = float(_power_mean(vals, p) ** (1.0 / p))
    if not with_error:
        return out
    finer = lp_norm_grid(f, p, 2 * n_grid, with_error=False)
    return out, abs(out - finer)


@dataclass(frozen=True)
class ConjecturedBound:
    total: float
    point_term: float     # (lam delta)^(1/2 - 1/p)
    geodesic_term: float  # lam^(1 - 3/p) delta^(1/2)


def conjectured_bound(lam, delta, p):
    """The two-term conjectured operator bound; p may be math.inf."""
    if p < 2:
        raise ValueError("p must be >= 2")
    inv_p = 0.0 if p == math.inf else 1.0 / p
    point = (lam * delta) ** (0.5 - inv_p)
    geo = lam ** (1.0 - 3.0 * inv_p) * math.sqrt(delta)
    return ConjecturedBound(total=point + geo, point_term=point,
                            geodesic_term=geo)


def regime_classify(lam, delta, p, rel_tol=1e-12):
    """Which conjectured term dominates: 'point-focusing' when the
    (lam delta)-term is larger, 'geodesic-focusing' when the geodesic term is,
    'boundary' within rel_tol.  Equivalent to comparing delta against
    lam^(2 - p/2)."""
    b = conjectured_bound(lam, delta, p)
    if abs(b.point_term - b.geodesic_term) <= rel_tol * max(
            b.point_term, b.geodesic_term):
        return "boundary"
    return "point-focusing" if b.point_term > b.geodesic_term else "geodesic-focusing"


# --- proven-region exponent -------------------------------------------------

_P4 = Fraction(4)
_P1 = Fraction(235, 52)
_P2 = Fraction(389, 79)
_P5 = Fraction(5)
_P49 = Fraction(49)


def _piece2(p):
    return -(316 - 27 * p) / (104 * (p - 2))


def _piece3(p):
    return p / 2 - 3


def _piece4(p):
    return -(9 * p - 224) / (444 - 158 * p)


def _piece6(p):
    return -(85 * p - 358) / (158 * p - 128)


@dataclass(frozen=True)
class RegionThreshold:
    """Exact exponent e(p): the shell multiplier bound lam^e(p) known to hold.
    breakpoint carries (left_limit, value, continuous) when p sits on one."""

    p: object           # Fraction or math.inf
    exponent: Fraction
    piece: int
    breakpoint: tuple | None = None


def proven_region_threshold(p):
    """Piecewise-rational proven exponent, exact for rational p.

    Pieces: -1 on [2,4]; -(316-27p)/(104(p-2)) on (4, 235/52];
    p/2 - 3 on [235/52, 389/79]; -(9p-224)/(444-158p) on (389/79, 5);
    -1/2 on [5, 49]; -(85p-358)/(158p-128) on [49, inf].  At a breakpoint
    shared by two pieces the values agree (except the jump at p = 5) and the
    right piece id is reported."""
    if p == math.inf:
        return RegionThreshold(p=math.inf, exponent=Fraction(-85, 158), piece=6)
    q = Fraction(p)
    if q < 2:
        raise ValueError("p must be >= 2")
    if q < _P4:
        return RegionThreshold(p=q, exponent=Fraction(-1), piece=1)
    if q == _P4:
        left, right = Fraction(-1), _piece2(_P4)
        return RegionThreshold(p=q, exponent=left, piece=1,
                               breakpoint=(left, right, left == right))
    if q < _P1:
        return RegionThreshold(p=q, exponent=_piece2(q), piece=2)
    if q == _P1:
        left, right = _piece2(q), _piece3(q)
        return RegionThreshold(p=q, exponent=right, piece=3,
                               breakpoint=(left, right, left == right))
    if q < _P2:
        return RegionThreshold(p=q, exponent=_piece3(q), piece=3)
    if q == _P2:
        left, right = _piece3(q), _piece4(q)
        return RegionThreshold(p=q, exponent=left, piece=3,
                               breakpoint=(left, right, left == right))
    if q < _P5:
        return RegionThreshold(p=q, exponent=_piece4(q), piece=4)
    if q == _P5:
        left, right = _piece4(q), Fraction(-1, 2)
        return RegionThreshold(p=q, exponent=right, piece=5,
                               breakpoint=(left, right, left == right))
    if q < _P49:
        return RegionThreshold(p=q, exponent=Fraction(-1, 2), piece=5)
    if q == _P49:
        left, right = Fraction(-1, 2), _piece6(q)
        return RegionThreshold(p=q, exponent=right, piece=6,
                               breakpoint=(left, right, left == right))
    return RegionThreshold(p=q, exponent=_piece6(q), piece=6)


def region_breakpoints():
    """The five breakpoints with left/right values and continuity flags."""
    out = []
    for q in (_P4, _P1, _P2, _P5, _P49):
        rt = proven_region_threshold(q)
        out.append((q, *rt.breakpoint))
    return out


# --- few / many split -------------------------------------------------------

def few_many_threshold(lam, delta):
    """Caps with at most 4 (lam delta^2 + 1) members count as 'few'; the
    cutoff is four times the average cap occupancy."""
    return 4.0 * (lam * delta * delta + 1.0)


def split_few_many(caps, shell):
    """Boolean masks over shell.points: frequencies in small caps vs large."""
    thresh = few_many_threshold(shell.lam, shell.delta)
    index = {p: i for i, p in enumerate(shell.points)}
    few = np.zeros(len(shell.points), dtype=bool)
    many = np.zeros(len(shell.points), dtype=bool)
    for cap in caps:
        target = few if len(cap.members) <= thresh else many
        for m in cap.members:
            target[index[m]] = True
    if np.any(few & many) or not np.all(few | many):
        raise AssertionError("few/many masks must partition the shell")
    return few, many
