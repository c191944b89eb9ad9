"""Representation counts and additive energy of integer point sets.

r-fold sumset tables are built by iterated convolution on linearized integer
keys (one int64 per lattice point), so the counting is exact and the heavy
lifting stays inside numpy.  The d = 3 geometry is hard-coded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .shell import enumerate_shell
from .linalg import QuadraticForm

GUARD_LIMIT = 10 ** 9
_BLOCK = 1 << 22  # pairwise-sum block size, keeps peak memory modest


class GuardExceeded(Exception):
    """|A|^r exceeded the convolution guard."""

    def __init__(self, size, r, value):
        self.size, self.r, self.value = size, r, value
        super().__init__(
            f"|A|^r = {size}^{r} = {value} exceeds the guard {GUARD_LIMIT}")


def _as_point_array(points):
    pts = list(points)
    if not pts:
        return np.zeros((0, 3), dtype=np.int64)
    arr = np.asarray(pts, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError("expected a sequence of integer 3-vectors")
    return arr


def _check_guard(n, r):
    value = n ** r
    if value > GUARD_LIMIT:
        raise GuardExceeded(n, r, value)


def _encode(arr, stride):
    # balanced base-stride digits: any r-fold sum has coordinates bounded by
    # offset = (stride-1)/2, so summed keys decode uniquely with no carries
    return arr[:, 0] + stride * (arr[:, 1] + stride * arr[:, 2])


def _decode(keys, offset, stride):
    k = np.asarray(keys)
    x = k % stride
    x = np.where(x > offset, x - stride, x)
    k = (k - x) // stride
    y = k % stride
    y = np.where(y > offset, y - stride, y)
    z = (k - y) // stride
    return np.stack([x, y, z], axis=-1)


def _merge(keys, weights):
    """Sort keys and sum weights over equal keys."""
    order = np.argsort(keys, kind="stable")
    k = keys[order]
    w = weights[order]
    if len(k) == 0:
        return k, w
    boundaries = np.flatnonzero(np.diff(k)) + 1
    starts = np.concatenate(([0], boundaries))
    return k[starts], np.add.reduceat(w, starts)


def _convolve(table_keys, table_w, point_keys, point_w):
    """One convolution step: all pairwise key sums with multiplied weights.

    Pending block results are folded into one running table whenever they
    pile up, so peak memory stays near a few _BLOCK regardless of how badly
    the individual blocks compress."""
    npts = len(point_keys)
    rows_per_block = max(1, _BLOCK // max(1, npts))
    chunks_k, chunks_w, pending = [], [], 0
    for lo in range(0, len(table_keys), rows_per_block):
        tk = table_keys[lo:lo + rows_per_block]
        tw = table_w[lo:lo + rows_per_block]
        sums = (tk[:, None] + point_keys[None, :]).ravel()
        wts = (tw[:, None] * point_w[None, :]).ravel()
        k, w = _merge(sums, wts)
        chunks_k.append(k)
        chunks_w.append(w)
        pending += len(k)
        if pending >= 4 * _BLOCK and len(chunks_k) > 1:
            merged_k, merged_w = _merge(np.concatenate(chunks_k),
                                        np.concatenate(chunks_w))
            chunks_k, chunks_w = [merged_k], [merged_w]
            pending = len(merged_k)
    if len(chunks_k) == 1:
        return chunks_k[0], chunks_w[0]
    return _merge(np.concatenate(chunks_k), np.concatenate(chunks_w))


@dataclass
class RepCountTable:
    """r-fold ordered representation counts of a point set: for each
    reachable sum k, the number of ordered r-tuples adding to it."""

    r: int
    source_size: int
    offset: int
    stride: int
    keys: np.ndarray    # sorted int64
    counts: np.ndarray  # int64, same length

    def __len__(self):
        return len(self.keys)

    def total(self):
        return int(self.counts.sum())

    def vectors(self):
        return _decode(self.keys, self.offset, self.stride)

    def items(self):
        for vec, c in zip(self.vectors(), self.counts):
            yield tuple(int(v) for v in vec), int(c)

    def as_dict(self):
        return dict(self.items())

    def count_of(self, k):
        key = k[0] + self.stride * (k[1] + self.stride * k[2])
        i = np.searchsorted(self.keys, key)
        if i < len(self.keys) and self.keys[i] == key:
            return int(self.counts[i])
        return 0


def _geometry(arr, r):
    cmax = int(np.abs(arr).max()) if len(arr) else 0
    offset = r * cmax
    stride = 2 * offset + 1
    return offset, stride


def rep_counts(points, r):
    """Ordered r-fold representation counts; guard |A|^r <= 10^9."""
    if r < 1:
        raise ValueError("r must be a positive integer")
    arr = _as_point_array(points)
    _check_guard(len(arr), r)
    offset, stride = _geometry(arr, r)
    if len(arr) == 0:
        empty = np.array([], dtype=np.int64)
        return RepCountTable(r=r, source_size=0, offset=offset, stride=stride,
                             keys=empty, counts=empty.copy())
    base = np.sort(_encode(arr, stride))
    if len(np.unique(base)) != len(base):
        raise ValueError("points must be distinct")
    keys = base.copy()
    counts = np.ones(len(keys), dtype=np.int64)
    ones = np.ones(len(base), dtype=np.int64)
    for _ in range(r - 1):
        keys, counts = _convolve(keys, counts, base, ones)
    table = RepCountTable(r=r, source_size=len(arr), offset=offset,
                          stride=stride, keys=keys, counts=counts)
    if table.total() != len(arr) ** r:
        raise AssertionError("representation counts do not sum to |A|^r")
    return table


def weighted_rep_sums(points, weights, r):
    """Complex-weighted r-fold convolution: for each sum k the value
    sum_{n_1+...+n_r = k} a_{n_1} ... a_{n_r}.  Same guard as rep_counts."""
    arr = _as_point_array(points)
    w = np.asarray(weights, dtype=np.complex128)
    if w.shape != (len(arr),):
        raise ValueError("weights must align with points")
    _check_guard(len(arr), r)
    offset, stride = _geometry(arr, r)
    base = _encode(arr, stride)
    order = np.argsort(base, kind="stable")
    base = base[order]
    wts = w[order]
    keys, vals = base.copy(), wts.copy()
    for _ in range(r - 1):
        keys, vals = _convolve(keys, vals, base, wts)
    return keys, vals


def additive_energy(points, r):
    """E_r(A) = sum_k (r-fold representation count of k)^2, exactly."""
    table = rep_counts(points, r)
    e = int(np.sum(table.counts * table.counts))
    n = table.source_size
    if not n ** r <= e <= n ** (2 * r - 1):
        raise AssertionError("energy outside its universal bounds")
    return e


def z_max(points, r):
    """(k*, Z): the maximal r-fold representation count and its
    lexicographically least witness."""
    table = rep_counts(points, r)
    if len(table) == 0:
        raise ValueError("empty point set has no representation maximum")
    z = int(table.counts.max())
    winners = table.vectors()[table.counts == z]
    kstar = min(tuple(int(v) for v in row) for row in winners)
    return kstar, z


def upper_shell(lam, delta, form=None):
    """Shell points in the cone n1 > |n2| + |n3| (an injectivity domain for
    the symmetrized sums); square torus by default."""
    form = QuadraticForm.identity() if form is None else form
    pts = enumerate_shell(form, lam, delta).points
    return tuple(p for p in pts if p[0] > abs(p[1]) + abs(p[2]))


@dataclass(frozen=True)
class EnergyReport:
    lam: float
    delta: float
    r: int
    set_size: int
    energy: int
    z_value: int
    z_witness: tuple | None
    energy_bound: float       # lam^p delta^(p/2) + lam^(2p-3) delta^p, p = 2r
    energy_ratio: float
    z_bound: float            # lam delta at p = 4, lam^(p-3) delta^(p/2) above
    z_ratio: float
    upper_cone: bool


def energy_conjecture_report(lam, delta, r, full_shell=False):
    """Additive energy and peak representation count of the (upper) shell,
    next to the conjectured growth terms for p = 2r."""
    if full_shell:
        pts = enumerate_shell(QuadraticForm.identity(), lam, delta).points
    else:
        pts = upper_shell(lam, delta)
    p = 2 * r
    e_bound = lam ** p * delta ** (p / 2.0) + lam ** (2 * p - 3) * delta ** p
    z_bound = lam * delta if p == 4 else lam ** (p - 3) * delta ** (p / 2.0)
    if not pts:
        return EnergyReport(lam=lam, delta=delta, r=r, set_size=0, energy=0,
                            z_value=0, z_witness=None, energy_bound=e_bound,
                            energy_ratio=0.0, z_bound=z_bound, z_ratio=0.0,
                            upper_cone=not full_shell)
    e = additive_energy(pts, r)
    kstar, z = z_max(pts, r)
    return EnergyReport(
        lam=lam, delta=delta, r=r, set_size=len(pts), energy=e,
        z_value=z, z_witness=kstar,
        energy_bound=e_bound, energy_ratio=e / e_bound,
        z_bound=z_bound, z_ratio=z / z_bound,
        upper_cone=not full_shell,
    )
