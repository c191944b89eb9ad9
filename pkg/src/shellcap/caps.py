"""Cap decomposition of a shell and per-cap lattice statistics.

A cap is the set of shell points nearest to one center of a maximal
sqrt(lam*delta)-separated family on the surface sqrt(Q) = lam.  Per cap we
classify the rank of the lattice generated by member differences, reduce a
rank-2 basis in the anisotropic cap metric, and build dyadic histograms of cap
sizes and of collinear / coplanar incidence classes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import (cross3, dot3, gauss_reduce_2d, norm_sq, primitive_of,
                     vec_sub)

CAP_RADIUS_FACTOR = 2.0  # every member lies within 2 sqrt(lam delta) of center


@dataclass
class Cap:
    """One cap: center on the surface, unit conormal A x / |A x|, members."""

    center: np.ndarray
    normal: np.ndarray
    normal_scale: float  # |A x_center|
    lam: float
    delta: float
    members: tuple
    rank: int | None = None
    rank1_dir: tuple | None = None
    rank2_basis: tuple | None = None  # reduced (u, v) in the cap metric
    rank2_w: tuple | None = None      # u x v, oriented along the conormal
    rank2_det: float | None = None    # |u x v| = lattice determinant

    @property
    def size(self):
        return len(self.members)


def _cell_of(p, cell):
    return (int(math.floor(p[0] / cell)),
            int(math.floor(p[1] / cell)),
            int(math.floor(p[2] / cell)))


def _neighbor_cells(c, reach):
    for dx in range(-reach, reach + 1):
        for dy in range(-reach, reach + 1):
            for dz in range(-reach, reach + 1):
                yield (c[0] + dx, c[1] + dy, c[2] + dz)


def build_cover(shell):
    """Partition the shell into caps.

    Centers: greedy maximal sqrt(lam*delta)-separated subset of the points
    projected to the surface, visited in lexicographic point order.
    Assignment: each point goes to its nearest center, ties broken by
    lexicographic center order.  Caps that end up empty are dropped.
    """
    lam, delta = shell.lam, shell.delta
    sep = math.sqrt(lam * delta)
    a = shell.form.matrix
    pts = shell.points
    if not pts:
        return []

    arr = shell.as_array().astype(float)
    q_vals = np.einsum("ij,jk,ik->i", arr, a, arr)
    scale = lam / np.sqrt(q_vals)
    projected = arr * scale[:, None]

    # greedy seeding with a hash grid of cell size sep: any center within sep
    # of a candidate lies in one of the 27 surrounding cells
    centers = []
    grid = {}
    for i in range(len(pts)):
        p = projected[i]
        c = _cell_of(p, sep)
        ok = True
        for cc in _neighbor_cells(c, 1):
            for j in grid.get(cc, ()):
                d = p - centers[j]
                if d @ d < sep * sep:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            grid.setdefault(c, []).append(len(centers))
            centers.append(p.copy())

    # nearest-center assignment; a center exists within sep + O(delta) of every
    # projected point, so searching two cells out is exhaustive
    members = [[] for _ in centers]
    for i in range(len(pts)):
        p = arr[i]
        c = _cell_of(p, sep)
        best = None
        for cc in _neighbor_cells(c, 2):
            for j in grid.get(cc, ()):
                d = p - centers[j]
                d2 = float(d @ d)
                key = (d2, tuple(centers[j]))
                if best is None or key < best[0]:
                    best = (key, j)
        if best is None:  # fall back to a full scan; should not happen
            cand = [(float((p - centers[j]) @ (p - centers[j])),
                     tuple(centers[j]), j) for j in range(len(centers))]
            d2, ckey, j = min(cand)
            best = ((d2, ckey), j)
        members[best[1]].append(pts[i])

    caps = []
    limit = (CAP_RADIUS_FACTOR * sep) ** 2
    for j, mem in enumerate(members):
        if not mem:
            continue
        center = centers[j]
        ax = a @ center
        ns = float(np.linalg.norm(ax))
        cap = Cap(center=center, normal=ax / ns, normal_scale=ns,
                  lam=lam, delta=delta, members=tuple(sorted(mem)))
        for mpt in cap.members:
            d = np.array(mpt, dtype=float) - center
            if float(d @ d) > limit * (1 + 1e-9):
                raise AssertionError("cap member outside the nominal radius")
        caps.append(cap)
    caps.sort(key=lambda cp: tuple(cp.center))
    return caps


def assign_naive(shell, caps):
    """O(points x centers) reassignment used as an oracle for build_cover.

    Every point is scored against every center (no hash grid); ties on the
    exact squared distance fall back to lexicographic center order, matching
    the cover's tie-breaking rule.
    """
    arr = shell.as_array().astype(float)
    centers = np.array([cp.center for cp in caps])
    out = [[] for _ in range(len(caps))]
    for i in range(len(arr)):
        p = arr[i]
        d = centers - p
        d2 = np.einsum("ij,ij->i", d, d)
        # the bulk scoring is vectorized; near-minimal candidates are then
        # re-scored with the same scalar arithmetic the cover uses, so ulp
        # differences between reduction orders cannot flip a tie
        cand = np.flatnonzero(d2 <= d2.min() + 1e-6)
        key, j = min(((float((p - centers[k]) @ (p - centers[k])),
                       tuple(centers[k])), int(k)) for k in cand)
        out[j].append(shell.points[i])
    return [tuple(sorted(m)) for m in out]


def lattice_basis(vectors):
    """Basis of the integer lattice generated by the given integer 3-vectors,
    via row-style Hermite reduction.  Returns 0..3 vectors."""
    return _hnf_rows(vectors)


def _hnf_rows(vectors):
    """Hermite normal form rows of the lattice generated by integer vectors."""
    rows = [list(v) for v in vectors if any(v)]
    out = []
    col = 0
    while col < 3 and rows:
        rows = [r for r in rows if any(r)]
        with_pivot = [r for r in rows if r[col] != 0]
        if not with_pivot:
            col += 1
            continue
        # reduce all rows against each other in this column by gcd steps
        while len(with_pivot) > 1:
            with_pivot.sort(key=lambda r: abs(r[col]))
            r0 = with_pivot[0]
            for r in with_pivot[1:]:
                q = r[col] // r0[col]
                for k in range(3):
                    r[k] -= q * r0[k]
            with_pivot = [r for r in with_pivot if r[col] != 0]
        pivot = with_pivot[0]
        if pivot[col] < 0:
            for k in range(3):
                pivot[k] = -pivot[k]
        out.append(tuple(pivot))
        rows = [r for r in rows if r is not pivot and any(r)]
        for r in rows:
            q = r[col] // pivot[col]
            if q:
                for k in range(3):
                    r[k] -= q * pivot[k]
        col += 1
    return out


def cap_metric(cap):
    """Gram matrix of the stretched cap metric |(I + delta^-1 n n^T) x|."""
    n = cap.normal
    t = 1.0 / cap.delta
    return np.eye(3) + (2.0 * t + t * t) * np.outer(n, n)


def classify_cap(cap):
    """Fill in rank data from the lattice of member differences.

    rank 1: primitive direction of the generator.  rank 2: basis reduced in
    the cap metric, with w = u x v oriented so w . normal >= 0 and
    |w| = the difference-lattice determinant.
    """
    if len(cap.members) <= 1:
        cap.rank = 0
        return cap
    base = cap.members[0]
    diffs = [vec_sub(mpt, base) for mpt in cap.members[1:]]
    basis = _hnf_rows(diffs)
    cap.rank = len(basis)
    if cap.rank == 1:
        cap.rank1_dir = primitive_of(basis[0])[0]
    elif cap.rank == 2:
        u, v = gauss_reduce_2d(basis[0], basis[1], metric=cap_metric(cap))
        w = cross3(u, v)
        proj = dot3(w, tuple(cap.normal))
        flip = proj < 0
        if proj == 0:
            # degenerate orientation: fall back to first-nonzero-positive
            flip = next(c for c in w if c != 0) < 0
        if flip:
            # negating u flips u x v without disturbing |u| <= |v|
            u = (-u[0], -u[1], -u[2])
            w = (-w[0], -w[1], -w[2])
        cap.rank2_basis = (u, v)
        cap.rank2_w = w
        cap.rank2_det = math.sqrt(norm_sq(w))
    return cap


@dataclass
class CapCensus:
    """Dyadic census: hist[(rank, s)] = number of caps of that rank with
    2^s <= size < 2^(s+1)."""

    lam: float
    delta: float
    n_caps: int
    n_points: int
    hist: dict = field(default_factory=dict)

    def rank_counts(self, rank):
        return {s: c for (r, s), c in sorted(self.hist.items()) if r == rank}


def census(caps, lam=None, delta=None):
    if lam is None:
        lam = caps[0].lam if caps else float("nan")
    if delta is None:
        delta = caps[0].delta if caps else float("nan")
    hist = {}
    npts = 0
    for cap in caps:
        if cap.rank is None:
            raise ValueError("caps must be classified before the census")
        s = len(cap.members).bit_length() - 1  # floor(log2 size)
        hist[(cap.rank, s)] = hist.get((cap.rank, s), 0) + 1
        npts += len(cap.members)
    return CapCensus(lam=float(lam), delta=float(delta), n_caps=len(caps),
                     n_points=npts, hist=hist)


def _line_classes(members):
    """Sizes of maximal collinear classes (lines meeting >= 2 members).

    A line is keyed by its primitive direction d and moment p x d, which is
    constant along the line; each distinct line collects its members once.
    """
    lines = {}
    n = len(members)
    for i in range(n):
        for j in range(i + 1, n):
            d, _ = primitive_of(vec_sub(members[j], members[i]))
            key = (d, cross3(members[i], d))
            if key not in lines:
                lines[key] = set()
            lines[key].add(i)
            lines[key].add(j)
    return [len(s) for s in lines.values()]


def _plane_classes(members):
    """Sizes of maximal coplanar classes: planes spanned by member differences
    (keyed by primitive normal and offset), counted once each."""
    planes = {}
    n = len(members)
    for i in range(n):
        for j in range(i + 1, n):
            dij = vec_sub(members[j], members[i])
            for k in range(j + 1, n):
                nv = cross3(dij, vec_sub(members[k], members[i]))
                if nv == (0, 0, 0):
                    continue
                nd, _ = primitive_of(nv)
                key = (nd, dot3(nd, members[i]))
                if key in planes:
                    continue
                planes[key] = sum(
                    1 for m in members if dot3(nd, m) == key[1])
    return list(planes.values())


def incidence_counts(caps):
    """Dyadic incidence table: table[(r, t)] = number of (cap, class) pairs
    with a maximal rank-r flat meeting the cap in m members, 2^t <= m < 2^(t+1).
    Only classes of size >= 2 count; r = 1 are lines, r = 2 planes."""
    table = {}
    for cap in caps:
        if len(cap.members) < 2:
            continue
        for m in _line_classes(cap.members):
            if m >= 2:
                t = m.bit_length() - 1
                table[(1, t)] = table.get((1, t), 0) + 1
        for m in _plane_classes(cap.members):
            if m >= 2:
                t = m.bit_length() - 1
                table[(2, t)] = table.get((2, t), 0) + 1
    return table


@dataclass
class Rank2Ratios:
    """Scaled rank-2 invariants per cap: rho1 = |w| N / (lam delta) and
    rho2 = |A x_theta ^ w| N / (lam delta)^(3/2)."""

    lam: float
    delta: float
    rows: list  # (cap_index, size, det, rho1, rho2)
    max_rho1: float
    max_rho2: float


def rank2_invariant_ratios(caps, lam=None, delta=None):
    if lam is None:
        lam = caps[0].lam if caps else float("nan")
    if delta is None:
        delta = caps[0].delta if caps else float("nan")
    rows = []
    for idx, cap in enumerate(caps):
        if cap.rank != 2:
            continue
        n = len(cap.members)
        w = np.array(cap.rank2_w, dtype=float)
        ax = cap.normal * cap.normal_scale
        rho1 = cap.rank2_det * n / (lam * delta)
        rho2 = float(np.linalg.norm(np.cross(ax, w))) * n / (lam * delta) ** 1.5
        rows.append((idx, n, cap.rank2_det, rho1, rho2))
    return Rank2Ratios(
        lam=float(lam), delta=float(delta), rows=rows,
        max_rho1=max((r[3] for r in rows), default=0.0),
        max_rho2=max((r[4] for r in rows), default=0.0),
    )
