"""Exact 3x3 linear algebra over the integers and rationals.

Everything downstream (shell membership, cap lattices, reduced bases) depends
on these primitives being exact: integer vectors are plain tuples of Python
ints, rational matrices are Fractions, and no float ever decides a lattice
question.  Floats appear only where a metric or a residual is genuinely
real-valued.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

Vec3 = tuple  # (int, int, int) unless stated otherwise

_MAX_REDUCE_ITERS = 10_000


def dot3(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross3(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def vec_add(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def vec_sub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def vec_scale(c, a):
    return (c * a[0], c * a[1], c * a[2])


def vec_neg(a):
    return (-a[0], -a[1], -a[2])


def norm_sq(a):
    return a[0] * a[0] + a[1] * a[1] + a[2] * a[2]


def mat_vec(m, v):
    return tuple(dot3(row, v) for row in m)


def mat_transpose(m):
    return tuple(tuple(m[i][j] for i in range(3)) for j in range(3))


def det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def adjugate(m):
    """Transposed cofactor matrix, so that m @ adjugate(m) == det3(m) * I.

    Element types are preserved: integer input gives integer output, Fraction
    gives Fraction, float gives float.  Input may be any 3x3 nested sequence
    or ndarray; output is a tuple of row tuples (ndarray in, ndarray out).
    """
    rows = [[m[i][j] for j in range(3)] for i in range(3)]

    def cof(i, j):
        r = [k for k in range(3) if k != i]
        c = [k for k in range(3) if k != j]
        minor = rows[r[0]][c[0]] * rows[r[1]][c[1]] - rows[r[0]][c[1]] * rows[r[1]][c[0]]
        return minor if (i + j) % 2 == 0 else -minor

    # adjugate = transpose of cofactors
    out = tuple(tuple(cof(j, i) for j in range(3)) for i in range(3))
    if isinstance(m, np.ndarray):
        return np.array(out, dtype=m.dtype)
    return out


def wedge_identity_check(m, u, x, rel_tol=1e-10):
    """Check M^T((Mu) x (Mx)) == det(M) (u x x); returns (ok, residual).

    Exact for integer input (residual 0 or positive); for float input the
    residual is compared against rel_tol scaled by the magnitude of the sides.
    """
    rows = tuple(tuple(r) for r in m)
    mu = mat_vec(rows, u)
    mx = mat_vec(rows, x)
    lhs = mat_vec(mat_transpose(rows), cross3(mu, mx))
    rhs = vec_scale(det3(rows), cross3(u, x))
    diff = max(abs(lhs[i] - rhs[i]) for i in range(3))
    exact = all(isinstance(v, (int, Fraction)) for row in rows for v in row) and all(
        isinstance(v, (int, Fraction)) for v in (*u, *x)
    )
    if exact:
        return diff == 0, float(diff)
    scale = max(1.0, *(abs(float(v)) for v in (*lhs, *rhs)))
    return abs(diff) <= rel_tol * scale, float(diff) / scale


def primitive_of(u):
    """Primitive direction and content of a nonzero integer vector.

    Returns (direction, content) with gcd(direction) = 1, content = gcd(u) > 0,
    and the first nonzero coordinate of direction positive.  The sign
    convention means content * direction == +-u.
    """
    if u == (0, 0, 0) or all(c == 0 for c in u):
        raise ValueError("zero vector has no direction")
    g = math.gcd(math.gcd(abs(u[0]), abs(u[1])), abs(u[2]))
    d = (u[0] // g, u[1] // g, u[2] // g)
    for c in d:
        if c != 0:
            if c < 0:
                d = vec_neg(d)
            break
    return d, g


def _round_half_toward_zero(q):
    # works for float and Fraction alike
    f = math.floor(q)
    r = q - f
    if r > 0.5:
        return f + 1
    if r < 0.5:
        return f
    return f if q > 0 else f + 1


def gauss_reduce_2d(b1, b2, metric=None):
    """Lagrange-reduce a rank-2 lattice basis of integer 3-vectors.

    With metric None the inner product is Euclidean and exact.  Otherwise
    metric is a 3x3 positive-definite Gram matrix (any float array) and inner
    products are taken as x^T G y.  The output (u, v) satisfies |u| <= |v| and
    |<u,v>| <= |u|^2 / 2 in the chosen metric, and u x v equals b1 x b2 up to
    sign (the lattice, and so the determinant, is unchanged).
    """
    if cross3(b1, b2) == (0, 0, 0):
        raise ValueError("rank deficient")
    if metric is None:
        def ip(x, y):
            return dot3(x, y)
    else:
        g = np.asarray(metric, dtype=float)
        def ip(x, y):
            return float(np.array(x, dtype=float) @ g @ np.array(y, dtype=float))

    u, v = tuple(b1), tuple(b2)
    for _ in range(_MAX_REDUCE_ITERS):
        if ip(u, u) > ip(v, v):
            u, v = v, u
        nu = ip(u, u)
        q = Fraction(ip(u, v), nu) if metric is None else ip(u, v) / nu
        mu = _round_half_toward_zero(q)
        if mu == 0:
            return u, v
        v = vec_sub(v, vec_scale(mu, u))
    raise RuntimeError("basis reduction failed to terminate")


def _xgcd(a, b):
    # returns (g, x, y) with x*a + y*b == g == gcd(a, b) >= 0
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def extend_basis(u):
    """Complete a primitive integer vector to a unimodular triple.

    Returns (p, q, v, w) with det(u|p|q) = +-1, v = u x p and w = u x q an
    integer basis of the orthogonal-complement lattice u^perp, and u = +-(v x w).
    The pair (v, w) is Gauss-reduced in the Euclidean metric; (p, q) is
    re-lifted through the same unimodular moves so the wedge relations survive.
    """
    if all(c == 0 for c in u):
        raise ValueError("input not primitive: zero vector")
    g_all = math.gcd(math.gcd(abs(u[0]), abs(u[1])), abs(u[2]))
    if g_all != 1:
        raise ValueError(f"input not primitive: content {g_all}")

    u0, u1, u2 = u
    g, x, y = _xgcd(u0, u1)
    if g == 0:
        # u = (0, 0, +-1)
        p0, q0 = (1, 0, 0), (0, u2, 0)
    else:
        s, sg, tg = _xgcd(g, u2)
        assert s == 1
        p0 = (-y, x, 0)
        q0 = (-tg * (u0 // g), -tg * (u1 // g), sg)
    # det(u|p0|q0) == +-1 by construction; verified cheaply
    d = det3(mat_transpose((u, p0, q0)))
    assert d in (1, -1), d

    v, w = cross3(u, p0), cross3(u, q0)
    p, q = p0, q0
    # Gauss-reduce (v, w), mirroring every move on (p, q); u x (.) is linear
    # so v = u x p, w = u x q stay true throughout.
    for _ in range(_MAX_REDUCE_ITERS):
        if norm_sq(v) > norm_sq(w):
            v, w = w, v
            p, q = q, p
        mu = _round_half_toward_zero(Fraction(dot3(v, w), norm_sq(v)))
        if mu == 0:
            break
        w = vec_sub(w, vec_scale(mu, v))
        q = vec_sub(q, vec_scale(mu, p))
    else:
        raise RuntimeError("basis reduction failed to terminate")

    # sign-normalize v and w (first nonzero coordinate positive), flipping the
    # lifted vector alongside
    for c in v:
        if c != 0:
            if c < 0:
                v, p = vec_neg(v), vec_neg(p)
            break
    for c in w:
        if c != 0:
            if c < 0:
                w, q = vec_neg(w), vec_neg(q)
            break
    return p, q, v, w


def complement_generators(u):
    """The standard spanning set of u^perp for integer u: rows are integer
    vectors orthogonal to u that generate the full orthogonal lattice."""
    u0, u1, u2 = u
    return ((u1, -u0, 0), (u2, 0, -u0), (0, u2, -u1))


def in_lattice_2d(g, v, w):
    """Is g an integer combination of v and w?  (All integer 3-vectors;
    v, w must be independent.)  Returns the coefficient pair or None."""
    n = cross3(v, w)
    nn = norm_sq(n)
    if nn == 0:
        raise ValueError("v, w are linearly dependent")
    if dot3(g, n) != 0:
        return None
    a_num = dot3(cross3(g, w), n)
    b_num = dot3(cross3(v, g), n)
    if a_num % nn or b_num % nn:
        return None
    return a_num // nn, b_num // nn


class QuadraticForm:
    """Positive-definite ternary quadratic form Q(x) = x^T A x.

    Carries the float matrix, an exact integer-cleared copy (A_int / denom with
    A_int = denom * A integral; floats are dyadic rationals, so this is always
    possible), the symmetric square root L, and the adjugate.  The constructor
    validates symmetry, positive definiteness, L L = A to 1e-12 relative, and
    A adj(A) = det(A) I exactly on the rational copy.
    """

    __slots__ = ("matrix", "exact", "denom", "int_matrix", "sqrt_matrix",
                 "adjugate_matrix", "det", "det_exact")

    def __init__(self, matrix):
        a = np.asarray(matrix, dtype=float)
        if a.shape != (3, 3):
            raise ValueError("expected a 3x3 matrix")
        if not np.array_equal(a, a.T):
            raise ValueError("form matrix must be symmetric")
        evals, evecs = np.linalg.eigh(a)
        if evals[0] <= 1e-12 * max(1.0, evals[-1]):
            raise ValueError("form matrix must be positive definite")
        self.matrix = a
        self.exact = tuple(tuple(Fraction(v) for v in row) for row in a.tolist())
        denom = 1
        for row in self.exact:
            for v in row:
                denom = denom * v.denominator // math.gcd(denom, v.denominator)
        self.denom = denom
        self.int_matrix = tuple(
            tuple(int(v * denom) for v in row) for row in self.exact
        )
        self.sqrt_matrix = (evecs * np.sqrt(evals)) @ evecs.T
        err = np.abs(self.sqrt_matrix @ self.sqrt_matrix - a).max()
        if err > 1e-12 * max(1.0, np.abs(a).max()):
            raise ValueError("square root validation failed")
        self.adjugate_matrix = adjugate(self.exact)
        self.det_exact = det3(self.exact)
        self.det = float(self.det_exact)
        prod = tuple(
            tuple(sum(self.exact[i][k] * self.adjugate_matrix[k][j] for k in range(3))
                  for j in range(3))
            for i in range(3)
        )
        expect = tuple(
            tuple(self.det_exact if i == j else Fraction(0) for j in range(3))
            for i in range(3)
        )
        if prod != expect:
            raise ValueError("adjugate validation failed")

    @classmethod
    def identity(cls):
        return cls(np.eye(3))

    @classmethod
    def diagonal(cls, d1, d2, d3):
        return cls(np.diag([float(d1), float(d2), float(d3)]))

    def __repr__(self):
        return f"QuadraticForm({self.matrix.tolist()})"

    def __call__(self, x):
        return evaluate_form(self, x)

    def evaluate_int(self, x):
        """denom * Q(x) as an exact integer, for integer x."""
        m = self.int_matrix
        x0, x1, x2 = x
        return (
            m[0][0] * x0 * x0 + m[1][1] * x1 * x1 + m[2][2] * x2 * x2
            + 2 * (m[0][1] * x0 * x1 + m[0][2] * x0 * x2 + m[1][2] * x1 * x2)
        )

    def evaluate_exact(self, x):
        """Q(x) as a Fraction, for integer (or Fraction) x."""
        m = self.exact
        acc = Fraction(0)
        for i in range(3):
            for j in range(3):
                acc += m[i][j] * x[i] * x[j]
        return acc


def evaluate_form(q, x):
    """Q(x) = x^T A x as a float; x is any real 3-vector."""
    a = q.matrix if isinstance(q, QuadraticForm) else np.asarray(q, dtype=float)
    xv = np.asarray(x, dtype=float)
    return float(xv @ a @ xv)
