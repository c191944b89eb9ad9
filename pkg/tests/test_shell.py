import itertools

import numpy as np
import pytest

from shellcap.linalg import QuadraticForm
from shellcap.shell import (
    brute_force_shell,
    enumerate_shell,
    shell_census,
)

SQUARE = QuadraticForm.identity()


def test_unit_sphere_spot_counts():
    s = enumerate_shell(SQUARE, 5.0, 0.05)
    assert len(s.points) == 30
    assert all(x * x + y * y + z * z == 25 for (x, y, z) in s.points)

    s = enumerate_shell(SQUARE, 1.0, 0.05)
    assert set(s.points) == {
        (1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)}

    s = enumerate_shell(SQUARE, 1.414213, 0.01)
    assert len(s.points) == 12
    assert all(x * x + y * y + z * z == 2 for (x, y, z) in s.points)


def test_census_values():
    c = shell_census(enumerate_shell(SQUARE, 5.0, 0.05))
    assert c.count == 30
    assert c.volume_proxy == 25 * 0.05
    assert c.ratio == 30 / 1.25

    c = shell_census(enumerate_shell(SQUARE, 1.0, 0.05))
    assert c.count == 6 and c.ratio == 120.0

    c = shell_census(enumerate_shell(SQUARE, 1.2, 0.01))
    assert c.count == 0 and c.ratio == 0.0


def test_points_sorted_deduplicated():
    s = enumerate_shell(SQUARE, 7.0, 0.3)
    assert list(s.points) == sorted(set(s.points))


def test_strict_inequality_boundary():
    # lambda = 5, delta = 1: |x|^2 = 16 has sqrt exactly at lambda - delta,
    # |x|^2 = 36 exactly at lambda + delta; both boundaries excluded
    s = enumerate_shell(SQUARE, 5.0, 1.0)
    norms = {x * x + y * y + z * z for (x, y, z) in s.points}
    assert 16 not in norms and 36 not in norms
    assert norms == {17, 18, 19, 20, 21, 22, 24, 25, 26, 27, 29, 30, 32, 33, 34, 35}


def test_symmetry_square_torus():
    pts = set(enumerate_shell(SQUARE, 9.0, 0.4).points)
    for p in pts:
        for perm in itertools.permutations(p):
            for signs in itertools.product((1, -1), repeat=3):
                assert tuple(s * v for s, v in zip(signs, perm)) in pts


def test_monotone_in_delta():
    a = set(enumerate_shell(SQUARE, 6.0, 0.05).points)
    b = set(enumerate_shell(SQUARE, 6.0, 0.2).points)
    c = set(enumerate_shell(SQUARE, 6.0, 0.9).points)
    assert a <= b <= c


def test_matches_brute_force_square():
    for lam in (2.0, 5.0, 11.0, 17.5):
        for delta in (0.5, 0.1, lam ** -0.5, lam ** -1.0):
            s = enumerate_shell(SQUARE, lam, delta)
            assert s.points == brute_force_shell(SQUARE, lam, delta)


def test_matches_brute_force_skew_form():
    q = QuadraticForm([[2, 1, 0], [1, 2, 0], [0, 0, 3]])
    for lam in (3.0, 8.0):
        for delta in (0.5, 0.07):
            s = enumerate_shell(q, lam, delta)
            assert s.points == brute_force_shell(q, lam, delta)
            for p in s.points:
                v = np.sqrt(q(p))
                assert abs(v - lam) < delta


def test_dyadic_half_widths_exact():
    # delta an exact dyadic float: membership decisions must be exact
    q = QuadraticForm.diagonal(1, 2, 5)
    s = enumerate_shell(q, 4.0, 0.25)
    assert s.points == brute_force_shell(q, 4.0, 0.25)
    for p in s.points:
        assert (lambda t: abs(t - 4.0) < 0.25)(np.sqrt(q(p)))


def test_parameter_validation():
    with pytest.raises(ValueError):
        enumerate_shell(SQUARE, -1.0, 0.1)
    with pytest.raises(ValueError):
        enumerate_shell(SQUARE, 5.0, 0.0)
    with pytest.raises(ValueError):
        enumerate_shell(SQUARE, 5.0, 6.0)  # delta >= lambda


def test_point_set_records_inputs():
    s = enumerate_shell(SQUARE, 3.0, 0.2)
    assert s.lam == 3.0 and s.delta == 0.2
    assert s.form is SQUARE
