import numpy as np
import pytest

from helpers import cloud_spectrum, rng_for
from offcorners import (
    numerical_radius,
    numerical_range_boundary,
    operator_norm,
    random_normal,
    random_unitary,
)
from offcorners.errors import DimensionMismatchError

SHIFT2 = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


def test_segment_for_real_diagonal():
    pts = numerical_range_boundary(np.diag([1.0, -1.0]), m=256)
    assert np.abs(pts.imag).max() < 1e-10
    assert pts.real.max() == pytest.approx(1.0, abs=1e-10)
    assert pts.real.min() == pytest.approx(-1.0, abs=1e-10)


def test_shift_disc_radius_half():
    pts = numerical_range_boundary(SHIFT2, m=720)
    radii = np.abs(pts)
    assert radii.max() == pytest.approx(0.5, abs=1e-3)
    assert radii.min() == pytest.approx(0.5, abs=1e-3)


def test_shift_radius_value():
    w = numerical_radius(SHIFT2, m=720)
    assert 0.4999 <= w <= 0.5001


def test_shift_radius_brute_force_oracle():
    # oracle: maximize |<Tx, x>| over many random unit vectors
    rng = rng_for(80)
    best = 0.0
    for _ in range(20000):
        x = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        x /= np.linalg.norm(x)
        best = max(best, abs(np.vdot(x, SHIFT2 @ x)))
    w = numerical_radius(SHIFT2, m=720)
    assert best <= w + 1e-9
    assert w - best < 1e-3


def test_hermitian_radius_is_norm():
    rng = rng_for(81)
    g = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    h = g + g.conj().T
    assert numerical_radius(h) == pytest.approx(operator_norm(h), abs=1e-6)


def test_unitary_radius_one():
    # grid underestimates by at most (pi/m)^2 / 2 ~ 9.5e-6 at m = 720
    assert numerical_radius(random_unitary(5, 2)) == pytest.approx(1.0, abs=1e-5)


def test_radius_bounds_random():
    rng = rng_for(82)
    for _ in range(30):
        n = int(rng.integers(2, 7))
        t = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        w = numerical_radius(t)
        nrm = operator_norm(t)
        assert 0.5 * nrm - 1e-6 <= w <= nrm + 1e-6


def test_normal_boundary_inside_spectrum_hull():
    # support function check: every boundary point stays inside conv(spectrum)
    rng = rng_for(83)
    for _ in range(10):
        n = int(rng.integers(2, 7))
        lam = cloud_spectrum(rng, n)
        t = random_normal(n, lam, rng)
        pts = numerical_range_boundary(t, m=90)
        dirs = np.exp(2j * np.pi * np.arange(180) / 180)
        support = np.max((np.conj(dirs)[:, None] * lam[None, :]).real, axis=1)
        vals = (np.conj(dirs)[:, None] * pts[None, :]).real
        assert np.all(vals <= support[:, None] + 1e-8)


def test_cycle_hull_is_triangle_with_zero_interior():
    c3 = np.roll(np.eye(3), 1, axis=0).astype(complex)  # 3-cycle permutation
    pts = numerical_range_boundary(c3, m=360)
    roots = np.exp(2j * np.pi * np.arange(3) / 3)
    dirs = np.exp(2j * np.pi * np.arange(360) / 360)
    support = np.max((np.conj(dirs)[:, None] * roots[None, :]).real, axis=1)
    vals = (np.conj(dirs)[:, None] * pts[None, :]).real
    assert np.all(vals <= support[:, None] + 1e-8)
    # 0 is interior: the boundary stays away from the origin in every direction
    assert np.max(vals, axis=1).min() > 0.1


def test_grid_too_small_rejected():
    with pytest.raises(DimensionMismatchError):
        numerical_radius(np.eye(2), m=4)
