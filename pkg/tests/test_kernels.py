import numpy as np
import pytest
from scipy.integrate import dblquad

from hypb import kernels as kn


def test_cell_average_of_inverse_matches_numeric_integration():
    hx, hy = 0.3, 0.2
    z0 = np.complex128(0.45 + 0.1j)
    re, _ = dblquad(lambda y, x: x / (x**2 + y**2),
                    0.45 - hx / 2, 0.45 + hx / 2,
                    lambda x: 0.1 - hy / 2, lambda x: 0.1 + hy / 2)
    im, _ = dblquad(lambda y, x: -y / (x**2 + y**2),
                    0.45 - hx / 2, 0.45 + hx / 2,
                    lambda x: 0.1 - hy / 2, lambda x: 0.1 + hy / 2)
    want = (re + 1j * im) / (hx * hy)
    assert abs(kn.avg_inv(z0, hx, hy) - want) < 1e-12


def test_cell_average_of_inverse_square_matches_numeric_integration():
    hx, hy = 0.3, 0.2
    z0 = np.complex128(0.3 + 0.2j)
    re, _ = dblquad(lambda y, x: (x**2 - y**2) / (x**2 + y**2) ** 2,
                    0.3 - hx / 2, 0.3 + hx / 2,
                    lambda x: 0.2 - hy / 2, lambda x: 0.2 + hy / 2)
    im, _ = dblquad(lambda y, x: -2 * x * y / (x**2 + y**2) ** 2,
                    0.3 - hx / 2, 0.3 + hx / 2,
                    lambda x: 0.2 - hy / 2, lambda x: 0.2 + hy / 2)
    want = (re + 1j * im) / (hx * hy)
    assert abs(kn.avg_inv_sq(z0, hx, hy) - want) < 1e-12


def test_singular_cell_averages_to_zero():
    # principal value over the symmetric cell around the pole
    z0 = np.complex128(0.0)
    assert kn.avg_inv(z0, 0.2, 0.2) == 0.0
    assert kn.avg_inv_sq(z0, 0.2, 0.2) == 0.0


def test_midpoint_values():
    z = np.array([0.45 + 0.1j, -1.0 + 2.0j])
    assert np.allclose(kn.midpoint_value("cauchy", z), 1.0 / z)
    assert np.allclose(kn.midpoint_value("beurling", z), -1.0 / z**2)


def test_unknown_kernel_kind_rejected():
    with pytest.raises((KeyError, ValueError)):
        kn.midpoint_value("riesz", np.array([1.0 + 1.0j]))


def test_table_shapes_cover_all_offsets():
    t = kn.planar_table("cauchy", 8, 6, 0.1, 0.1)
    assert t.shape == (15, 11)
    m = kn.mirror_table("beurling", 8, 6, 0.1, 0.1)
    assert m.shape == (15, 11)


def test_table_rotation_symmetry():
    # 1/zeta is odd under zeta -> -zeta, 1/zeta^2 is even; the offset tables
    # inherit this up to rounding in the averaged closed forms
    for avg in ("none", "shell", "all"):
        tc = kn.planar_table("cauchy", 8, 8, 0.1, 0.2, average=avg)
        tb = kn.planar_table("beurling", 8, 8, 0.1, 0.1, average=avg)
        assert np.max(np.abs(tc + tc[::-1, ::-1])) < 1e-12
        assert np.max(np.abs(tb - tb[::-1, ::-1])) < 1e-12


def test_shell_averaging_is_local():
    # averaging replaces midpoint values only near the singularity; the far
    # field is untouched
    tn = kn.planar_table("beurling", 8, 8, 0.1, 0.1, average="none")
    ts = kn.planar_table("beurling", 8, 8, 0.1, 0.1, average="shell")
    ta = kn.planar_table("beurling", 8, 8, 0.1, 0.1, average="all")
    diff = np.abs(ts - tn)
    assert np.count_nonzero(diff) > 0
    assert diff[0, 0] == 0.0  # far corner identical
    # full averaging touches every cell
    assert np.count_nonzero(np.abs(ta - tn)) == ta.size - 1  # pv cell is 0 in both


def test_anisotropic_cells_rejected_for_the_singular_kernel():
    # quarter-turn cancellation in the pv cell needs square cells; only the
    # table quadrature is affected (the fft path is a frequency multiplier)
    with pytest.raises(ValueError):
        kn.planar_table("beurling", 8, 8, 0.1, 0.2)
    # the mirror table has no pv cell, and the smooth kernel no constraint
    kn.mirror_table("beurling", 8, 8, 0.1, 0.2)
    kn.planar_table("cauchy", 8, 8, 0.1, 0.2)
