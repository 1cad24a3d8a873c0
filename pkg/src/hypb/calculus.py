"""Wirtinger calculus on sampled fields.

    d    = (1/2)(d/dx - i d/dy)      dbar = (1/2)(d/dx + i d/dy)
    lap  = d dbar

and their weighted versions, with M the multiplier (Im z):

    d_up    = M d           dbar_up   = M dbar
    d_down  = M^2 d M^-1    dbar_down = M^2 dbar M^-1
    lap_h   = M^2 lap

The default axis scheme is a 4th-order non-periodic finite difference
(one-sided closures at the boundary rows); a periodic spectral scheme is
available for fields that are effectively periodic on the box.  Exact
commutation facts used by tests:

    d M^n - M^n d = -(i n / 2) M^(n-1)
    dbar M^n - M^n dbar = +(i n / 2) M^(n-1)
"""

from __future__ import annotations

import numpy as np

from .grid import Field, PlaneKind

__all__ = [
    "SCHEMES",
    "diff_x",
    "diff_y",
    "d",
    "d_bar",
    "laplacian",
    "mult_im_pow",
    "d_up",
    "dbar_up",
    "d_down",
    "dbar_down",
    "lap_h",
]

SCHEMES = ("fd4", "spectral")


def _fd4_first(arr: np.ndarray, h: float, axis: int) -> np.ndarray:
    """4th-order first derivative, one-sided at the ends. Needs >= 5 samples."""
    a = np.moveaxis(arr, axis, 0)
    n = a.shape[0]
    if n < 5:
        raise ValueError("fd4 needs at least 5 samples along the axis")
    out = np.empty_like(a)
    out[2:-2] = (-a[4:] + 8.0 * a[3:-1] - 8.0 * a[1:-3] + a[:-4]) / (12.0 * h)
    out[0] = (-25.0 * a[0] + 48.0 * a[1] - 36.0 * a[2] + 16.0 * a[3] - 3.0 * a[4]) / (12.0 * h)
    out[1] = (-3.0 * a[0] - 10.0 * a[1] + 18.0 * a[2] - 6.0 * a[3] + a[4]) / (12.0 * h)
    out[-2] = (3.0 * a[-1] + 10.0 * a[-2] - 18.0 * a[-3] + 6.0 * a[-4] - a[-5]) / (12.0 * h)
    out[-1] = (25.0 * a[-1] - 48.0 * a[-2] + 36.0 * a[-3] - 16.0 * a[-4] + 3.0 * a[-5]) / (12.0 * h)
    return np.moveaxis(out, 0, axis)


def _spectral_first(arr: np.ndarray, h: float, axis: int) -> np.ndarray:
    n = arr.shape[axis]
    xi = 2.0 * np.pi * np.fft.fftfreq(n, d=h)
    if n % 2 == 0:
        xi[n // 2] = 0.0  # drop the unsigned Nyquist mode for odd-order derivatives
    shape = [1] * arr.ndim
    shape[axis] = n
    return np.fft.ifft(1j * xi.reshape(shape) * np.fft.fft(arr, axis=axis), axis=axis)


def _first(arr: np.ndarray, h: float, axis: int, scheme: str) -> np.ndarray:
    if scheme == "fd4":
        return _fd4_first(arr, h, axis)
    if scheme == "spectral":
        return _spectral_first(arr, h, axis)
    raise ValueError(f"unknown scheme {scheme!r}")


def diff_x(f: Field, scheme: str = "fd4") -> Field:
    return Field(f.spec, _first(f.data, f.spec.hx, axis=1, scheme=scheme))


def diff_y(f: Field, scheme: str = "fd4") -> Field:
    return Field(f.spec, _first(f.data, f.spec.hy, axis=0, scheme=scheme))


def d(f: Field, scheme: str = "fd4") -> Field:
    fx = _first(f.data, f.spec.hx, 1, scheme)
    fy = _first(f.data, f.spec.hy, 0, scheme)
    return Field(f.spec, 0.5 * (fx - 1j * fy))


def d_bar(f: Field, scheme: str = "fd4") -> Field:
    fx = _first(f.data, f.spec.hx, 1, scheme)
    fy = _first(f.data, f.spec.hy, 0, scheme)
    return Field(f.spec, 0.5 * (fx + 1j * fy))


def laplacian(f: Field, scheme: str = "fd4") -> Field:
    """lap = d dbar, evaluated as the composition (quarter of the usual Laplacian)."""
    return d(d_bar(f, scheme), scheme)


def mult_im_pow(f: Field, p: float) -> Field:
    """Multiply by (Im z)^p.  Fractional p only on the upper half-plane grid."""
    spec = f.spec
    y = spec.y.reshape(-1, 1)
    if spec.plane is not PlaneKind.UPPER and p != int(p):
        raise ValueError("fractional powers of Im z need an upper-half-plane grid")
    if p == int(p):
        w = y ** int(p)
    else:
        w = y**p
    return Field(spec, f.data * w)


def d_up(f: Field, scheme: str = "fd4") -> Field:
    return mult_im_pow(d(f, scheme), 1)


def dbar_up(f: Field, scheme: str = "fd4") -> Field:
    return mult_im_pow(d_bar(f, scheme), 1)


def d_down(f: Field, scheme: str = "fd4") -> Field:
    return mult_im_pow(d(mult_im_pow(f, -1), scheme), 2)


def dbar_down(f: Field, scheme: str = "fd4") -> Field:
    return mult_im_pow(d_bar(mult_im_pow(f, -1), scheme), 2)


def lap_h(f: Field, scheme: str = "fd4") -> Field:
    return mult_im_pow(laplacian(f, scheme), 2)
