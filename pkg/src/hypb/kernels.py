"""Sampled kernel tables for the singular integral operators.

Two kernel families drive everything:

    cauchy    K(zeta) = 1 / zeta
    beurling  K(zeta) = -1 / zeta^2

Half-plane operators combine a translation-invariant part evaluated at
zeta = z - w ("T1" offsets, (i - j) hy in y) with a mirror part evaluated
at z - conj(w) or conj(z) - w ("T2" offsets, +/-(i + j + 1) hy in y, never
zero on cell-centered grids).

Near the singularity a midpoint sample misrepresents the integral, so the
tables can replace entries by exact cell averages

    (1/|cell|) int_cell K(zeta) dA(zeta)

computed from antiderivatives with respect to the corner coordinates:

    d2/du dv [-i (zeta ln zeta - zeta)] = 1/zeta
    d2/du dv [ i  ln zeta            ] = 1/zeta^2      (zeta = u + iv)

The four-corner difference is branch-safe as long as one log branch is
continuous on the whole cell.  Every cell not containing 0 lies in
{Re > 0}, {Re < 0}, {Im > 0} or {Im < 0}; the first uses the principal
log, the second maps to the first by the parity of K, and the half-plane
cases use logs rotated by +/- pi/2.  The coincident cell (offset 0) gets
the value 0: the 1/zeta average vanishes by oddness, and the 1/zeta^2
entry is the omitted principal-value cell (exactly zero for square
cells).
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "avg_inv",
    "avg_inv_sq",
    "midpoint_value",
    "planar_table",
    "mirror_table",
]


def _branch_log(c: np.ndarray, pos_re: np.ndarray, pos_im: np.ndarray) -> np.ndarray:
    """A log branch continuous on each cell; masks are per-cell, broadcast over corners."""
    with np.errstate(divide="ignore", invalid="ignore"):
        base = np.log(c)
        upper = np.log(-1j * c) + 0.5j * np.pi
        lower = np.log(1j * c) - 0.5j * np.pi
    return np.where(pos_re, base, np.where(pos_im, upper, lower))


def _corner_sum(z0, hx, hy, prim):
    a, b = 0.5 * hx, 0.5 * hy
    return (
        prim(z0 + a + 1j * b)
        - prim(z0 + a - 1j * b)
        - prim(z0 - a + 1j * b)
        + prim(z0 - a - 1j * b)
    ) / (hx * hy)


def _masks(z0, hx, hy):
    center = (np.abs(z0.real) < 0.25 * hx) & (np.abs(z0.imag) < 0.25 * hy)
    neg_re = (z0.real + 0.5 * hx) < 0
    return center, neg_re


def avg_inv(z0, hx: float, hy: float) -> np.ndarray:
    """Exact cell averages of 1/zeta over cells centered at the offsets z0."""
    z0 = np.asarray(z0, dtype=complex)
    center, neg_re = _masks(z0, hx, hy)
    work = np.where(neg_re, -z0, z0)  # 1/zeta is odd: flip cell, negate result
    pos_re = (work.real - 0.5 * hx) > 0
    pos_im = (work.imag - 0.5 * hy) > 0

    def prim(c):
        L = _branch_log(c, pos_re, pos_im)
        return -1j * (c * L - c)

    out = _corner_sum(work, hx, hy, prim)
    out = np.where(neg_re, -out, out)
    return np.where(center, 0.0, out)


def avg_inv_sq(z0, hx: float, hy: float) -> np.ndarray:
    """Exact cell averages of 1/zeta^2; the coincident cell is 0 (omitted pv cell)."""
    z0 = np.asarray(z0, dtype=complex)
    center, neg_re = _masks(z0, hx, hy)
    work = np.where(neg_re, -z0, z0)  # 1/zeta^2 is even: flip cell, keep sign
    pos_re = (work.real - 0.5 * hx) > 0
    pos_im = (work.imag - 0.5 * hy) > 0

    def prim(c):
        return 1j * _branch_log(c, pos_re, pos_im)

    out = _corner_sum(work, hx, hy, prim)
    return np.where(center, 0.0, out)


def midpoint_value(kind: str, z0: np.ndarray) -> np.ndarray:
    """Pointwise kernel values; the zero offset maps to 0 (excluded source cell)."""
    z0 = np.asarray(z0, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        if kind == "cauchy":
            vals = 1.0 / z0
        elif kind == "beurling":
            vals = -1.0 / z0**2
        else:
            raise ValueError(f"unknown kernel kind {kind!r}")
    return np.where(z0 == 0, 0.0, vals)


def _avg_value(kind: str, z0, hx, hy):
    if kind == "cauchy":
        return avg_inv(z0, hx, hy)
    if kind == "beurling":
        return -avg_inv_sq(z0, hx, hy)
    raise ValueError(f"unknown kernel kind {kind!r}")


def planar_table(
    kind: str, ny: int, nx: int, hx: float, hy: float, average: str = "shell"
) -> np.ndarray:
    """Offsets (i - j) hy x (k - l) hx; shape (2 ny - 1, 2 nx - 1).

    average:
      none  - midpoint everywhere (coincident offset 0)
      shell - exact averages on the 3 x 3 block around the singular offset
      all   - exact averages everywhere
    """
    if kind == "beurling" and not math.isclose(hx, hy, rel_tol=1e-12):
        # the pv cell vanishes by quarter-turn cancellation only when the
        # cell is square; a rectangular cell would need a nonzero pv value
        raise ValueError(
            f"the singular kernel table needs square cells, got hx={hx!r} hy={hy!r}"
        )
    dy = (np.arange(-(ny - 1), ny) * hy)[:, None]
    dx = (np.arange(-(nx - 1), nx) * hx)[None, :]
    z0 = dx + 1j * dy
    if average == "all":
        return _avg_value(kind, z0, hx, hy)
    tab = midpoint_value(kind, z0)
    if average == "shell":
        block = z0[ny - 2 : ny + 1, nx - 2 : nx + 1]
        tab[ny - 2 : ny + 1, nx - 2 : nx + 1] = _avg_value(kind, block, hx, hy)
    elif average != "none":
        raise ValueError(f"unknown averaging mode {average!r}")
    return tab


def mirror_table(
    kind: str, ny: int, nx: int, hx: float, hy: float, sign: int = 1, average: str = "shell"
) -> np.ndarray:
    """Offsets (k - l) hx + sign * i (i + j + 1) hy; rows s = 1 .. 2 ny - 1.

    sign +1 is the z - conj(w) geometry, -1 the conj(z) - w one.  The table
    is never singular, but the s = 1 row sits one cell step from the
    singularity; with average='shell' that row's central 3 cells get exact
    averages so a restricted whole-plane operator and the half-plane
    operator agree cell for cell.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    s = (np.arange(1, 2 * ny) * hy * sign)[:, None]
    dx = (np.arange(-(nx - 1), nx) * hx)[None, :]
    z0 = dx + 1j * s
    tab = midpoint_value(kind, z0)
    if average == "shell":
        block = z0[0:1, nx - 2 : nx + 1]
        tab[0:1, nx - 2 : nx + 1] = _avg_value(kind, block, hx, hy)
    elif average == "all":
        tab = _avg_value(kind, z0, hx, hy)
    elif average != "none":
        raise ValueError(f"unknown averaging mode {average!r}")
    return tab
