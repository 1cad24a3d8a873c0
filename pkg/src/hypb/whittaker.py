"""The degenerate confluent ODE side of the half-plane theory.

Functions h = (Im z) g with g anti-holomorphic satisfy

    y (d2/dx2 + d2/dy2) h + 2i dx h = 0,

and after a partial Fourier transform in x each frequency slice obeys,
in the variable t = 2 |xi| y,

    H''(t) = (1/4 + sign(xi)/t) H(t).

The general solutions of the two sign branches are

    X(t) = A1 t e^{t/2} + B1 t e^{-t/2} I(t),   I(t) = int_0^inf e^{-t s} s/(1+s) ds
    Y(t) = A2 e^{-t/2} (1 - t log t - t J(t)) + B2 t e^{-t/2},
                                                J(t) = int_0^t (e^s - 1 - s)/s^2 ds

(both verified here by residual tests; I has the closed form 1/t - e^t E1(t)
used as a cross-check).  Only the B2 mode t e^{-t/2} is compatible with the
weighted-energy finiteness condition, which is what the classifier below
exploits: a field is in the cokernel class iff its partial Fourier
transform is carried by xi <= 0 with y-profile proportional to y e^{y xi},
and the fitted coefficient B2(xi) is the classification output.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np
from scipy import integrate

from .calculus import _fd4_first
from .grid import Field, GridSpec, PlaneKind

__all__ = [
    "WhittakerSolution",
    "whittaker_X",
    "whittaker_Y",
    "x_integral",
    "y_integral",
    "ode_residual",
    "pde_residual",
    "pde_residual_ratio",
    "PartialFourierField",
    "partial_fourier",
    "inverse_partial_fourier",
    "ClassifyResult",
    "lemma_a1_classify",
    "default_classify_spec",
]


# ---------------------------------------------------------------------------
# special-function pieces


def x_integral(t) -> np.ndarray:
    """I(t) = int_0^inf e^{-t s} s/(1+s) ds by adaptive quadrature (rel tol 1e-10)."""
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(ts <= 0):
        raise ValueError("t must be positive")
    out = np.empty_like(ts)
    for i, tv in enumerate(ts):
        val, _ = integrate.quad(
            lambda s, tv=tv: math.exp(-tv * s) * s / (1.0 + s),
            0.0,
            np.inf,
            epsabs=1e-300,
            epsrel=1e-10,
            limit=200,
        )
        out[i] = val
    return out if np.ndim(t) else float(out[0])


def y_integral(t) -> np.ndarray:
    """J(t) = int_0^t (e^s - 1 - s)/s^2 ds; series for t <= 1, quadrature above."""
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(ts <= 0):
        raise ValueError("t must be positive")
    out = np.empty_like(ts)
    small = ts <= 1.0
    if np.any(small):
        tv = ts[small]
        acc = np.zeros_like(tv)
        term = tv.copy()  # m = 0: t / (1 * 2!)
        # sum t^(m+1) / ((m+1) (m+2)!)
        for m in range(0, 30):
            acc = acc + term / ((m + 1) * math.factorial(m + 2))
            term = term * tv
        out[small] = acc
    for i in np.nonzero(~small)[0]:
        tv = ts[i]
        val, _ = integrate.quad(
            lambda s: (math.expm1(s) - s) / s**2, 1.0, tv, epsabs=1e-300, epsrel=1e-12
        )
        out[i] = _J1 + val
    return out if np.ndim(t) else float(out[0])


_J1 = float(
    sum(1.0 / ((m + 1) * math.factorial(m + 2)) for m in range(0, 30))
)  # J(1) by the series


@dataclass
class WhittakerSolution:
    """One branch of H'' = (1/4 + sign/t) H; family X has sign +1, Y has -1."""

    family: str
    A: complex = 0.0
    B: complex = 1.0

    def __post_init__(self):
        if self.family not in ("X", "Y"):
            raise ValueError("family must be 'X' or 'Y'")

    @property
    def sign(self) -> int:
        return 1 if self.family == "X" else -1

    def __call__(self, t):
        if self.family == "X":
            return whittaker_X(t, self.A, self.B)
        return whittaker_Y(t, self.A, self.B)


def whittaker_X(t, A1: complex = 0.0, B1: complex = 1.0):
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise ValueError("t must be positive")
    return A1 * t * np.exp(t / 2.0) + B1 * t * np.exp(-t / 2.0) * x_integral(t)


def whittaker_Y(t, A2: complex = 1.0, B2: complex = 0.0):
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise ValueError("t must be positive")
    tlogt = t * np.log(t)  # -> 0 as t -> 0+
    return A2 * np.exp(-t / 2.0) * (1.0 - tlogt - t * y_integral(t)) + B2 * t * np.exp(-t / 2.0)


def ode_residual(sol: WhittakerSolution, t_grid, sign: Optional[int] = None) -> float:
    """Max normalized residual of H'' = (1/4 + sign/t) H over the grid.

    Second derivative by the 5-point O(h^4) stencil with h small against the
    e^{t/2} scale; passing an explicit wrong `sign` turns this into the
    branch negative control.
    """
    s = sol.sign if sign is None else sign
    t = np.asarray(t_grid, dtype=float)
    if np.any(t <= 0):
        raise ValueError("t_grid must be positive")
    h = np.minimum(0.01 * t, 0.05)
    f0 = sol(t)
    d2 = (
        -sol(t + 2 * h) + 16 * sol(t + h) - 30 * f0 + 16 * sol(t - h) - sol(t - 2 * h)
    ) / (12.0 * h**2)
    target = (0.25 + s / t) * f0
    denom = np.abs(f0) + np.abs(d2) + 1e-300
    return float(np.max(np.abs(d2 - target) / denom))


# ---------------------------------------------------------------------------
# the cokernel PDE on fields


def pde_residual(h: Field) -> Field:
    """y (dxx + dyy) h + 2i dx h, all derivatives by the 4th-order scheme."""
    spec = h.spec
    hx, hy = spec.hx, spec.hy
    dx1 = _fd4_first(h.data, hx, axis=1)
    dxx = _fd4_first(dx1, hx, axis=1)
    dyy = _fd4_first(_fd4_first(h.data, hy, axis=0), hy, axis=0)
    y = spec.y.reshape(-1, 1)
    return Field(spec, y * (dxx + dyy) + 2j * dx1)


def pde_residual_ratio(h: Field) -> float:
    """Residual normalized by the sizes of its two terms (scale-free)."""
    spec = h.spec
    hx, hy = spec.hx, spec.hy
    dx1 = _fd4_first(h.data, hx, axis=1)
    dxx = _fd4_first(dx1, hx, axis=1)
    dyy = _fd4_first(_fd4_first(h.data, hy, axis=0), hy, axis=0)
    y = spec.y.reshape(-1, 1)
    t1 = y * (dxx + dyy)
    t2 = 2j * dx1
    num = np.sqrt(np.sum(np.abs(t1 + t2) ** 2))
    den = np.sqrt(np.sum(np.abs(t1) ** 2)) + np.sqrt(np.sum(np.abs(t2) ** 2)) + 1e-300
    return float(num / den)


# ---------------------------------------------------------------------------
# partial Fourier transform in x


@dataclass
class PartialFourierField:
    spec: GridSpec
    xi: np.ndarray  # (nx,) angular frequencies, fftfreq order
    data: np.ndarray  # (ny, nx) coefficients approximating int h e^{-i xi x} dx
    meta: dict = dc_field(default_factory=dict)


def partial_fourier(h: Field) -> PartialFourierField:
    spec = h.spec
    edge = max(np.max(np.abs(h.data[:, 0])), np.max(np.abs(h.data[:, -1])))
    peak = np.max(np.abs(h.data))
    if peak > 0 and edge > 1e-8 * peak:
        warnings.warn(
            f"field is {edge/peak:.2e} of its peak at x = +/-L; "
            "frequency data will carry x-truncation ripple",
            stacklevel=2,
        )
    xi = 2.0 * np.pi * np.fft.fftfreq(spec.nx, d=spec.hx)
    x0 = spec.x[0]
    data = spec.hx * np.fft.fft(h.data, axis=1) * np.exp(-1j * xi * x0)[None, :]
    return PartialFourierField(spec=spec, xi=xi, data=data, meta=dict(h.meta))


def inverse_partial_fourier(p: PartialFourierField) -> Field:
    spec = p.spec
    x0 = spec.x[0]
    data = np.fft.ifft(p.data * np.exp(1j * p.xi * x0)[None, :], axis=1) / spec.hx
    return Field(spec, data, meta=dict(p.meta))


def default_classify_spec() -> GridSpec:
    """Wide, axis-hugging grid sized for 1e-3 frequency-profile accuracy."""
    return GridSpec(L=128.0, H=16.0, nx=2048, ny=640, plane=PlaneKind.UPPER)


# ---------------------------------------------------------------------------
# classification


@dataclass
class ClassifyResult:
    is_cokernel: bool
    xi: np.ndarray  # fitted window (negative frequencies)
    b2: np.ndarray  # fitted B2(xi) on the window
    pos_energy_frac: float
    fit_residual: float
    weight_value: float
    dyadic_growth: float
    thresholds: dict

    def summary(self) -> dict:
        return {
            "is_cokernel": bool(self.is_cokernel),
            "pos_energy_frac": self.pos_energy_frac,
            "fit_residual": self.fit_residual,
            "weight_value": self.weight_value,
            "dyadic_growth": self.dyadic_growth,
            "thresholds": self.thresholds,
        }


def lemma_a1_classify(
    h: Field,
    xi_window=(-2.5, -0.25),
    pos_tol: float = 1e-4,
    fit_tol: float = 1e-2,
    growth_tol: float = 1.3,
    wrong_branch: bool = False,
) -> ClassifyResult:
    """Test whether h looks like (Im z) times an anti-holomorphic function.

    Three grid-level criteria on the partial Fourier transform:
      (i)   essentially no energy at xi > 0;
      (ii)  each xi < 0 slice is proportional to y e^{y xi}; the factor is
            the fitted B2(xi) (least squares over y, residual reported);
      (iii) the weighted energy (1/2) sum |hhat|^2 / y^2 stays finite, in the
            sense that dyadic lower-cutoff partial sums stop growing.

    wrong_branch fits y e^{-y xi} instead (the growing solution); this is
    the designated negative control and must produce a large fit residual.
    """
    p = partial_fourier(h)
    spec = p.spec
    y = spec.y.reshape(-1, 1)
    absq = np.abs(p.data) ** 2

    tot = float(np.sum(absq))
    pos = float(np.sum(absq[:, p.xi > 0]))
    pos_frac = pos / tot if tot > 0 else 0.0

    lo, hi = xi_window
    cols = np.nonzero((p.xi >= lo) & (p.xi <= hi))[0]
    if cols.size == 0:
        raise ValueError("no frequencies in the fit window; enlarge the grid")
    xi_w = p.xi[cols]
    sgn = -1.0 if wrong_branch else 1.0
    prof = 2.0 * np.abs(xi_w)[None, :] * y * np.exp(sgn * y * xi_w[None, :])
    block = p.data[:, cols]
    denom = np.sum(prof * prof, axis=0)
    b2 = np.sum(block * prof, axis=0) / denom
    resid = block - b2[None, :] * prof
    fit_residual = float(
        np.sqrt(np.sum(np.abs(resid) ** 2) / max(np.sum(np.abs(block) ** 2), 1e-300))
    )

    # weighted energy over xi <= 0 and its dyadic lower-cutoff growth
    dxi = 2.0 * np.pi / (spec.nx * spec.hx)
    neg = p.xi < 0
    wdens = absq[:, neg] / y**2  # (ny, #neg)
    weight_value = 0.5 * float(np.sum(wdens)) * spec.hy * dxi
    cuts = []
    k = 1
    while k <= spec.ny // 4:
        cuts.append(k)
        k *= 2
    # S(c) sums rows at or above the cutoff index; a 1/y^2 divergence at the
    # axis makes S double each time the cutoff halves, an integrable density
    # leaves consecutive sums nearly equal
    sums = [0.5 * float(np.sum(wdens[c:])) * spec.hy * dxi for c in cuts]
    ratios = [sums[i] / max(sums[i + 1], 1e-300) for i in range(len(sums) - 1)]
    # growing solution branches blow up at the top of the box instead; the
    # top octave then dwarfs the shell below it
    s_top = float(np.sum(wdens[spec.ny // 2 :]))
    s_shell = float(np.sum(wdens[spec.ny // 4 : spec.ny // 2]))
    probes = ratios[:2] + [s_top / max(s_shell, 1e-300)]
    dyadic_growth = max(probes) if probes else 1.0

    ok = (pos_frac <= pos_tol) and (fit_residual <= fit_tol) and (dyadic_growth <= growth_tol)
    return ClassifyResult(
        is_cokernel=bool(ok),
        xi=xi_w,
        b2=b2,
        pos_energy_frac=pos_frac,
        fit_residual=fit_residual,
        weight_value=weight_value,
        dyadic_growth=dyadic_growth,
        thresholds={"pos_tol": pos_tol, "fit_tol": fit_tol, "growth_tol": growth_tol},
    )
