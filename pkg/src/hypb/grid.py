"""Cell-centered grids, complex fields, and weighted integrals.

Everything downstream integrates against the normalized area measure
dA = dx dy / pi.  Grids are uniform and cell-centered: on a half-plane
box [-L, L] x (0, H] the y-samples sit at (j + 1/2) * hy, so no sample
ever lands on the real axis, where the hyperbolic weights (Im z)^(+-p)
degenerate.  A full-plane box [-L, L] x [-H, H] built by odd reflection
of a half-plane grid has the same spacing and is symmetric under
y -> -y, sample for sample.

Norms use a plain midpoint rule with a fixed-shape pairwise reduction
(numpy's summation), so results are reproducible bit-for-bit across
runs and thread counts.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

__all__ = [
    "PlaneKind",
    "WeightKind",
    "GridSpec",
    "Field",
    "lp_norm",
    "inner_product",
    "extend_odd",
    "restrict_upper",
    "reflect_field",
    "save_field",
    "load_field",
    "top_octave_fraction",
]


class PlaneKind(enum.Enum):
    FULL = "full"
    UPPER = "upper"


class WeightKind(enum.Enum):
    """Weight applied inside the L^p integral.

    PLAIN            : 1
    HYPERBOLIC       : (Im z)^(-p)   -- the L^p(H) norm of the paper
    DUAL_HYPERBOLIC  : (Im z)^(+p)   -- the L^p(H*) norm
    """

    PLAIN = "plain"
    HYPERBOLIC = "hyperbolic"
    DUAL_HYPERBOLIC = "dual_hyperbolic"


@dataclass(frozen=True)
class GridSpec:
    """Uniform cell-centered grid on [-L, L] x (0, H] or [-L, L] x [-H, H]."""

    L: float
    H: float
    nx: int
    ny: int
    plane: PlaneKind = PlaneKind.UPPER

    def __post_init__(self):
        if not (self.L > 0 and self.H > 0):
            raise ValueError("box half-width L and height H must be positive")
        if self.nx < 4 or self.ny < 4:
            raise ValueError("need at least 4 cells per direction")
        if self.plane is PlaneKind.FULL and self.ny % 2:
            raise ValueError("full-plane grids need even ny so rows pair under y -> -y")

    @property
    def hx(self) -> float:
        return 2.0 * self.L / self.nx

    @property
    def hy(self) -> float:
        if self.plane is PlaneKind.UPPER:
            return self.H / self.ny
        return 2.0 * self.H / self.ny

    @property
    def cell_measure(self) -> float:
        """Cell area under dA = dx dy / pi."""
        return self.hx * self.hy / math.pi

    @property
    def x(self) -> np.ndarray:
        return -self.L + (np.arange(self.nx) + 0.5) * self.hx

    @property
    def y(self) -> np.ndarray:
        if self.plane is PlaneKind.UPPER:
            return (np.arange(self.ny) + 0.5) * self.hy
        return -self.H + (np.arange(self.ny) + 0.5) * self.hy

    def zz(self) -> np.ndarray:
        """Complex coordinates, shape (ny, nx), row-major in y."""
        return self.x[None, :] + 1j * self.y[:, None]

    def weight(self, p: float, kind: WeightKind) -> np.ndarray:
        """Pointwise weight of shape (ny, 1), broadcastable over rows."""
        if not isinstance(kind, WeightKind):
            raise TypeError(f"weight kind must be a WeightKind, got {kind!r}")
        if kind is WeightKind.PLAIN:
            return np.ones((self.ny, 1))
        if self.plane is not PlaneKind.UPPER:
            raise ValueError(f"{kind.value} weight only makes sense on the upper half-plane")
        expo = -p if kind is WeightKind.HYPERBOLIC else p
        return (self.y[:, None]) ** expo

    def summary(self) -> dict:
        return {
            "L": self.L,
            "H": self.H,
            "nx": self.nx,
            "ny": self.ny,
            "plane": self.plane.value,
        }


@dataclass
class Field:
    """Complex samples on a grid, plus free-form diagnostics in `meta`."""

    spec: GridSpec
    data: np.ndarray
    meta: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=np.complex128)
        if self.data.shape != (self.spec.ny, self.spec.nx):
            raise ValueError(
                f"data shape {self.data.shape} does not match grid ({self.spec.ny}, {self.spec.nx})"
            )

    def copy(self) -> "Field":
        return Field(self.spec, self.data.copy(), dict(self.meta))

    def conj(self) -> "Field":
        return Field(self.spec, np.conj(self.data), dict(self.meta))


def lp_norm(f: Field, p: float = 2.0, weight: WeightKind = WeightKind.PLAIN) -> float:
    """Midpoint-rule L^p norm, ( sum |f|^p w * hx hy / pi )^(1/p).

    The weight is applied pointwise, so lp_norm(f, p, HYPERBOLIC) agrees
    with lp_norm(f / Im z, p, PLAIN) to rounding, with no discretization
    gap between the two.
    """
    if p <= 0:
        raise ValueError("p must be positive")
    w = f.spec.weight(p, weight)
    acc = np.sum(np.abs(f.data) ** p * w)
    return float((acc * f.spec.cell_measure) ** (1.0 / p))


def inner_product(f: Field, g: Field, weight: WeightKind = WeightKind.PLAIN) -> complex:
    """Sesquilinear pairing sum f conj(g) w(p=2) * hx hy / pi."""
    if f.spec != g.spec:
        raise ValueError("fields live on different grids")
    w = f.spec.weight(2.0, weight)
    return complex(np.sum(f.data * np.conj(g.data) * w) * f.spec.cell_measure)


def extend_odd(f: Field) -> Field:
    """Odd extension g(z) = f(z) for Im z > 0, g(z) = -f(conj z) below.

    The negation carries no complex conjugation of the values; only the
    evaluation point is reflected.
    """
    if f.spec.plane is not PlaneKind.UPPER:
        raise ValueError("odd extension starts from a half-plane field")
    s = f.spec
    full = GridSpec(s.L, s.H, s.nx, 2 * s.ny, PlaneKind.FULL)
    data = np.empty((2 * s.ny, s.nx), dtype=np.complex128)
    data[s.ny:, :] = f.data
    data[: s.ny, :] = -f.data[::-1, :]
    return Field(full, data, dict(f.meta))


def restrict_upper(f: Field) -> Field:
    """Keep the rows with Im z > 0 of a full-plane field."""
    if f.spec.plane is not PlaneKind.FULL:
        raise ValueError("restriction acts on full-plane fields")
    s = f.spec
    half = GridSpec(s.L, s.H, s.nx, s.ny // 2, PlaneKind.UPPER)
    return Field(half, f.data[s.ny // 2:, :].copy(), dict(f.meta))


def reflect_field(f: Field) -> Field:
    """Samples of z -> f(conj z) on the same full-plane grid (row flip)."""
    if f.spec.plane is not PlaneKind.FULL:
        raise ValueError("row reflection needs a full-plane grid")
    return Field(f.spec, f.data[::-1, :].copy(), dict(f.meta))


# ---------------------------------------------------------------------------
# field files: CSV with a JSON sidecar describing the grid


def _sidecar_path(path: Path) -> Path:
    return path.with_suffix(".json") if path.suffix == ".csv" else Path(str(path) + ".json")


def save_field(f: Field, path) -> Path:
    """Write `x,y,re,im` rows (y-major) at 17 significant digits."""
    path = Path(path)
    xs = f.spec.x
    ys = f.spec.y
    with open(path, "w") as fh:
        fh.write("x,y,re,im\n")
        for j in range(f.spec.ny):
            row = f.data[j]
            yj = ys[j]
            for i in range(f.spec.nx):
                v = row[i]
                fh.write(f"{xs[i]:.17g},{yj:.17g},{v.real:.17g},{v.imag:.17g}\n")
    side = dict(f.spec.summary())
    if f.meta:
        side["meta"] = _jsonable(f.meta)
    with open(_sidecar_path(path), "w") as fh:
        json.dump(side, fh, indent=1)
        fh.write("\n")
    return path


def load_field(path) -> Field:
    path = Path(path)
    with open(_sidecar_path(path)) as fh:
        side = json.load(fh)
    spec = GridSpec(
        L=float(side["L"]),
        H=float(side["H"]),
        nx=int(side["nx"]),
        ny=int(side["ny"]),
        plane=PlaneKind(side["plane"]),
    )
    raw = np.loadtxt(path, delimiter=",", skiprows=1)
    if raw.shape != (spec.ny * spec.nx, 4):
        raise ValueError(f"{path}: expected {spec.ny * spec.nx} rows of x,y,re,im")
    data = (raw[:, 2] + 1j * raw[:, 3]).reshape(spec.ny, spec.nx)
    meta = side.get("meta", {})
    return Field(spec, data, meta)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


def top_octave_fraction(f: Field) -> float:
    """Spectral energy fraction in the top octave |k| >= k_nyquist / 2.

    A value above ~1e-6 means the field is marginally resolved and
    spectral differentiation or multiplier transforms should be treated
    with suspicion; checks surface this in their reports.
    """
    spec_hat = np.fft.fft2(f.data)
    tot = float(np.sum(np.abs(spec_hat) ** 2))
    if tot == 0.0:
        return 0.0
    kx = np.fft.fftfreq(f.spec.nx)
    ky = np.fft.fftfreq(f.spec.ny)
    mask = (np.abs(kx)[None, :] >= 0.25) | (np.abs(ky)[:, None] >= 0.25)
    return float(np.sum(np.abs(spec_hat[mask]) ** 2) / tot)
