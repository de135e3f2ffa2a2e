"""Concentration bases for arbitrary planar regions under a disk bandlimit.

Builds the region quadrature, discretizes the isotropic bandlimiting kernel,
and diagonalizes it; the resulting eigenfunctions can be extended onto any
grid, Fourier-analyzed, and summed into coverage maps.  Grid fields round-trip
through a flat binary format with a text sidecar, or a headered text table.
"""

from dataclasses import dataclass
from functools import partial
import os

import numpy as np

from .errors import ConfigurationError
from .fredholm import eigennormalized_samples, nystrom_eigs, nystrom_extend
from .geometry import area, contains_many
from .kernels import disk_kernel
from .quadrature import region_quadrature

__all__ = [
    "GridSpec", "GridField", "SlepianBasis", "shannon_2d", "solve_region_disk",
    "evaluate_g", "evaluate_h", "periodogram", "weighted_sumsq",
    "write_grid", "read_grid", "write_grid_text", "read_grid_text",
]


@dataclass
class GridSpec:
    """A uniform rectangular grid: origin corner, spacings, point counts."""
    x0: float
    y0: float
    dx: float
    dy: float
    nx: int
    ny: int

    def __post_init__(self):
        self.x0, self.y0 = float(self.x0), float(self.y0)
        self.dx, self.dy = float(self.dx), float(self.dy)
        self.nx, self.ny = int(self.nx), int(self.ny)
        if self.dx <= 0 or self.dy <= 0:
            raise ConfigurationError("grid spacings must be positive")
        if self.nx < 1 or self.ny < 1:
            raise ConfigurationError("grid dimensions must be at least 1")

    def x_axis(self):
        return self.x0 + self.dx * np.arange(self.nx)

    def y_axis(self):
        return self.y0 + self.dy * np.arange(self.ny)

    def points(self):
        """All grid points as an (ny*nx, 2) array, x varying fastest."""
        xx, yy = np.meshgrid(self.x_axis(), self.y_axis())
        return np.column_stack([xx.ravel(), yy.ravel()])


@dataclass
class GridField:
    """Values sampled on a GridSpec; values[iy, ix] sits at (x0+ix*dx, y0+iy*dy)."""
    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values)
        if self.values.shape != (self.grid.ny, self.grid.nx):
            raise ConfigurationError(
                f"values shape {self.values.shape} does not match grid "
                f"({self.grid.ny}, {self.grid.nx})")


@dataclass
class SlepianBasis:
    """Concentration eigenfunctions of a region under an isotropic bandlimit.

    node_samples carry the whole-plane-unit normalization: the quadrature
    estimate of the region energy of row alpha equals eigenvalues[alpha].
    """
    region: object
    k: float                 # bandlimit radius, rad per length unit
    quadrature: object
    eigenvalues: np.ndarray  # descending
    node_samples: np.ndarray
    shannon: float
    trace: float
    normalization: str       # "whole-plane-unit"
    solution: object         # underlying Nystrom solution, region-orthonormal


def shannon_2d(k, region_area):
    """Expected count of well-concentrated functions: K^2 A / (4 pi)."""
    k, region_area = float(k), float(region_area)
    if k <= 0 or region_area <= 0:
        raise ValueError("bandlimit and area must be positive")
    return k * k * region_area / (4.0 * np.pi)


def solve_region_disk(region, k, n_quad=32, count=None):
    """Diagonalize the disk-bandlimit kernel over a region's quadrature.

    Keeps the top `count` eigenpairs (all nodes' worth when count is None).
    The stored trace is the full quadrature trace of the kernel, which
    estimates the Shannon number independently of the retained count.
    """
    k = float(k)
    if k <= 0:
        raise ValueError("bandlimit must be positive")
    rule = region_quadrature(region, n_quad)
    n = len(rule.weights)
    if count is None:
        count = n
    sol = nystrom_eigs(partial(disk_kernel, k), rule, count,
                       kernel_tag=f"diskband(K={k})")
    return SlepianBasis(
        region=region, k=k, quadrature=rule,
        eigenvalues=sol.eigenvalues.copy(),
        node_samples=eigennormalized_samples(sol),
        shannon=shannon_2d(k, area(region)),
        trace=sol.trace, normalization="whole-plane-unit", solution=sol)


def _extend_unit(basis, index, points):
    """Whole-plane-unit eigenfunction `index` at (m, 2) points."""
    lam = basis.eigenvalues[index]
    return np.sqrt(max(lam, 0.0)) * nystrom_extend(basis.solution, index, points)


def evaluate_g(basis, index, grid):
    """Bandlimited eigenfunction `index` sampled everywhere on a grid.

    Chunks the kernel evaluation so large grids never materialize a full
    points-by-nodes matrix at once.
    """
    pts = grid.points()
    out = np.empty(len(pts))
    step = max(1, 2097152 // max(1, len(basis.quadrature.weights)))
    for lo in range(0, len(pts), step):
        out[lo:lo + step] = _extend_unit(basis, index, pts[lo:lo + step])
    return GridField(grid, out.reshape(grid.ny, grid.nx))


def evaluate_h(basis, index, grid):
    """The space-limited twin: equal to g inside the region, exactly 0 outside."""
    g = evaluate_g(basis, index, grid)
    inside = contains_many(basis.region, grid.points()).reshape(grid.ny, grid.nx)
    vals = np.where(inside, g.values, 0.0)
    return GridField(grid, vals)


def periodogram(field):
    """Squared Fourier magnitude of a real field on the conjugate wavenumber grid.

    H(k) = dx dy * DFT(values); the output grid is zero-centered with spacings
    2 pi / (n d).  Parseval holds exactly: sum |H|^2 dkx dky / (2 pi)^2 equals
    sum h^2 dx dy.
    """
    if np.iscomplexobj(field.values):
        raise ValueError("periodogram expects a real-valued field")
    g = field.grid
    h = np.fft.fftshift(np.fft.fft2(field.values)) * (g.dx * g.dy)
    kx = 2.0 * np.pi * np.fft.fftshift(np.fft.fftfreq(g.nx, g.dx))
    ky = 2.0 * np.pi * np.fft.fftshift(np.fft.fftfreq(g.ny, g.dy))
    kgrid = GridSpec(x0=float(kx[0]), y0=float(ky[0]),
                     dx=2.0 * np.pi / (g.nx * g.dx),
                     dy=2.0 * np.pi / (g.ny * g.dy), nx=g.nx, ny=g.ny)
    return GridField(kgrid, np.abs(h) ** 2)


def weighted_sumsq(basis, grid, count):
    """Eigenvalue-weighted sum of squares sum_a lambda_a g_a(x)^2 on a grid.

    Deep inside the region this plateaus near shannon / area; far outside it
    collapses toward zero.
    """
    count = int(count)
    if not 1 <= count <= len(basis.eigenvalues):
        raise ValueError("count must lie in [1, number of eigenpairs]")
    pts = grid.points()
    # region-orthonormal rows f give sum_j w_j k(x, x_j) f_aj = sqrt(lam_a) g_a,
    # so the plain squared sum of these extensions is the weighted sum wanted
    coef = basis.quadrature.weights[None, :] * basis.solution.node_samples[:count]
    out = np.zeros(len(pts))
    step = max(1, 2097152 // max(1, len(basis.quadrature.weights)))
    for lo in range(0, len(pts), step):
        kmat = disk_kernel(basis.k, pts[lo:lo + step, None, :],
                           basis.quadrature.nodes[None, :, :])
        block = kmat @ coef.T          # rows: points, cols: sqrt(lam) g_a
        out[lo:lo + step] = np.sum(block * block, axis=1)
    return GridField(grid, out.reshape(grid.ny, grid.nx))


def write_grid(field, path, name="field"):
    """Flat binary export: 8-byte little-endian reals, row-major, plus sidecar.

    The sidecar (path + ".hdr") records origin, spacings, dimensions, the field
    name, and rendering metadata (the max|v|/100 display floor and how many
    cells fall below it); the data file is written untouched.
    """
    vals = np.asarray(field.values)
    if np.iscomplexobj(vals):
        raise ConfigurationError("binary grid export is defined for real fields")
    g = field.grid
    data = np.ascontiguousarray(vals, dtype="<f8")
    with open(path, "wb") as fh:
        fh.write(data.tobytes())
    peak = float(np.max(np.abs(vals))) if vals.size else 0.0
    floor = peak / 100.0
    lines = [
        f"name = {name}",
        f"x0 = {g.x0!r}",
        f"y0 = {g.y0!r}",
        f"dx = {g.dx!r}",
        f"dy = {g.dy!r}",
        f"nx = {g.nx}",
        f"ny = {g.ny}",
        f"render_floor = {floor!r}",
        f"n_below_floor = {int(np.sum(np.abs(vals) < floor))}",
    ]
    with open(str(path) + ".hdr", "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_grid(path):
    """Read a binary grid written by write_grid; returns (GridField, name)."""
    meta = {}
    with open(str(path) + ".hdr") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            key, _, value = line.partition("=")
            meta[key.strip()] = value.strip()
    spec = GridSpec(x0=float(meta["x0"]), y0=float(meta["y0"]),
                    dx=float(meta["dx"]), dy=float(meta["dy"]),
                    nx=int(meta["nx"]), ny=int(meta["ny"]))
    expected = spec.nx * spec.ny * 8
    size = os.path.getsize(path)
    if size != expected:
        raise ConfigurationError(
            f"{path}: {size} bytes on disk, sidecar implies {expected}")
    data = np.fromfile(path, dtype="<f8").reshape(spec.ny, spec.nx)
    return GridField(spec, data), meta.get("name", "field")


def write_grid_text(field, path):
    """Headered text export: first line '# x y value', rows space-separated."""
    vals = np.asarray(field.values)
    if np.iscomplexobj(vals):
        raise ConfigurationError("text grid export is defined for real fields")
    g = field.grid
    xs, ys = g.x_axis(), g.y_axis()
    with open(path, "w") as fh:
        fh.write("# x y value\n")
        for iy in range(g.ny):
            for ix in range(g.nx):
                fh.write(f"{float(xs[ix])!r} {float(ys[iy])!r} "
                         f"{float(vals[iy, ix])!r}\n")


def read_grid_text(path):
    """Read a '# x y value' table back into a GridField (row-major in y)."""
    rows = []
    with open(path) as fh:
        for ln, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ConfigurationError(f"{path}:{ln}: expected 'x y value'")
            rows.append([float(p) for p in parts])
    if not rows:
        raise ConfigurationError(f"{path}: no data rows")
    arr = np.asarray(rows)
    xs = np.unique(arr[:, 0])
    ys = np.unique(arr[:, 1])
    nx, ny = len(xs), len(ys)
    if nx * ny != len(arr):
        raise ConfigurationError(f"{path}: rows do not form a complete grid")
    dx = float(xs[1] - xs[0]) if nx > 1 else 1.0
    dy = float(ys[1] - ys[0]) if ny > 1 else 1.0
    spec = GridSpec(x0=float(xs[0]), y0=float(ys[0]), dx=dx, dy=dy, nx=nx, ny=ny)
    vals = arr[:, 2].reshape(ny, nx)
    return GridField(spec, vals)
