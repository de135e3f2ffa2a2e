"""Concentration eigenproblems for arbitrary spatial and spectral domains.

Everything lives on a discrete grid: the spatial indicator and the spectral
indicator become projection matrices, the unitary FFT moves between the two,
and the composed operator is diagonalized matrix-free with a Lanczos-type
iteration.  Any region shape and any Hermitian-symmetric wavenumber set work.
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse.linalg

from .errors import ConfigurationError, NumericalError
from .geometry import Region, contains_many
from .planeslep import GridField, GridSpec, periodogram

__all__ = [
    "OperatorProblem", "GridBasis", "build_problem", "apply", "solve",
    "weighted_periodogram_sum",
]


@dataclass
class OperatorProblem:
    """A composed projection operator discretized on an embedding grid.

    spectral_mask is stored in unshifted FFT index order so it multiplies the
    raw transform directly; it is Hermitian-symmetric by construction (equal
    to its point reflection through k = 0).  mode selects which composition
    apply() realizes: "space" masks in space, transforms, masks in wavenumber,
    transforms back, and masks in space again; "spectral" is the mirror image.
    """
    grid: GridSpec
    spatial_mask: np.ndarray   # bool (ny, nx)
    spectral_mask: np.ndarray  # bool (ny, nx), FFT order
    mode: str = "space"

    def __post_init__(self):
        shape = (self.grid.ny, self.grid.nx)
        self.spatial_mask = np.asarray(self.spatial_mask, dtype=bool)
        self.spectral_mask = np.asarray(self.spectral_mask, dtype=bool)
        if self.spatial_mask.shape != shape or self.spectral_mask.shape != shape:
            raise ConfigurationError("masks must match the grid shape")
        if self.mode not in ("space", "spectral"):
            raise ConfigurationError("mode must be 'space' or 'spectral'")
        if not self.spatial_mask.any():
            raise ConfigurationError("spatial mask is empty; enlarge the grid")
        if not self.spectral_mask.any():
            raise ConfigurationError("spectral mask is empty; refine the grid")
        if not np.array_equal(self.spectral_mask, _reflect(self.spectral_mask)):
            raise ConfigurationError("spectral mask must be symmetric through k=0")


@dataclass
class GridBasis:
    """Eigenpairs of a composed projection operator, grid-sampled.

    fields hold real parts only, unit grid-l2 norm, exactly zero outside the
    operator's support mask.  imag_residuals record the relative imaginary
    content each real field discards: in space mode that of one full
    complex-arithmetic application (rounding level, since the operator is
    real-symmetric there); in spectral mode that of the phase-fixed complex
    eigenvector itself, which is genuinely nonzero for asymmetric regions.
    """
    problem: OperatorProblem
    eigenvalues: np.ndarray        # real, descending
    fields: np.ndarray             # (count, ny, nx)
    imag_residuals: np.ndarray
    seed: int


def _reflect(mask):
    """Point reflection through k = 0 of an FFT-ordered mask."""
    r = mask[::-1, ::-1]
    return np.roll(np.roll(r, 1, axis=0), 1, axis=1)


def _centered_axis(center, extent, spacing):
    n = int(np.floor(extent / spacing + 1e-9)) + 1
    n = max(n, 2)
    return center - 0.5 * (n - 1) * spacing, n


def build_problem(region, domain, grid_spacing, embed_factor=3.0, mode="space"):
    """Rasterize a region and a spectral domain onto one computation grid.

    The grid spans the region's bounding box scaled by embed_factor about its
    center, at the requested spacing; the spectral mask lives on the conjugate
    wavenumber grid and is forced exactly Hermitian-symmetric by OR-ing it
    with its own point reflection.
    """
    grid_spacing = float(grid_spacing)
    embed_factor = float(embed_factor)
    if grid_spacing <= 0:
        raise ConfigurationError("grid spacing must be positive")
    if embed_factor < 1:
        raise ConfigurationError("embed factor must be at least 1")
    xmin, xmax, ymin, ymax = region.bounding_box()
    cx, cy = 0.5 * (xmin + xmax), 0.5 * (ymin + ymax)
    x0, nx = _centered_axis(cx, embed_factor * (xmax - xmin), grid_spacing)
    y0, ny = _centered_axis(cy, embed_factor * (ymax - ymin), grid_spacing)
    grid = GridSpec(x0=float(x0), y0=float(y0), dx=grid_spacing,
                    dy=grid_spacing, nx=nx, ny=ny)

    spatial = contains_many(region, grid.points()).reshape(ny, nx)
    if not spatial.any():
        raise ConfigurationError("no grid point falls inside the region")

    kx = 2.0 * np.pi * np.fft.fftfreq(nx, grid_spacing)
    ky = 2.0 * np.pi * np.fft.fftfreq(ny, grid_spacing)
    spectral = _rasterize_spectral(domain, kx, ky)
    spectral |= _reflect(spectral)
    if not spectral.any():
        raise ConfigurationError("no wavenumber cell falls inside the domain")
    return OperatorProblem(grid=grid, spatial_mask=spatial,
                           spectral_mask=spectral, mode=mode)


def _rasterize_spectral(domain, kx, ky):
    """Boolean mask over the FFT-ordered wavenumber grid, cell centers inside."""
    kxx, kyy = np.meshgrid(kx, ky)
    if domain.kind == "disk":
        return kxx * kxx + kyy * kyy <= domain.bandlimit ** 2
    if domain.kind == "polygons":
        pts = np.column_stack([kxx.ravel(), kyy.ravel()])
        mask = np.zeros(len(pts), dtype=bool)
        for poly in domain.polygons:
            mask |= contains_many(Region.polygon(poly), pts)
        return mask.reshape(kxx.shape)
    if domain.kind == "mask":
        if domain.mask.shape != kxx.shape:
            raise ConfigurationError(
                f"mask domain shape {domain.mask.shape} does not match the "
                f"wavenumber grid {kxx.shape}")
        return domain.mask.copy()
    raise ConfigurationError(f"unknown spectral domain kind {domain.kind!r}")


def _apply_complex(problem, field):
    """One composed application in complex arithmetic."""
    p, l = problem.spatial_mask, problem.spectral_mask
    if problem.mode == "space":
        v = np.where(p, field, 0.0)
        v = np.fft.fft2(v, norm="ortho")
        v = np.where(l, v, 0.0)
        v = np.fft.ifft2(v, norm="ortho")
        return np.where(p, v, 0.0)
    v = np.where(l, field, 0.0)
    v = np.fft.ifft2(v, norm="ortho")
    v = np.where(p, v, 0.0)
    v = np.fft.fft2(v, norm="ortho")
    return np.where(l, v, 0.0)


def apply(problem, field):
    """Apply the composed operator to one field.

    In space mode the Hermitian symmetry of the spectral mask makes the
    operator real-symmetric, so a real input yields a real output up to
    rounding and the rounding-level imaginary part is discarded; complex
    inputs, and spectral mode always, stay complex.
    """
    field = np.asarray(field)
    if field.shape != (problem.grid.ny, problem.grid.nx):
        raise ConfigurationError(
            f"field shape {field.shape} does not match the grid "
            f"({problem.grid.ny}, {problem.grid.nx})")
    out = _apply_complex(problem, field)
    if np.iscomplexobj(field) or problem.mode == "spectral":
        return out
    return out.real


def solve(problem, count, seed=0, tol=1e-10, maxiter=None):
    """Top `count` eigenpairs of the composed operator, matrix-free.

    A Lanczos-type iteration sees only apply(); the start vector is drawn from
    `seed` and masked, making the run deterministic.  Eigenvalues land in
    [0, 1] up to solver slack because both projections are orthogonal.
    """
    count = int(count)
    if count < 1:
        raise ConfigurationError("count must be at least 1")
    ny, nx = problem.grid.ny, problem.grid.nx
    n = nx * ny
    if count > n - 2:
        raise ConfigurationError(f"count {count} too large for a {ny}x{nx} grid")
    if maxiter is None:
        maxiter = int(10 * count * np.sqrt(n)) + 100

    spectral = problem.mode == "spectral"
    start_mask = problem.spectral_mask if spectral else problem.spatial_mask
    dtype = complex if spectral else float

    def matvec(v):
        out = _apply_complex(problem, v.reshape(ny, nx)).ravel()
        return out if spectral else out.real

    op = scipy.sparse.linalg.LinearOperator((n, n), matvec=matvec, dtype=dtype)
    rng = np.random.RandomState(int(seed))
    v0 = rng.standard_normal(n).astype(dtype)
    if spectral:
        v0 += 1j * rng.standard_normal(n)
    v0 *= start_mask.ravel()
    v0 /= np.linalg.norm(v0)
    # the spectrum clusters at 1 with a cluster roughly as wide as the
    # discrete Shannon number; the Krylov subspace must span it to converge
    shannon = (problem.spatial_mask.sum() * problem.spectral_mask.sum()) / n
    rank_cap = int(min(problem.spatial_mask.sum(), problem.spectral_mask.sum()))
    ncv = max(2 * count + 1, 20, int(np.ceil(shannon)) + count + 10)
    ncv = min(ncv, rank_cap + count, n - 1)
    ncv = max(ncv, count + 2)
    try:
        vals, vecs = scipy.sparse.linalg.eigsh(
            op, k=count, which="LA", v0=v0, tol=tol, maxiter=maxiter, ncv=ncv)
    except scipy.sparse.linalg.ArpackNoConvergence as exc:
        raise NumericalError(
            f"eigensolver stalled after {maxiter} iterations; "
            f"{len(exc.eigenvalues)} of {count} pairs converged") from exc

    order = np.argsort(-vals, kind="stable")
    vals, vecs = vals[order], vecs[:, order]
    fields = np.empty((count, ny, nx))
    resid = np.empty(count)
    for i in range(count):
        f = vecs[:, i].reshape(ny, nx)
        f = np.where(start_mask, f, 0.0)  # enforce exact zeros off-support
        nrm = np.linalg.norm(f)
        if nrm == 0:
            raise NumericalError(f"eigenfield {i} vanished after masking")
        f = f / nrm
        peak = np.unravel_index(int(np.argmax(np.abs(f))), f.shape)
        if spectral:
            # rotate the global phase so the peak entry is real positive,
            # then keep the real part and record what that discards
            phase = f[peak] / abs(f[peak])
            f = f / phase
            resid[i] = float(np.max(np.abs(f.imag))) / float(np.max(np.abs(f)))
            f = f.real
            nrm = np.linalg.norm(f)
            if nrm == 0:
                raise NumericalError(f"eigenfield {i} has no real content")
            f = f / nrm
        else:
            if f[peak] < 0:
                f = -f
            z = _apply_complex(problem, f)
            scale = float(np.max(np.abs(z)))
            resid[i] = float(np.max(np.abs(z.imag))) / scale if scale > 0 else 0.0
        fields[i] = f
    return GridBasis(problem=problem, eigenvalues=vals.real, fields=fields,
                     imag_residuals=resid, seed=int(seed))


def weighted_periodogram_sum(basis, count):
    """Eigenvalue-weighted periodogram stack sum_a lambda_a |H_a(k)|^2."""
    count = int(count)
    if not 1 <= count <= len(basis.eigenvalues):
        raise ValueError("count must lie in [1, number of eigenpairs]")
    grid = basis.problem.grid
    total = None
    for i in range(count):
        pg = periodogram(GridField(grid, basis.fields[i]))
        term = basis.eigenvalues[i] * pg.values
        total = term if total is None else total + term
    return GridField(pg.grid, total)
