"""Planar spatial regions and spectral domains.

Regions are either simple polygons (positively oriented, first vertex not
repeated) or disks.  Spectral domains live in the wavenumber plane and are
disks, polygon collections, or boolean masks on a stated k-grid.
"""

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import InvalidRegionError


def _as_vertex_array(vertices):
    v = np.asarray(vertices, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
        raise InvalidRegionError("polygon needs an (n, 2) array with n >= 3")
    if not np.all(np.isfinite(v)):
        raise InvalidRegionError("polygon vertices must be finite")
    return v


def _signed_area(v):
    x, y = v[:, 0], v[:, 1]
    return 0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)


def _orient(ax, ay, bx, by, cx, cy):
    # twice the signed area of triangle abc
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def _self_intersects(v):
    """True if any two non-adjacent edges of the closed polygon touch."""
    n = len(v)
    a, b = v, np.roll(v, -1, axis=0)
    ax, ay = a[:, 0][:, None], a[:, 1][:, None]
    bx, by = b[:, 0][:, None], b[:, 1][:, None]
    cx, cy = a[:, 0][None, :], a[:, 1][None, :]
    dx, dy = b[:, 0][None, :], b[:, 1][None, :]
    d1 = _orient(ax, ay, bx, by, cx, cy)
    d2 = _orient(ax, ay, bx, by, dx, dy)
    d3 = _orient(cx, cy, dx, dy, ax, ay)
    d4 = _orient(cx, cy, dx, dy, bx, by)
    scale = np.max(np.abs(v)) + 1.0
    tol = 1e-14 * scale * scale
    proper = ((d1 > tol) & (d2 < -tol) | (d1 < -tol) & (d2 > tol)) & (
        (d3 > tol) & (d4 < -tol) | (d3 < -tol) & (d4 > tol)
    )
    # touching counts as intersection too for non-adjacent pairs
    def on_seg(px, py, qx, qy, rx, ry, d):
        return (np.abs(d) <= tol) & (rx <= np.maximum(px, qx) + tol) & (
            rx >= np.minimum(px, qx) - tol) & (ry <= np.maximum(py, qy) + tol) & (
            ry >= np.minimum(py, qy) - tol)

    touch = (on_seg(ax, ay, bx, by, cx, cy, d1) | on_seg(ax, ay, bx, by, dx, dy, d2) |
             on_seg(cx, cy, dx, dy, ax, ay, d3) | on_seg(cx, cy, dx, dy, bx, by, d4))
    bad = proper | touch
    # adjacency on the ring: |i-j| in {0, 1, n-1}
    idx = np.arange(n)
    diff = np.abs(idx[:, None] - idx[None, :])
    adjacent = (diff == 0) | (diff == 1) | (diff == n - 1)
    return bool(np.any(bad & ~adjacent))


class Region:
    """A simple polygon or a disk in the spatial plane."""

    def __init__(self, kind, vertices=None, center=None, radius=None):
        self.kind = kind
        self.vertices = vertices
        self.center = center
        self.radius = radius

    @classmethod
    def polygon(cls, vertices):
        v = _as_vertex_array(vertices)
        edge = np.roll(v, -1, axis=0) - v
        if np.any(np.hypot(edge[:, 0], edge[:, 1]) == 0.0):
            raise InvalidRegionError("polygon has a zero-length edge")
        area2 = _signed_area(v)
        scale = np.max(np.abs(v)) + 1.0
        if abs(area2) < 1e-14 * scale * scale:
            raise InvalidRegionError("polygon is degenerate (zero area)")
        if area2 < 0:
            v = v[::-1].copy()
        if _self_intersects(v):
            raise InvalidRegionError("polygon boundary intersects itself")
        v.setflags(write=False)
        return cls("polygon", vertices=v)

    @classmethod
    def disk(cls, center, radius):
        cx, cy = float(center[0]), float(center[1])
        radius = float(radius)
        if not (np.isfinite(radius) and radius > 0 and np.isfinite(cx) and np.isfinite(cy)):
            raise InvalidRegionError("disk needs finite center and radius > 0")
        return cls("disk", center=(cx, cy), radius=radius)

    def bounding_box(self):
        """(xmin, xmax, ymin, ymax)."""
        if self.kind == "disk":
            (cx, cy), r = self.center, self.radius
            return (cx - r, cx + r, cy - r, cy + r)
        v = self.vertices
        return (v[:, 0].min(), v[:, 0].max(), v[:, 1].min(), v[:, 1].max())

    def __repr__(self):
        if self.kind == "disk":
            return f"Region.disk(center={self.center}, radius={self.radius})"
        return f"Region.polygon(<{len(self.vertices)} vertices>)"


def area(region):
    """Enclosed area: shoelace total for polygons, pi r^2 for disks."""
    if region.kind == "disk":
        return np.pi * region.radius ** 2
    a = _signed_area(region.vertices)
    if a <= 0:
        raise InvalidRegionError("polygon area must be positive")
    return float(a)


def contains(region, point):
    """Boundary-inclusive membership of a single point."""
    p = np.asarray(point, dtype=float)
    return bool(contains_many(region, p.reshape(1, 2))[0])


def contains_many(region, points):
    """Vectorized boundary-inclusive membership; points is (m, 2)."""
    pts = np.asarray(points, dtype=float)
    px, py = pts[:, 0], pts[:, 1]
    if region.kind == "disk":
        (cx, cy), r = region.center, region.radius
        return (px - cx) ** 2 + (py - cy) ** 2 <= r * r
    v = region.vertices
    n = len(v)
    scale = np.max(np.abs(v)) + 1.0
    tol = 1e-12 * scale
    inside = np.zeros(len(pts), dtype=bool)
    onb = np.zeros(len(pts), dtype=bool)
    x0, y0 = v[-1]
    for i in range(n):
        x1, y1 = v[i]
        # boundary: within tol of the segment (x0,y0)-(x1,y1)
        ex, ey = x1 - x0, y1 - y0
        elen2 = ex * ex + ey * ey
        t = np.clip(((px - x0) * ex + (py - y0) * ey) / elen2, 0.0, 1.0)
        d2 = (px - (x0 + t * ex)) ** 2 + (py - (y0 + t * ey)) ** 2
        onb |= d2 <= tol * tol
        # even-odd ray cast (upward ray in y, strict on one side)
        cond = (y0 > py) != (y1 > py)
        if np.any(cond):
            xin = x0 + (py[cond] - y0) * ex / ey
            flip = np.zeros(len(pts), dtype=bool)
            flip[cond] = px[cond] < xin
            inside ^= flip
        x0, y0 = x1, y1
    return inside | onb


def y_extents(region, x):
    """Disjoint closed y-intervals of the vertical slice at abscissa x.

    Returns a list of (lo, hi) pairs, sorted and non-overlapping; empty if the
    slice misses the region.  If x sits exactly on a polygon vertex abscissa,
    the slice is shifted by 1e-12 of the bounding-box width toward the box
    center and recomputed.
    """
    x = float(x)
    xmin, xmax, _, _ = region.bounding_box()
    if x < xmin or x > xmax:
        return []
    if region.kind == "disk":
        (cx, cy), r = region.center, region.radius
        s2 = r * r - (x - cx) ** 2
        if s2 <= 0.0:
            return []
        s = np.sqrt(s2)
        return [(cy - s, cy + s)]
    v = region.vertices
    width = xmax - xmin
    step = 1e-12 * width
    if x <= xmin or x >= xmax:
        x = np.clip(x, xmin + step, xmax - step)
    direction = 1.0 if x <= 0.5 * (xmin + xmax) else -1.0
    for _ in range(16):
        if not np.any(v[:, 0] == x):
            break
        x += direction * step
    ys = []
    x0, y0 = v[-1]
    for x1, y1 in v:
        if (x0 - x) * (x1 - x) < 0.0:
            ys.append(y0 + (x - x0) * (y1 - y0) / (x1 - x0))
        x0, y0 = x1, y1
    if len(ys) < 2:
        return []
    ys.sort()
    out = []
    for lo, hi in zip(ys[0::2], ys[1::2]):
        if out and lo <= out[-1][1]:
            out[-1] = (out[-1][0], max(hi, out[-1][1]))
        else:
            out.append((lo, hi))
    return out


def spline_boundary(vertices, n):
    """Close vertices with a periodic cubic spline and resample to n points.

    Chord-length parameterization; the returned Region is the polygon of the
    n resampled boundary points (first point not repeated).
    """
    v = _as_vertex_array(vertices)
    if n < len(v):
        raise ValueError("resample count must be at least the vertex count")
    closed = np.vstack([v, v[:1]])
    chord = np.hypot(*np.diff(closed, axis=0).T)
    if np.any(chord == 0.0):
        raise InvalidRegionError("repeated consecutive vertices")
    t = np.concatenate([[0.0], np.cumsum(chord)])
    cs = CubicSpline(t, closed, bc_type="periodic", axis=0)
    ts = t[-1] * np.arange(n) / n
    pts = cs(ts)
    try:
        return Region.polygon(pts)
    except InvalidRegionError as exc:
        raise InvalidRegionError(
            f"splined boundary is not a simple polygon ({exc}); "
            "use fewer resample points or smoother input vertices") from exc


def scale_to_area(region, target_area=4.0 * np.pi):
    """Similarity-scale a region about the origin to a prescribed area.

    Returns (scaled_region, factor) with factor = sqrt(target / current).
    """
    if target_area <= 0:
        raise ValueError("target area must be positive")
    factor = float(np.sqrt(target_area / area(region)))
    if region.kind == "disk":
        (cx, cy), r = region.center, region.radius
        return Region.disk((cx * factor, cy * factor), r * factor), factor
    return Region.polygon(region.vertices * factor), factor


class SpectralDomain:
    """A wavenumber-plane domain: disk, polygon set, or boolean grid mask."""

    def __init__(self, kind, bandlimit=None, polygons=None, mask=None, kx=None, ky=None):
        self.kind = kind
        self.bandlimit = bandlimit
        self.polygons = polygons
        self.mask = mask
        self.kx = kx
        self.ky = ky

    @classmethod
    def disk(cls, bandlimit):
        bandlimit = float(bandlimit)
        if not (np.isfinite(bandlimit) and bandlimit > 0):
            raise ValueError("bandlimit must be finite and positive")
        return cls("disk", bandlimit=bandlimit)

    @classmethod
    def polygon_set(cls, polygons):
        regs = [Region.polygon(p) for p in polygons]
        if not regs:
            raise ValueError("polygon set must be non-empty")
        return cls("polygons", polygons=[r.vertices for r in regs])

    @classmethod
    def grid_mask(cls, mask, kx, ky):
        mask = np.asarray(mask, dtype=bool)
        kx = np.asarray(kx, dtype=float)
        ky = np.asarray(ky, dtype=float)
        if mask.shape != (len(ky), len(kx)):
            raise ValueError("mask shape must be (len(ky), len(kx))")
        return cls("mask", mask=mask, kx=kx, ky=ky)

    def __repr__(self):
        if self.kind == "disk":
            return f"SpectralDomain.disk(bandlimit={self.bandlimit})"
        if self.kind == "polygons":
            return f"SpectralDomain.polygon_set(<{len(self.polygons)} polygons>)"
        return f"SpectralDomain.grid_mask(<{self.mask.shape} mask>)"


def _polygon_matches(a, b, tol):
    """True if vertex cycles a and b coincide up to a cyclic shift."""
    if len(a) != len(b):
        return False
    n = len(a)
    for s in range(n):
        if np.all(np.abs(np.roll(b, -s, axis=0) - a) <= tol):
            return True
    return False


def hermitian_symmetrize(domain):
    """Union of a spectral domain with its point reflection through k = 0.

    Disks are returned unchanged; polygon sets gain reflected copies of any
    polygon whose reflection is missing; masks are OR-ed with their reflection
    (the k-grid must itself be symmetric about zero).  Idempotent.
    """
    if domain.kind == "disk":
        return domain
    if domain.kind == "polygons":
        polys = [p.copy() for p in domain.polygons]
        scale = max(np.max(np.abs(p)) for p in polys) + 1.0
        tol = 1e-12 * scale
        out = list(polys)
        for p in polys:
            refl = -p  # point reflection preserves orientation
            if not any(_polygon_matches(refl, q, tol) for q in out):
                out.append(refl)
        return SpectralDomain.polygon_set(out)
    kx, ky, mask = domain.kx, domain.ky, domain.mask
    if not (np.allclose(kx, -kx[::-1], atol=1e-12 * (np.max(np.abs(kx)) + 1)) and
            np.allclose(ky, -ky[::-1], atol=1e-12 * (np.max(np.abs(ky)) + 1))):
        raise ValueError("grid mask axes must be symmetric about zero")
    sym = mask | mask[::-1, ::-1]
    return SpectralDomain.grid_mask(sym, kx, ky)


def wedge_domain(orientation, half_angle, k_max):
    """Hermitian pair of triangular wedges with apex at the origin.

    Each wedge is the triangle (0,0), k_max*e(orientation - half_angle),
    k_max*e(orientation + half_angle); the reflected partner makes the pair
    symmetric under k -> -k.
    """
    if not (0 < half_angle < np.pi / 2):
        raise ValueError("half_angle must lie in (0, pi/2)")
    if k_max <= 0:
        raise ValueError("k_max must be positive")
    a0, a1 = orientation - half_angle, orientation + half_angle
    tri = np.array([
        [0.0, 0.0],
        [k_max * np.cos(a0), k_max * np.sin(a0)],
        [k_max * np.cos(a1), k_max * np.sin(a1)],
    ])
    return hermitian_symmetrize(SpectralDomain.polygon_set([tri]))


def read_region(path):
    """Parse a boundary file: one 'x,y' vertex per line, '#' comments allowed."""
    verts = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise ValueError(f"{path}: line {lineno}: expected 'x,y', got {raw.strip()!r}")
            try:
                verts.append((float(parts[0]), float(parts[1])))
            except ValueError:
                raise ValueError(
                    f"{path}: line {lineno}: could not parse numbers in {raw.strip()!r}") from None
    if len(verts) < 3:
        raise ValueError(f"{path}: fewer than 3 vertices")
    return Region.polygon(np.array(verts))


def write_region(path, region):
    """Write a polygon boundary in the same 'x,y' text format."""
    if region.kind != "polygon":
        raise ValueError("only polygon regions can be written as boundary files")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# polygon boundary, one x,y vertex per line\n")
        for x, y in region.vertices:
            fh.write(f"{float(x)!r},{float(y)!r}\n")
