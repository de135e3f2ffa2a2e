"""Gauss-Legendre rules and their tensorization over planar regions."""

from dataclasses import dataclass

import numpy as np

from . import geometry
from .errors import InvalidRegionError


@dataclass
class QuadratureRule1D:
    nodes: np.ndarray
    weights: np.ndarray


@dataclass
class RegionQuadrature:
    """Product rule over a region: flattened 2D nodes with positive weights."""
    nodes: np.ndarray    # (m, 2)
    weights: np.ndarray  # (m,)
    region: object


def gauss_legendre(n):
    """n-point Gauss-Legendre rule on [-1, 1]."""
    if n < 1 or int(n) != n:
        raise ValueError("node count must be a positive integer")
    nodes, weights = np.polynomial.legendre.leggauss(int(n))
    return QuadratureRule1D(nodes, weights)


def map_rule(rule, a, b):
    """Affine image of a rule on the interval (a, b); weight sum becomes b - a."""
    a, b = float(a), float(b)
    if not a < b:
        raise ValueError("interval must satisfy a < b")
    half = 0.5 * (b - a)
    return QuadratureRule1D(a + half * (rule.nodes + 1.0), half * rule.weights)


def _x_panels(region, n_per_dim):
    """Outer x-rule: composite Gauss-Legendre split at interior vertex abscissas.

    Panel splitting keeps the x-integrand (the extent profile) smooth on each
    panel, so polygon areas and low moments integrate exactly; regions without
    interior abscissa kinks (disks, rectangles) get the plain single rule.
    """
    xmin, xmax, _, _ = region.bounding_box()
    width = xmax - xmin
    breaks = [xmin, xmax]
    if region.kind == "polygon":
        vx = np.unique(region.vertices[:, 0])
        interior = vx[(vx > xmin + 1e-12 * width) & (vx < xmax - 1e-12 * width)]
        keep = []
        for v in interior:
            if not keep or v - keep[-1] > 1e-12 * width:
                keep.append(float(v))
        breaks = [xmin] + keep + [xmax]
    base = gauss_legendre(n_per_dim)
    xs, ws = [], []
    for a, b in zip(breaks[:-1], breaks[1:]):
        n_panel = max(2, int(np.ceil(n_per_dim * (b - a) / width)))
        panel = map_rule(gauss_legendre(n_panel) if n_panel != n_per_dim else base, a, b)
        xs.append(panel.nodes)
        ws.append(panel.weights)
    return np.concatenate(xs), np.concatenate(ws)


def region_quadrature(region, n_per_dim=32):
    """Tensor quadrature over a region.

    Outer composite Gauss-Legendre rule in x over the bounding interval; at
    each x-node every disjoint y-extent interval receives its own mapped
    n_per_dim-point rule; weights are the pairwise products.
    """
    if n_per_dim < 1:
        raise ValueError("n_per_dim must be positive")
    xs, wxs = _x_panels(region, n_per_dim)
    inner = gauss_legendre(n_per_dim)
    nodes, weights = [], []
    for x, wx in zip(xs, wxs):
        for lo, hi in geometry.y_extents(region, x):
            if hi <= lo:
                continue
            rule = map_rule(inner, lo, hi)
            nodes.append(np.column_stack([np.full(n_per_dim, x), rule.nodes]))
            weights.append(wx * rule.weights)
    if not nodes:
        raise InvalidRegionError("region has empty interior at all quadrature abscissas")
    return RegionQuadrature(np.vstack(nodes), np.concatenate(weights), region)
