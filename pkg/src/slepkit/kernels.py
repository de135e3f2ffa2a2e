"""Reproducing kernels: 1D sinc, planar disk, fixed-order radial, square-root.

All evaluators broadcast over numpy arrays so matrix assembly is one call.
"""

import numpy as np
from scipy import special as _sp

from . import quadrature
from .specialfn import bessel_j1_over_x


def sinc_kernel(tw, x, xp):
    """sin(TW (x - x')) / (pi (x - x')), diagonal value TW/pi."""
    if tw <= 0:
        raise ValueError("time-bandwidth product must be positive")
    d = np.asarray(x, dtype=float) - np.asarray(xp, dtype=float)
    out = np.where(d == 0.0, tw / np.pi,
                   np.sin(tw * np.where(d == 0.0, 1.0, d)) / (np.pi * np.where(d == 0.0, 1.0, d)))
    return out[()]


def disk_kernel(k, x, xp):
    """Isotropic bandlimiting kernel K J_1(K r) / (2 pi r), r = |x - x'|.

    Points are arrays with a trailing axis of length 2; the diagonal value is
    K^2 / (4 pi).
    """
    if k <= 0:
        raise ValueError("bandlimit must be positive")
    d = np.asarray(x, dtype=float) - np.asarray(xp, dtype=float)
    r = np.hypot(d[..., 0], d[..., 1])
    return (k * k / (2.0 * np.pi)) * bessel_j1_over_x(k * r)


def _p_rule(n2d):
    n = int(np.ceil(4.0 * np.sqrt(n2d))) + 32
    return quadrature.map_rule(quadrature.gauss_legendre(n), 0.0, 1.0)


def fixedm_kernel(m, n2d, xi, xip):
    """Fixed-angular-order radial kernel 4 N2D int_0^1 J_m(c p xi) J_m(c p xi') p dp.

    c = 2 sqrt(N2D); the p-integral is evaluated by Gauss-Legendre with
    ceil(4 sqrt(N2D)) + 32 nodes.  Symmetric in (xi, xi').
    """
    if n2d < 0:
        raise ValueError("Shannon number must be nonnegative")
    if m < 0 or int(m) != m:
        raise ValueError("order must be a nonnegative integer")
    c = 2.0 * np.sqrt(n2d)
    rule = _p_rule(n2d)
    a, b = np.broadcast_arrays(np.asarray(xi, dtype=float), np.asarray(xip, dtype=float))
    shape = a.shape
    af, bf = a.ravel(), b.ravel()
    ja = _sp.jv(m, c * rule.nodes[:, None] * af[None, :])
    jb = ja if bf is af or np.array_equal(af, bf) else _sp.jv(
        m, c * rule.nodes[:, None] * bf[None, :])
    vals = 4.0 * n2d * np.einsum("q,qi,qi->i", rule.weights * rule.nodes, ja, jb)
    return vals.reshape(shape)[()]


def sqrt_kernel(m, c, xi, xip):
    """Square-root kernel J_m(c xi xi') sqrt(c xi xi').

    Iterating this operator reproduces fixedm_kernel (up to the factor c), so
    its eigenvalues gamma give concentration eigenvalues lambda = c gamma^2.
    Orders: integers >= 0, or +-1/2 with the closed sine/cosine forms
    sqrt(2/pi) sin(c xi xi') and sqrt(2/pi) cos(c xi xi').
    """
    if c <= 0:
        raise ValueError("bandwidth parameter c must be positive")
    t = c * np.asarray(xi, dtype=float) * np.asarray(xip, dtype=float)
    if np.any(t < 0):
        raise ValueError("xi and xi' must be nonnegative")
    if m == 0.5:
        return (np.sqrt(2.0 / np.pi) * np.sin(t))[()]
    if m == -0.5:
        return (np.sqrt(2.0 / np.pi) * np.cos(t))[()]
    if m < 0 or int(m) != m:
        raise ValueError("order must be a nonnegative integer or +-1/2")
    return (_sp.jv(m, t) * np.sqrt(t))[()]
