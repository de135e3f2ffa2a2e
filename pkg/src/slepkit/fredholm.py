"""Generic Nystrom solver for symmetric Fredholm eigenproblems.

Discretize on a positive quadrature rule, symmetrize with sqrt-weight
similarity, solve densely, and extend eigenfunctions off the nodes through
the kernel.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import ExtensionError, NumericalError


@dataclass
class NystromSolution:
    eigenvalues: np.ndarray   # (count,) descending
    node_samples: np.ndarray  # (count, n), weighted-Gram orthonormal
    nodes: np.ndarray
    weights: np.ndarray
    kernel: object            # callable kernel(points_a, points_b)
    kernel_tag: str = ""
    trace: float = 0.0        # sum of all discrete eigenvalues
    extra: dict = field(default_factory=dict)


def _as_rule(rule):
    """Accept QuadratureRule1D / RegionQuadrature / (nodes, weights) pairs."""
    if hasattr(rule, "nodes") and hasattr(rule, "weights"):
        return np.asarray(rule.nodes, dtype=float), np.asarray(rule.weights, dtype=float)
    nodes, weights = rule
    return np.asarray(nodes, dtype=float), np.asarray(weights, dtype=float)


def _kernel_matrix(kernel, nodes):
    if nodes.ndim == 1:
        return np.asarray(kernel(nodes[:, None], nodes[None, :]), dtype=float)
    return np.asarray(kernel(nodes[:, None, :], nodes[None, :, :]), dtype=float)


def _fix_signs(samples, nodes, weights):
    """Deterministic sign: positive at the node nearest the weighted centroid."""
    if nodes.ndim == 1:
        centroid = np.sum(weights * nodes) / np.sum(weights)
        i0 = int(np.argmin(np.abs(nodes - centroid)))
    else:
        centroid = weights @ nodes / np.sum(weights)
        i0 = int(np.argmin(np.sum((nodes - centroid) ** 2, axis=1)))
    for row in samples:
        anchor = row[i0]
        if abs(anchor) > 1e-12:
            if anchor < 0:
                row *= -1.0
            continue
        big = np.nonzero(np.abs(row) > 1e-8)[0]
        if len(big) and row[big[0]] < 0:
            row *= -1.0
    return samples


def nystrom_eigs(kernel, rule, count, kernel_tag=""):
    """Top `count` eigenpairs of the quadrature-discretized kernel operator.

    Forms sqrt(W) K sqrt(W), diagonalizes, and maps eigenvectors back through
    f = f~ / sqrt(w), which leaves them orthonormal in the weighted Gram.
    Output is deterministic: eigenvalues descending, exact ties broken by the
    index of the largest-magnitude node sample, signs fixed at the centroid.
    """
    nodes, weights = _as_rule(rule)
    n = len(weights)
    if np.any(weights <= 0):
        raise ValueError("all quadrature weights must be positive")
    if not 1 <= count <= n:
        raise ValueError("count must lie in [1, number of nodes]")
    kmat = _kernel_matrix(kernel, nodes)
    if not np.all(np.isfinite(kmat)):
        raise NumericalError("kernel matrix has non-finite entries")
    sw = np.sqrt(weights)
    sym = kmat * sw[:, None] * sw[None, :]
    sym = 0.5 * (sym + sym.T)
    try:
        vals, vecs = scipy.linalg.eigh(sym)
    except scipy.linalg.LinAlgError as exc:
        raise NumericalError(f"dense symmetric eigensolve failed: {exc}") from exc
    order = np.argsort(-vals, kind="stable")
    vals, vecs = vals[order], vecs[:, order]
    samples = (vecs / sw[:, None]).T[:count].copy()
    top = vals[:count].copy()
    # exact ties: earlier peak-sample index first
    i = 0
    while i < count - 1:
        j = i + 1
        while j < count and top[j] == top[i]:
            j += 1
        if j - i > 1:
            peaks = [int(np.argmax(np.abs(s))) for s in samples[i:j]]
            samples[i:j] = samples[i:j][np.argsort(peaks, kind="stable")]
        i = j
    _fix_signs(samples, nodes, weights)
    return NystromSolution(
        eigenvalues=top, node_samples=samples, nodes=nodes, weights=weights,
        kernel=kernel, kernel_tag=kernel_tag, trace=float(np.sum(vals)))


def eigennormalized_samples(solution):
    """Samples rescaled so the quadrature norm over the domain equals lambda.

    With the weighted Gram orthonormal, multiplying row alpha by
    sqrt(lambda_alpha) makes sum_j w_j f_alpha(x_j)^2 = lambda_alpha, which is
    the whole-plane-unit normalization of a concentration eigenfunction.
    """
    lam = np.clip(solution.eigenvalues, 0.0, None)
    return solution.node_samples * np.sqrt(lam)[:, None]


def nystrom_extend(solution, index, x):
    """Evaluate eigenfunction `index` anywhere via the Nystrom identity.

    f(x) = (1/lambda) sum_j w_j kernel(x, x_j) f(x_j).  Raises for eigenvalues
    at or below 1e-12, where the division amplifies quadrature noise.
    """
    lam = solution.eigenvalues[index]
    if lam <= 1e-12:
        raise ExtensionError(f"eigenvalue {lam!r} too small for stable extension")
    nodes = solution.nodes
    wf = solution.weights * solution.node_samples[index]
    pts = np.asarray(x, dtype=float)
    if nodes.ndim == 1:
        scalar = pts.ndim == 0
        flat = np.atleast_1d(pts).ravel()
        kxe = solution.kernel(flat[:, None], nodes[None, :])
        out = kxe @ wf / lam
        return float(out[0]) if scalar else out.reshape(np.atleast_1d(pts).shape)
    scalar = pts.ndim == 1
    flat = pts.reshape(-1, 2)
    kxe = solution.kernel(flat[:, None, :], nodes[None, :, :])
    out = kxe @ wf / lam
    return float(out[0]) if scalar else out.reshape(pts.shape[:-1])
