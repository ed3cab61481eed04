"""Pure-numpy kernel implementations.

Same algorithms as the numba backend; rotations and BFS frontiers are
expressed as whole-row/column numpy operations instead of scalar loops.
"""
from __future__ import annotations

import numpy as np


def jacobi_eigh(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a dense symmetric matrix by cyclic Jacobi.

    Returns eigenvalues in ascending order and the matching orthonormal
    eigenvectors as columns. Accuracy is eps-level for the small dense
    matrices this package works with.
    """
    a = np.array(a, dtype=np.float64)
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return a[0].copy(), v
    fnorm = np.linalg.norm(a)
    tol = 1e-14 * max(1.0, fnorm)
    for _sweep in range(60):
        off = np.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2))
        if off <= tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = 1.0 if theta == 0.0 else np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rp, rq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def all_pairs_distances(indptr: np.ndarray, indices: np.ndarray, n: int) -> np.ndarray:
    """BFS distances between all vertex pairs via boolean frontier expansion.

    The CSR arguments are accepted for signature parity with the numba
    backend; the frontier product works on the dense adjacency rebuilt here.
    """
    adj = np.zeros((n, n), dtype=bool)
    for u in range(n):
        adj[u, indices[indptr[u]: indptr[u + 1]]] = True
    dist = np.full((n, n), -1, dtype=np.int64)
    np.fill_diagonal(dist, 0)
    reached = np.eye(n, dtype=bool)
    frontier = np.eye(n, dtype=bool)
    t = 0
    while frontier.any():
        t += 1
        frontier = (frontier @ adj) & ~reached
        dist[frontier] = t
        reached |= frontier
    return dist
