"""Numba-jitted kernel implementations."""
from __future__ import annotations

import math

import numpy as np
from numba import njit


@njit(cache=True)
def jacobi_eigh(a):
    """Cyclic Jacobi eigendecomposition of a symmetric matrix.

    Returns (eigenvalues ascending, eigenvector columns).
    """
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n)
    if n > 1:
        fnorm = 0.0
        for i in range(n):
            for j in range(n):
                fnorm += a[i, j] * a[i, j]
        tol = 1e-14 * max(1.0, math.sqrt(fnorm))
        for _sweep in range(60):
            off = 0.0
            for i in range(n - 1):
                for j in range(i + 1, n):
                    off += 2.0 * a[i, j] * a[i, j]
            if math.sqrt(off) <= tol:
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if abs(apq) < 1e-300:
                        continue
                    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                    if theta == 0.0:
                        t = 1.0
                    else:
                        t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                    c = 1.0 / math.sqrt(t * t + 1.0)
                    s = t * c
                    for k in range(n):
                        akp = a[k, p]
                        akq = a[k, q]
                        a[k, p] = c * akp - s * akq
                        a[k, q] = s * akp + c * akq
                    for k in range(n):
                        apk = a[p, k]
                        aqk = a[q, k]
                        a[p, k] = c * apk - s * aqk
                        a[q, k] = s * apk + c * aqk
                    for k in range(n):
                        vkp = v[k, p]
                        vkq = v[k, q]
                        v[k, p] = c * vkp - s * vkq
                        v[k, q] = s * vkp + c * vkq
    w = np.empty(n)
    for i in range(n):
        w[i] = a[i, i]
    order = np.argsort(w)
    return w[order], v[:, order]


@njit(cache=True)
def all_pairs_distances(indptr, indices, n):
    """Queue BFS from every source over a CSR adjacency."""
    dist = np.full((n, n), -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    for src in range(n):
        dist[src, src] = 0
        queue[0] = src
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[src, u]
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if dist[src, w] < 0:
                    dist[src, w] = du + 1
                    queue[tail] = w
                    tail += 1
    return dist
