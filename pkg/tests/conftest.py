"""Shared fixtures: graph families, golden constants, and brute-force oracles."""
from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from spectra import Graph, Spectrum

# ---------------------------------------------------------------------------
# graph families

def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5, 7), (7, 9), (9, 6), (6, 8), (8, 5)]
    return Graph.from_edges(10, edges)


def prism() -> Graph:
    # triangular prism: two triangles joined by a perfect matching
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
    return Graph.from_edges(6, edges)


def random_connected(rng: np.random.Generator, n: int) -> Graph:
    while True:
        p = rng.uniform(0.25, 0.7)
        upper = np.triu(rng.random((n, n)) < p, 1)
        edges = [(int(i), int(j)) for i, j in zip(*np.nonzero(upper))]
        try:
            return Graph.from_edges(n, edges)
        except Exception:
            continue


def random_graph_corpus(seed: int, count: int, n_max: int = 12) -> list[Graph]:
    rng = np.random.default_rng(seed)
    return [random_connected(rng, int(rng.integers(4, n_max + 1))) for _ in range(count)]


# ---------------------------------------------------------------------------
# golden data from the worked nine-vertex example

SQRT13 = np.sqrt(13.0)

GOLDEN_EIGENVALUES = np.array([3.0, (-1 + SQRT13) / 2, 0.0, -1.0, (-1 - SQRT13) / 2])
GOLDEN_MULTIPLICITIES = np.array([1, 2, 3, 1, 2])

GOLDEN_OMEGA = [
    [Fraction(1)],
    [Fraction(0), Fraction(9, 8)],
    [Fraction(-268, 157), Fraction(-201, 1256), Fraction(201, 314)],
    [Fraction(23607, 50711), Fraction(-83082, 50711), Fraction(-732, 2983), Fraction(183, 646)],
    [Fraction(78, 323), Fraction(547, 1292), Fraction(-32, 57), Fraction(-113, 969), Fraction(1, 12)],
]

GOLDEN_HOFFMAN = [Fraction(0), Fraction(-1, 4), Fraction(-1, 6), Fraction(1, 6), Fraction(1, 12)]

GOLDEN_ALPHA = [Fraction(0), Fraction(1, 4), Fraction(387, 628), Fraction(27036, 50711), Fraction(-129, 323)]
GOLDEN_BETA = [Fraction(3), Fraction(67, 36), Fraction(6588, 10519), Fraction(4082, 19703)]
GOLDEN_GAMMA = [Fraction(8, 9), Fraction(471, 268), Fraction(21641, 9577), Fraction(1098, 323)]

GOLDEN_CHARPOLY = [Fraction(0), Fraction(9), Fraction(3), Fraction(-8), Fraction(-1), Fraction(1)]
GOLDEN_UV = [Fraction(9), Fraction(9, 2), Fraction(3), Fraction(9), Fraction(9, 2)]
GOLDEN_MOMENTS = [Fraction(1), Fraction(0), Fraction(8, 3), Fraction(2, 3), Fraction(16), Fraction(40, 3)]
GOLDEN_SPECTRAL_EXCESS = Fraction(39, 646)

PETERSEN_G6 = "IheA@GUAo"


@pytest.fixture(scope="session")
def golden_spectrum() -> Spectrum:
    return Spectrum(eigenvalues=GOLDEN_EIGENVALUES,
                    multiplicities=GOLDEN_MULTIPLICITIES)


@pytest.fixture(scope="session")
def petersen_graph() -> Graph:
    return petersen()


# ---------------------------------------------------------------------------
# oracles (independent of the library paths they check)

def bfs_distances_oracle(g: Graph) -> np.ndarray:
    """Plain-python BFS from every source."""
    n = g.n
    adj = [list(np.nonzero(g.adjacency[u])[0]) for u in range(n)]
    dist = np.full((n, n), -1, dtype=np.int64)
    for src in range(n):
        dist[src, src] = 0
        frontier = [src]
        t = 0
        while frontier:
            t += 1
            nxt = []
            for u in frontier:
                for v in adj[u]:
                    if dist[src, v] < 0:
                        dist[src, v] = t
                        nxt.append(int(v))
            frontier = nxt
    return dist


def two_coloring_oracle(g: Graph) -> bool:
    """BFS 2-coloring."""
    color = np.full(g.n, -1)
    color[0] = 0
    queue = [0]
    adj = [np.nonzero(g.adjacency[u])[0] for u in range(g.n)]
    while queue:
        u = queue.pop()
        for v in adj[u]:
            if color[v] < 0:
                color[v] = 1 - color[u]
                queue.append(int(v))
            elif color[v] == color[u]:
                return False
    return True


def girth_oracle(g: Graph) -> int | None:
    """Shortest cycle by BFS from every vertex; None for forests."""
    best = None
    adj = [list(np.nonzero(g.adjacency[u])[0]) for u in range(g.n)]
    for src in range(g.n):
        dist = {src: 0}
        parent = {src: -1}
        frontier = [src]
        while frontier:
            nxt = []
            for u in frontier:
                for v in adj[u]:
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        parent[v] = u
                        nxt.append(v)
                    elif v != parent[u]:
                        length = dist[u] + dist[v] + 1
                        if best is None or length < best:
                            best = length
            frontier = nxt
    return best


def odd_girth_oracle(g: Graph) -> int | None:
    """Smallest odd walk length with a positive closed-walk trace."""
    a = g.adjacency
    power = np.eye(g.n)
    for ell in range(1, 2 * g.n + 2):
        power = power @ a
        if ell % 2 == 1 and np.trace(power) > 0.5:
            return ell
    return None


def graph6_encode_oracle(g: Graph) -> str:
    """Independent graph6 encoder following the published byte rules."""
    assert g.n <= 62
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(int(g.adjacency[i, j]))
    while len(bits) % 6:
        bits.append(0)
    chars = [chr(63 + g.n)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k: k + 6]:
            val = 2 * val + b
        chars.append(chr(63 + val))
    return "".join(chars)


def intersection_array_oracle(g: Graph) -> tuple[np.ndarray, np.ndarray, np.ndarray] | None:
    """(a, b, c) arrays from the distance partition, or None when the graph
    is not distance-regular (some parameter depends on the vertex pair)."""
    dist = bfs_distances_oracle(g)
    ecc = int(dist.max())
    a = np.full(ecc + 1, -1.0)
    b = np.full(ecc + 1, -1.0)
    c = np.full(ecc + 1, -1.0)
    adj = g.adjacency
    for u in range(g.n):
        for v in range(g.n):
            i = dist[u, v]
            neigh = np.nonzero(adj[v])[0]
            same = int(np.sum(dist[u, neigh] == i))
            down = int(np.sum(dist[u, neigh] == i - 1))
            up = int(np.sum(dist[u, neigh] == i + 1))
            for arr, val in ((a, same), (c, down), (b, up)):
                if arr[i] < 0:
                    arr[i] = val
                elif arr[i] != val:
                    return None
    return a, b, c


def rel_err(got, want) -> float:
    got = np.asarray(got, dtype=np.float64)
    want = np.asarray(want, dtype=np.float64)
    scale = np.maximum(np.abs(want), 1e-300)
    return float(np.max(np.abs(got - want) / scale))


def fr(values) -> np.ndarray:
    """Fractions (or fraction lists) to float arrays."""
    return np.array([float(v) for v in values])
