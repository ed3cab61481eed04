"""Simple connected graphs: parsing, validation, and distance statistics.

Supported input formats:
  * edgelist  - UTF-8 lines "u v"; '#' starts a comment; blank lines ignored;
                arbitrary labels are relabeled 0..n-1 in first-seen order.
  * adjmatrix - n lines of n characters '0'/'1', symmetric, zero diagonal.
  * graph6    - standard printable-ASCII encoding, single-byte size (n <= 62).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import Disconnected, NotSimple, ParseError

GRAPH_FORMATS = ("edgelist", "adjmatrix", "graph6")


@dataclass(frozen=True)
class Graph:
    """Simple connected undirected graph on vertices 0..n-1."""

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: np.ndarray = field(repr=False)

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        if n <= 0:
            raise ParseError(f"vertex count must be positive, got {n}")
        adj = np.zeros((n, n), dtype=np.float64)
        canon = []
        seen = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise NotSimple(f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise NotSimple(f"duplicate edge {key}")
            seen.add(key)
            canon.append(key)
            adj[u, v] = adj[v, u] = 1.0
        g = cls(n=n, edges=tuple(sorted(canon)), adjacency=adj)
        g._check_connected()
        adj.flags.writeable = False
        return g

    def _check_connected(self) -> None:
        seen = np.zeros(self.n, dtype=bool)
        seen[0] = True
        queue = deque([0])
        neighbors = [np.nonzero(self.adjacency[u])[0] for u in range(self.n)]
        while queue:
            u = queue.popleft()
            for v in neighbors[u]:
                if not seen[v]:
                    seen[v] = True
                    queue.append(int(v))
        if not seen.all():
            missing = int(np.nonzero(~seen)[0][0])
            raise Disconnected(f"vertex {missing} unreachable from vertex 0")

    @property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1).astype(np.int64)

    def is_regular(self) -> bool:
        deg = self.degrees
        return bool(deg.max() == deg.min())

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) adjacency lists for the BFS kernel."""
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum(self.degrees)
        indices = np.concatenate(
            [np.nonzero(self.adjacency[u])[0] for u in range(self.n)]
        ).astype(np.int64)
        return indptr, indices


@dataclass(frozen=True)
class DistanceProfile:
    """Per-vertex counts of vertices at each distance, up to the diameter."""

    ecc: int
    counts: np.ndarray = field(repr=False)  # shape (n, ecc + 1)

    def __post_init__(self):
        n = self.counts.shape[0]
        if self.counts.shape != (n, self.ecc + 1):
            raise ValueError("counts shape does not match eccentricity")
        if not (self.counts.sum(axis=1) == n).all():
            raise ValueError("distance counts of some vertex do not sum to n")
        if not (self.counts[:, 0] == 1).all():
            raise ValueError("counts at distance 0 must be 1")

    @property
    def n(self) -> int:
        return self.counts.shape[0]


def parse_graph(text: bytes | str, format: str) -> Graph:
    """Parse ``text`` in the given format ('edgelist', 'adjmatrix', 'graph6')."""
    if format not in GRAPH_FORMATS:
        raise ValueError(f"unknown graph format {format!r}")
    if format == "graph6":
        data = text if isinstance(text, bytes) else text.encode("ascii")
        return _parse_graph6(data)
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}") from exc
    if format == "edgelist":
        return _parse_edgelist(text)
    return _parse_adjmatrix(text)


def _parse_edgelist(text: str) -> Graph:
    labels: dict[str, int] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected 'u v', got {raw!r}")
        pair = []
        for token in parts:
            if token not in labels:
                labels[token] = len(labels)
            pair.append(labels[token])
        edges.append(tuple(pair))
    if not labels:
        raise ParseError("edge list is empty")
    return Graph.from_edges(len(labels), edges)


def _parse_adjmatrix(text: str) -> Graph:
    rows = [line.strip() for line in text.splitlines() if line.strip()]
    n = len(rows)
    if n == 0:
        raise ParseError("adjacency matrix is empty")
    mat = np.zeros((n, n), dtype=np.int64)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ParseError(f"row {i} has length {len(row)}, expected {n}")
        for j, ch in enumerate(row):
            if ch not in "01":
                raise ParseError(f"row {i} contains {ch!r}; only '0'/'1' allowed")
            mat[i, j] = ch == "1"
    if (np.diag(mat) != 0).any():
        raise NotSimple("adjacency matrix has a nonzero diagonal entry")
    if (mat != mat.T).any():
        raise ParseError("adjacency matrix is not symmetric")
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if mat[i, j]]
    return Graph.from_edges(n, edges)


def _parse_graph6(data: bytes) -> Graph:
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<"):]
    if not data:
        raise ParseError("graph6 string is empty")
    if any(b < 63 or b > 126 for b in data):
        raise ParseError("graph6 string has bytes outside the printable range 63..126")
    n = data[0] - 63
    if n == 63:
        raise ParseError("multi-byte graph6 sizes (n > 62) are not supported")
    if n == 0:
        raise ParseError("graph6 graph has no vertices")
    nbits = n * (n - 1) // 2
    body = data[1:]
    expected = (nbits + 5) // 6
    if len(body) != expected:
        raise ParseError(
            f"graph6 body has {len(body)} bytes, expected {expected} for n={n}"
        )
    bits = []
    for byte in body:
        val = byte - 63
        bits.extend((val >> shift) & 1 for shift in range(5, -1, -1))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def distance_profile(g: Graph) -> DistanceProfile:
    """BFS from every vertex; counts[u][t] = #vertices at distance t from u."""
    indptr, indices = g.csr()
    dist = _kernels.all_pairs_distances(indptr, indices, g.n)
    ecc = int(dist.max())
    counts = np.zeros((g.n, ecc + 1), dtype=np.int64)
    for u in range(g.n):
        counts[u] = np.bincount(dist[u], minlength=ecc + 1)
    return DistanceProfile(ecc=ecc, counts=counts)


def average_excess(dp: DistanceProfile, d: int) -> float:
    """Mean over vertices of the number of vertices at distance exactly d."""
    if d < 0:
        raise ValueError("distance must be nonnegative")
    if d > dp.ecc:
        return 0.0
    return float(dp.counts[:, d].mean())
