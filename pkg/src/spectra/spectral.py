"""Adjacency spectra and closed-walk moments."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ClusterAmbiguity
from .graphs import Graph

DEFAULT_CLUSTER_TOL = 1e-8


@dataclass(frozen=True)
class Spectrum:
    """Distinct adjacency eigenvalues (descending) with multiplicities.

    ``raw_multiplicities`` holds the unrounded values when the spectrum was
    recovered from another representation; it is not serialized.
    """

    eigenvalues: np.ndarray
    multiplicities: np.ndarray
    raw_multiplicities: np.ndarray | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        ev = np.asarray(self.eigenvalues, dtype=np.float64)
        mult = np.asarray(self.multiplicities, dtype=np.int64)
        object.__setattr__(self, "eigenvalues", ev)
        object.__setattr__(self, "multiplicities", mult)
        if ev.ndim != 1 or mult.shape != ev.shape or ev.size == 0:
            raise ValueError("eigenvalues and multiplicities must be matching 1-d arrays")
        if not (np.diff(ev) < 0).all():
            raise ValueError("eigenvalues must be strictly decreasing")
        if (mult <= 0).any():
            raise ValueError("multiplicities must be positive integers")
        if mult[0] != 1:
            raise ValueError("the spectral radius of a connected graph is simple")
        scale = max(1e-30, float(np.abs(ev).max()))
        if abs(float(mult @ ev)) > 1e-9 * self.n * scale:
            raise ValueError("trace is not zero: not an adjacency spectrum")
        if ev[0] < np.abs(ev).max() - 1e-9 * scale:
            raise ValueError("largest eigenvalue must dominate in absolute value")
        ev.flags.writeable = False
        mult.flags.writeable = False

    @property
    def n(self) -> int:
        return int(self.multiplicities.sum())

    @property
    def d(self) -> int:
        """Number of distinct eigenvalues minus one."""
        return self.eigenvalues.size - 1

    @property
    def lambda0(self) -> float:
        return float(self.eigenvalues[0])

    def weights(self) -> np.ndarray:
        """Multiplicity weights m_i / n of the trace scalar product."""
        return self.multiplicities / self.n

    def to_dict(self) -> dict:
        return {
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "multiplicities": [int(m) for m in self.multiplicities],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Spectrum":
        return cls(
            eigenvalues=np.asarray(data["eigenvalues"], dtype=np.float64),
            multiplicities=np.asarray(data["multiplicities"], dtype=np.int64),
        )


@dataclass(frozen=True)
class WalkMoments:
    """Average closed-walk counts c(0..L); c(l) = tr(A^l) / n."""

    c: np.ndarray
    n: int

    def __post_init__(self):
        c = np.asarray(self.c, dtype=np.float64)
        object.__setattr__(self, "c", c)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("moments must be a nonempty 1-d array")
        scale = max(1.0, float(np.abs(c).max()))
        if abs(c[0] - 1.0) > 1e-12:
            raise ValueError("c(0) must be 1")
        if c.size > 1 and abs(c[1]) > 1e-9 * scale:
            raise ValueError("c(1) must be 0 for a loopless graph")
        if (c[::2] < -1e-9 * scale).any():
            raise ValueError("even moments must be nonnegative")
        c.flags.writeable = False

    @property
    def length(self) -> int:
        """Largest walk length L covered."""
        return self.c.size - 1

    def to_dict(self) -> dict:
        return {"c": [float(x) for x in self.c], "n": int(self.n)}

    @classmethod
    def from_dict(cls, data: dict) -> "WalkMoments":
        return cls(c=np.asarray(data["c"], dtype=np.float64), n=int(data["n"]))


def spectrum_of_graph(g: Graph, tol: float = DEFAULT_CLUSTER_TOL) -> Spectrum:
    """Eigendecompose the adjacency matrix and cluster equal eigenvalues.

    Eigenvalues closer than tol * max(1, lambda_max) are merged into one
    cluster whose mean becomes the reported eigenvalue and whose size the
    multiplicity. A gap between tol and 10*tol raises ClusterAmbiguity: the
    tolerance cannot cleanly decide whether the pair is one eigenvalue.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    w, _ = _kernels.jacobi_eigh(np.asarray(g.adjacency, dtype=np.float64))
    vals = np.sort(w)[::-1]
    scale = tol * max(1.0, abs(float(vals[0])))
    gaps = vals[:-1] - vals[1:]
    bad = (gaps > scale) & (gaps < 10.0 * scale)
    if bad.any():
        k = int(np.nonzero(bad)[0][0])
        raise ClusterAmbiguity(
            f"eigenvalue gap {gaps[k]:.3e} between positions {k} and {k + 1} "
            f"lies in the ambiguous band ({scale:.3e}, {10 * scale:.3e})"
        )
    reps = [vals[0]]
    mult = [1]
    for v, gap in zip(vals[1:], gaps):
        if gap <= scale:
            reps[-1] = (reps[-1] * mult[-1] + v) / (mult[-1] + 1)
            mult[-1] += 1
        else:
            reps.append(v)
            mult.append(1)
    return Spectrum(
        eigenvalues=np.asarray(reps, dtype=np.float64),
        multiplicities=np.asarray(mult, dtype=np.int64),
    )


def walk_moments(source: Spectrum | Graph, L: int) -> WalkMoments:
    """c(l) for l = 0..L, from a Spectrum (power sums) or a Graph (traces)."""
    if L < 0:
        raise ValueError("L must be nonnegative")
    if isinstance(source, Spectrum):
        powers = np.vander(source.eigenvalues, L + 1, increasing=True).T
        c = powers @ source.weights()
        return WalkMoments(c=c, n=source.n)
    if isinstance(source, Graph):
        a = source.adjacency
        n = source.n
        c = np.empty(L + 1)
        c[0] = 1.0
        power = np.eye(n)
        for ell in range(1, L + 1):
            power = a @ power
            c[ell] = np.trace(power) / n
        return WalkMoments(c=c, n=n)
    raise TypeError(f"expected Spectrum or Graph, got {type(source).__name__}")
