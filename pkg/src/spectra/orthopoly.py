"""Polynomials, the trace scalar product, and the predistance family."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npp

from ._recurrence import norms_from_omega, omega_from_recurrence, predistance_recurrence
from .errors import DegenerateSpectrum
from .spectral import Spectrum


@dataclass(frozen=True)
class Poly:
    """Dense real polynomial in the monomial basis; coeffs[j] multiplies x^j.

    Trailing zero coefficients are trimmed, so the last coefficient is
    nonzero unless the polynomial is identically zero.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=np.float64))
        nz = np.nonzero(c)[0]
        c = c[: nz[-1] + 1] if nz.size else np.zeros(1)
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports 0."""
        return self.coeffs.size - 1

    def __call__(self, x):
        return npp.polyval(x, self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        return Poly(npp.polyadd(self.coeffs, other.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return Poly(npp.polysub(self.coeffs, other.coeffs))

    def __mul__(self, other):
        if isinstance(other, Poly):
            return Poly(npp.polymul(self.coeffs, other.coeffs))
        return Poly(self.coeffs * float(other))

    __rmul__ = __mul__

    def derivative(self) -> "Poly":
        return Poly(npp.polyder(self.coeffs))

    def is_zero(self, tol: float = 0.0) -> bool:
        return bool((np.abs(self.coeffs) <= tol).all())


@dataclass(frozen=True)
class PolySequence:
    """The predistance polynomials p_0..p_d as a coefficient matrix.

    ``omega[i, j]`` is the x^j coefficient of p_i; the matrix is lower
    triangular with positive diagonal. ``lambda0`` is the spectral radius
    the family is normalized against (||p_i||^2 = p_i(lambda0) > 0).
    """

    omega: np.ndarray = field(repr=False)
    lambda0: float

    def __post_init__(self):
        om = np.asarray(self.omega, dtype=np.float64)
        object.__setattr__(self, "omega", om)
        object.__setattr__(self, "lambda0", float(self.lambda0))
        if om.ndim != 2 or om.shape[0] != om.shape[1]:
            raise ValueError("omega must be square")
        d = om.shape[0] - 1
        if np.abs(np.triu(om, 1)).max(initial=0.0) != 0.0:
            raise ValueError("omega must be lower triangular")
        if abs(om[0, 0] - 1.0) > 1e-12:
            raise ValueError("p_0 must be the constant 1")
        scale = max(1.0, float(np.abs(om).max()))
        if d >= 1 and abs(om[1, 0]) > 1e-8 * scale:
            raise ValueError("p_1 must have zero constant term")
        if (np.diag(om) <= 0).any():
            raise ValueError("leading coefficients must be positive")
        try:
            at_l0 = self.norms_squared()
        except DegenerateSpectrum as exc:
            raise ValueError(f"p_i(lambda0) must be positive for every i: {exc}") from exc
        if (at_l0 <= 0).any():
            raise ValueError("p_i(lambda0) must be positive for every i")
        om.flags.writeable = False

    @property
    def d(self) -> int:
        return self.omega.shape[0] - 1

    @property
    def polys(self) -> list[Poly]:
        return [self.p(i) for i in range(self.d + 1)]

    def p(self, i: int) -> Poly:
        return Poly(self.omega[i, : i + 1])

    def eval_all(self, x) -> np.ndarray:
        """Values p_i(x) for all i; columns follow the shape of x."""
        x = np.asarray(x, dtype=np.float64)
        powers = np.vander(np.atleast_1d(x), self.d + 1, increasing=True).T
        out = self.omega @ powers
        return out[:, 0] if x.ndim == 0 else out

    def norms_squared(self) -> np.ndarray:
        """||p_i||^2, equal to p_i(lambda0) under this normalization.

        Evaluated through the recurrence rather than the monomial form: the
        values decay geometrically and Horner evaluation of the rows cannot
        resolve the small ones.
        """
        return norms_from_omega(self.omega, self.lambda0)

    def to_dict(self) -> dict:
        return {
            "lambda0": float(self.lambda0),
            "omega": [[float(x) for x in self.omega[i, : i + 1]]
                      for i in range(self.d + 1)],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PolySequence":
        rows = data["omega"]
        d = len(rows) - 1
        om = np.zeros((d + 1, d + 1))
        for i, row in enumerate(rows):
            if len(row) != i + 1:
                raise ValueError(f"omega row {i} must have {i + 1} entries")
            om[i, : i + 1] = row
        return cls(omega=om, lambda0=float(data["lambda0"]))


def inner_product(f: Poly, g: Poly, s: Spectrum) -> float:
    """Trace scalar product (1/n) sum_i m_i f(lambda_i) g(lambda_i)."""
    nodes = s.eigenvalues
    return float(np.sum(s.weights() * f(nodes) * g(nodes)))


def polys_from_spectrum(s: Spectrum) -> PolySequence:
    """Orthogonalize 1, x, ..., x^d under the trace scalar product.

    The result is normalized so that ||p_i||^2 = p_i(lambda0), with the sign
    fixed by p_i(lambda0) > 0. Implemented through the three-term recurrence
    of the orthonormal family rather than by projecting raw monomials, which
    computes the same polynomials but keeps full precision at degrees where
    monomial projections cancel catastrophically. A non-positive residual or
    value at lambda0 raises DegenerateSpectrum.
    """
    alpha, beta, gamma, _ = predistance_recurrence(s.eigenvalues, s.weights())
    omega = omega_from_recurrence(alpha, beta, gamma)
    try:
        return PolySequence(omega=omega, lambda0=s.lambda0)
    except ValueError as exc:
        raise DegenerateSpectrum(str(exc)) from exc


def hoffman(ps: PolySequence) -> Poly:
    """H = p_0 + p_1 + ... + p_d; vanishes at every eigenvalue but lambda0,
    where it takes the value n."""
    return Poly(ps.omega.sum(axis=0))


def spectral_excess(ps: PolySequence) -> float:
    """p_d(lambda0), evaluated from the polynomial family."""
    return float(ps.norms_squared()[ps.d])


def spectral_excess_from_spectrum(s: Spectrum) -> float:
    """p_d(lambda0) straight from the spectrum:
    n * (sum_i pi_0^2 / (m_i pi_i^2))^-1 with pi_i the absolute gap products."""
    ev = s.eigenvalues
    d = s.d
    if d == 0:
        return float(s.n)
    diffs = np.abs(ev[:, None] - ev[None, :]) + np.eye(d + 1)
    pi = diffs.prod(axis=1)
    total = np.sum(pi[0] ** 2 / (s.multiplicities * pi ** 2))
    return float(s.n / total)
