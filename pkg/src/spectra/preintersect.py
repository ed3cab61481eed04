"""Preintersection numbers: recurrence coefficients, the tridiagonal
recurrence matrix, and the full Fourier coefficient tensor."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SingularOmega, ZeroLeadingCoeff, InternalInconsistency
from .orthopoly import PolySequence
from .spectral import Spectrum

LEADING_COEFF_GUARD = 1e-12
A1_TOL = 1e-8
OFF_PATTERN_TOL = 1e-8


@dataclass(frozen=True)
class PreintersectionSet:
    """Three-term recurrence coefficients of the predistance family.

    alpha has d+1 entries, beta d (indices 0..d-1), gamma d (indices 1..d,
    stored from 0). Every column triple satisfies
    alpha_i + beta_i + gamma_i = lambda0 with gamma_0 = beta_d = 0.
    """

    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray
    lambda0: float

    def __post_init__(self):
        alpha = np.atleast_1d(np.asarray(self.alpha, dtype=np.float64))
        beta = np.atleast_1d(np.asarray(self.beta, dtype=np.float64)) if np.size(self.beta) else np.empty(0)
        gamma = np.atleast_1d(np.asarray(self.gamma, dtype=np.float64)) if np.size(self.gamma) else np.empty(0)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "lambda0", float(self.lambda0))
        d = alpha.size - 1
        if beta.size != d or gamma.size != d:
            raise ValueError("need d+1 alphas, d betas and d gammas")
        if (gamma <= 0).any():
            raise ValueError("every gamma_i must be positive")
        if (beta <= 0).any():
            raise ValueError("every beta_i (i < d) must be positive")
        tol = A1_TOL * (1.0 + abs(self.lambda0))
        if abs(alpha[0]) > tol:
            raise ValueError("alpha_0 must vanish for a loopless graph")
        sums = self.column_sums()
        if np.abs(sums - self.lambda0).max() > tol:
            raise ValueError("alpha_i + beta_i + gamma_i must equal lambda0")
        for arr in (alpha, beta, gamma):
            arr.flags.writeable = False

    @property
    def d(self) -> int:
        return self.alpha.size - 1

    def column_sums(self) -> np.ndarray:
        """alpha_i + beta_i + gamma_i with the gamma_0 = beta_d = 0 convention."""
        d = self.d
        out = self.alpha.copy()
        out[:d] += self.beta
        out[1:] += self.gamma
        return out

    def to_matrix(self) -> "RecurrenceMatrix":
        d = self.d
        m = np.diag(self.alpha)
        for i in range(d):
            m[i, i + 1] = self.gamma[i]
            m[i + 1, i] = self.beta[i]
        return RecurrenceMatrix(matrix=m)

    def to_dict(self) -> dict:
        return {
            "alpha": [float(x) for x in self.alpha],
            "beta": [float(x) for x in self.beta],
            "gamma": [float(x) for x in self.gamma],
            "lambda0": float(self.lambda0),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PreintersectionSet":
        return cls(
            alpha=np.asarray(data["alpha"], dtype=np.float64),
            beta=np.asarray(data["beta"], dtype=np.float64),
            gamma=np.asarray(data["gamma"], dtype=np.float64),
            lambda0=float(data["lambda0"]),
        )


@dataclass(frozen=True)
class RecurrenceMatrix:
    """(d+1) x (d+1) tridiagonal matrix: diagonal alpha, superdiagonal gamma,
    subdiagonal beta. Every column sums to lambda0."""

    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        object.__setattr__(self, "matrix", m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("matrix must be square")
        band = np.tri(*m.shape, k=1) * np.tri(*m.shape, k=1).T
        if np.abs(m * (1.0 - band)).max(initial=0.0) != 0.0:
            raise ValueError("entries outside the tridiagonal band must be exactly 0")
        sums = m.sum(axis=0)
        lam0 = float(sums[0])
        if np.abs(sums - lam0).max() > A1_TOL * (1.0 + abs(lam0)):
            raise ValueError("column sums must all equal lambda0")
        m.flags.writeable = False

    @property
    def d(self) -> int:
        return self.matrix.shape[0] - 1

    @property
    def lambda0(self) -> float:
        return float(self.matrix.sum(axis=0)[0])

    def to_preintersection(self) -> PreintersectionSet:
        m = self.matrix
        d = self.d
        return PreintersectionSet(
            alpha=np.diag(m).copy(),
            beta=np.array([m[i + 1, i] for i in range(d)]),
            gamma=np.array([m[i, i + 1] for i in range(d)]),
            lambda0=self.lambda0,
        )


@dataclass(frozen=True)
class XiTensor:
    """Fourier coefficients xi[h, i, j] of p_i p_j in the predistance basis.

    The recurrence coefficients sit in the h = 1 slices up to the leading
    coefficient of the degree-one polynomial: p_1 = x_scale * x, so
    xi[i, 1, i] = x_scale * alpha_i and likewise for beta and gamma. For a
    regular graph x_scale = 1 and the slices are the coefficients verbatim;
    the accessors divide the factor out either way.
    """

    xi: np.ndarray = field(repr=False)
    x_scale: float = 1.0

    def __post_init__(self):
        xi = np.asarray(self.xi, dtype=np.float64)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "x_scale", float(self.x_scale))
        if xi.ndim != 3 or len(set(xi.shape)) != 1:
            raise ValueError("xi must be a cube")
        if self.x_scale <= 0:
            raise ValueError("x_scale must be positive")
        scale = max(1.0, float(np.abs(xi).max()))
        if np.abs(xi - xi.transpose(0, 2, 1)).max() > 1e-10 * scale:
            raise ValueError("xi must be symmetric in (i, j)")
        xi.flags.writeable = False

    @property
    def d(self) -> int:
        return self.xi.shape[0] - 1

    def alpha(self) -> np.ndarray:
        """Recurrence diagonal from the slice xi[i, 1, i]."""
        return np.array([self.xi[i, 1, i] for i in range(self.d + 1)]) / self.x_scale

    def beta(self) -> np.ndarray:
        """Recurrence subdiagonal from the slice xi[i, 1, i+1]."""
        return np.array([self.xi[i, 1, i + 1] for i in range(self.d)]) / self.x_scale

    def gamma(self) -> np.ndarray:
        """Recurrence superdiagonal from the slice xi[i, 1, i-1], i = 1..d."""
        return np.array([self.xi[i, 1, i - 1] for i in range(1, self.d + 1)]) / self.x_scale


def xi_from_spectrum(s: Spectrum, ps: PolySequence) -> XiTensor:
    """Full preintersection tensor from the spectrum and its polynomials:
    xi[h, i, j] = <p_i p_j, p_h> / ||p_h||^2."""
    values = ps.eval_all(s.eigenvalues)          # values[i, r] = p_i(lambda_r)
    weighted = values * s.weights()
    norm = ps.norms_squared()
    xi = np.einsum("ir,jr,hr->hij", values, values, weighted) / norm[:, None, None]
    x_scale = float(ps.omega[1, 1]) if ps.d >= 1 else 1.0
    return XiTensor(xi=xi, x_scale=x_scale)


def preintersection_from_polys(ps: PolySequence) -> PreintersectionSet:
    """Recurrence coefficients read directly off the coefficient matrix.

    gamma_i = w[i-1][i-1] / w[i][i]; alpha and beta come from the matching
    coefficient comparisons of x * p_i; the last column (alpha_d and
    beta_{d-1}) is completed through the column-sum identity with
    lambda0 = alpha_0 + beta_0.
    """
    om = ps.omega
    d = ps.d
    diag = np.diag(om)
    if (np.abs(diag) <= LEADING_COEFF_GUARD).any():
        raise ZeroLeadingCoeff("a leading coefficient is numerically zero")
    if d == 0:
        return PreintersectionSet(alpha=np.array([ps.lambda0]), beta=np.empty(0),
                                  gamma=np.empty(0), lambda0=ps.lambda0)
    gamma = np.array([om[i - 1, i - 1] / om[i, i] for i in range(1, d + 1)])
    alpha = np.zeros(d + 1)
    alpha[0] = -om[1, 0] / om[1, 1]
    for i in range(1, d):
        alpha[i] = om[i, i - 1] / om[i, i] - om[i + 1, i] / om[i + 1, i + 1]
    beta = np.zeros(d)
    for i in range(d - 1):
        w_above = om[i + 1, i - 1] if i >= 1 else 0.0
        beta[i] = (
            w_above / om[i, i]
            - (om[i + 1, i] / om[i, i])
            * (om[i + 1, i] / om[i + 1, i + 1] - om[i + 2, i + 1] / om[i + 2, i + 2])
            - (om[i + 1, i + 1] / om[i + 2, i + 2]) * (om[i + 2, i] / om[i, i])
        )
    if d >= 2:
        lambda0 = alpha[0] + beta[0]
        beta[d - 1] = lambda0 - alpha[d - 1] - gamma[d - 2]
    else:
        lambda0 = ps.lambda0
        beta[0] = lambda0 - alpha[0]
    alpha[d] = lambda0 - gamma[d - 1]
    return PreintersectionSet(alpha=alpha, beta=beta, gamma=gamma, lambda0=lambda0)


def recurrence_from_omega(ps: PolySequence) -> RecurrenceMatrix:
    """Matrix route: the first d rows of R equal omega' U omega^{-1}, where
    omega' drops the last row and U is the basis shift; the last row follows
    from the column-sum identity."""
    om = ps.omega
    d = ps.d
    if (np.abs(np.diag(om)) <= LEADING_COEFF_GUARD).any():
        raise SingularOmega("omega has a numerically zero diagonal entry")
    if d == 0:
        return RecurrenceMatrix(matrix=np.array([[ps.lambda0]]))
    shift = np.eye(d + 1, k=1)
    top = np.linalg.solve(om.T, (om[:d] @ shift).T).T
    off_band = max(np.abs(np.triu(top, 2)).max(initial=0.0),
                   np.abs(np.tril(top, -2)).max(initial=0.0))
    scale = 1.0 + abs(ps.lambda0)
    if off_band > OFF_PATTERN_TOL * scale:
        raise InternalInconsistency(
            f"matrix identity produced {off_band:.3e} outside the tridiagonal band"
        )
    full = np.zeros((d + 1, d + 1))
    band = np.tri(d + 1, d + 1, k=1) * np.tri(d + 1, d + 1, k=1).T
    full[:d] = top * band[:d]
    lambda0 = float(full[:, 0].sum()) if d >= 2 else ps.lambda0
    full[d, d - 1] = lambda0 - full[: d, d - 1].sum()
    full[d, d] = lambda0 - full[: d, d].sum()
    return RecurrenceMatrix(matrix=full)


def leading_coeffs_from_preintersection(pre: PreintersectionSet) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The top three coefficient diagonals of the polynomial family.

    Returns (top, second, third) for i = 0..d:
      top[i]    = w_i^i     = 1 / (gamma_1 ... gamma_i)
      second[i] = w_i^{i-1} = -(alpha_0 + ... + alpha_{i-1}) * top[i]
      third[i]  = w_i^{i-2} = (sum_{r<s<=i-1} alpha_r alpha_s
                               - sum_{r<=i-2} beta_r gamma_{r+1}) * top[i]
    with empty products 1 and empty sums 0.
    """
    d = pre.d
    top = np.ones(d + 1)
    if d >= 1:
        top[1:] = 1.0 / np.cumprod(pre.gamma)
    second = np.zeros(d + 1)
    third = np.zeros(d + 1)
    alpha_partial = np.concatenate(([0.0], np.cumsum(pre.alpha)))
    alpha_sq_partial = np.concatenate(([0.0], np.cumsum(pre.alpha ** 2)))
    bg = pre.beta * pre.gamma if d >= 1 else np.empty(0)
    bg_partial = np.concatenate(([0.0], np.cumsum(bg)))
    for i in range(1, d + 1):
        second[i] = -alpha_partial[i] * top[i]
        pair_sum = (alpha_partial[i] ** 2 - alpha_sq_partial[i]) / 2.0
        third[i] = (pair_sum - bg_partial[max(i - 1, 0)]) * top[i]
    return top, second, third
