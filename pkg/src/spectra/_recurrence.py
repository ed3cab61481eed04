"""Shared numerical core for the orthogonal-polynomial machinery.

Everything here works on plain arrays so that the public modules can stay
thin. Two conditioning choices matter and are easy to get wrong:

* Orthogonalization runs in orthonormal form on the node values (a Lanczos
  recursion with full reorthogonalization). Projecting raw monomials loses
  up to ten digits once the spectral radius dominates, because x^i evaluated
  near the small eigenvalues cancels almost completely.

* The values of the orthonormal polynomials at the spectral radius decay
  geometrically; the forward three-term recurrence amplifies their relative
  error step by step. Running the same recurrence backward (they form the
  extreme eigenvector of the Jacobi matrix) is stable, so that is how the
  normalization chain is computed.
"""
from __future__ import annotations

import numpy as np
from numpy.polynomial import polynomial as npp

from .errors import DegenerateSpectrum, NonRealRoots

RESIDUAL_GUARD = 1e-12


def jacobi_lanczos(nodes: np.ndarray, weights: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Orthonormal three-term data of the weighted point measure.

    Returns (a, b, q): diagonal a[0..d], off-diagonal b[0..d-1], and the
    orthonormal basis values q[i] at the nodes. Fully reorthogonalized twice
    per step; d + 1 = len(nodes).
    """
    nodes = np.asarray(nodes, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    d = nodes.size - 1
    a = np.zeros(d + 1)
    b = np.zeros(max(d, 0))
    q = np.zeros((d + 1, nodes.size))
    q[0] = 1.0
    for i in range(d):
        a[i] = float(np.sum(weights * nodes * q[i] * q[i]))
        t = (nodes - a[i]) * q[i]
        if i >= 1:
            t -= b[i - 1] * q[i - 1]
        for _pass in range(2):
            for j in range(i, -1, -1):
                t -= float(np.sum(weights * t * q[j])) * q[j]
        norm2 = float(np.sum(weights * t * t))
        scale = max(1.0, float(np.abs(nodes).max()) ** 2)
        if norm2 <= RESIDUAL_GUARD * scale:
            raise DegenerateSpectrum(
                f"residual norm {norm2:.3e} at degree {i + 1}; nodes are not distinct "
                "enough to support a polynomial of this degree"
            )
        b[i] = np.sqrt(norm2)
        q[i + 1] = t / b[i]
    a[d] = float(np.sum(weights * nodes * q[d] * q[d]))
    return a, b, q


def extreme_value_chain(a: np.ndarray, b: np.ndarray, lam0: float) -> np.ndarray:
    """Values of the orthonormal polynomials at the largest support point.

    Computed by the backward recurrence (the vector is the lam0-eigenvector
    of the Jacobi matrix, the direction for which backward substitution is
    stable). Normalized to first component 1.
    """
    d = len(a) - 1
    v = np.empty(d + 1)
    v[d] = 1.0
    if d >= 1:
        v[d - 1] = (lam0 - a[d]) * v[d] / b[d - 1]
        for i in range(d - 1, 0, -1):
            v[i - 1] = ((lam0 - a[i]) * v[i] - b[i] * v[i + 1]) / b[i - 1]
    if v[0] == 0.0 or not np.isfinite(v).all():
        raise DegenerateSpectrum("eigenvector chain at the spectral radius broke down")
    v = v / v[0]
    if (v <= 0.0).any():
        raise DegenerateSpectrum(
            "polynomial values at the spectral radius are not all positive; "
            "input is not a valid spectrum"
        )
    return v


def predistance_recurrence(nodes: np.ndarray, weights: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Recurrence data (alpha, beta, gamma) of the predistance family.

    ``nodes`` are the distinct eigenvalues (descending, nodes[0] = lambda0)
    and ``weights`` the multiplicity weights m_i / n. The fourth return is
    p_i(lambda0), which also equals ||p_i||^2 under the normalization used
    throughout.
    """
    a, b, _ = jacobi_lanczos(nodes, weights)
    v = extreme_value_chain(a, b, float(nodes[0]))
    rho = v[1:] / v[:-1]
    alpha = a
    beta = b * rho
    gamma = b / rho
    return alpha, beta, gamma, v ** 2


def omega_from_recurrence(alpha: np.ndarray, beta: np.ndarray, gamma: np.ndarray) -> np.ndarray:
    """Lower-triangular monomial coefficient matrix built from the recurrence.

    Row i holds the coefficients of p_i; p_0 = 1 and
    gamma[i] * p_{i+1} = (x - alpha[i]) * p_i - beta[i-1] * p_{i-1}.
    """
    d = len(alpha) - 1
    omega = np.zeros((d + 1, d + 1))
    omega[0, 0] = 1.0
    for i in range(d):
        t = np.zeros(d + 1)
        t[1: i + 2] = omega[i, : i + 1]
        t[: i + 1] -= alpha[i] * omega[i, : i + 1]
        if i >= 1:
            t[: i] -= beta[i - 1] * omega[i - 1, : i]
        omega[i + 1] = t / gamma[i]
    return omega


def stable_recurrence_from_omega(omega: np.ndarray, lambda0: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(alpha, beta, gamma) from a coefficient matrix, on the stable path.

    gamma and alpha are ratio reads of the matrix entries; beta comes from
    the column-sum identity, which avoids the cancellation the direct
    coefficient formula suffers at high degree. For d >= 2 the radius is
    taken from the matrix itself (alpha_0 + beta_0); below that the matrix
    is scale-free and the supplied value is used.
    """
    d = omega.shape[0] - 1
    if d == 0:
        return np.array([lambda0]), np.empty(0), np.empty(0)
    gamma = np.array([omega[i - 1, i - 1] / omega[i, i] for i in range(1, d + 1)])
    alpha = np.zeros(d + 1)
    alpha[0] = -omega[1, 0] / omega[1, 1]
    for i in range(1, d):
        alpha[i] = omega[i, i - 1] / omega[i, i] - omega[i + 1, i] / omega[i + 1, i + 1]
    if d >= 2:
        lambda0 = float(alpha[0] - omega[1, 1] * omega[2, 0] / omega[2, 2])
    alpha[d] = lambda0 - gamma[d - 1]
    beta = lambda0 - alpha[:d] - np.concatenate(([0.0], gamma[: d - 1]))
    return alpha, beta, gamma


def norms_from_omega(omega: np.ndarray, lambda0: float) -> np.ndarray:
    """p_i(lambda0) for a predistance coefficient matrix, through the
    recurrence and the backward value chain. Horner evaluation of the rows
    at lambda0 loses to cancellation once the values decay; this does not.
    """
    d = omega.shape[0] - 1
    if d == 0:
        return np.ones(1)
    alpha, beta, gamma = stable_recurrence_from_omega(omega, lambda0)
    if (beta <= 0.0).any() or (gamma <= 0.0).any():
        raise DegenerateSpectrum(
            "recurrence data read from the coefficient matrix is not positive"
        )
    if d >= 2:
        lambda0 = float(alpha[0] + beta[0])
    b = np.sqrt(beta * gamma)
    v = extreme_value_chain(alpha, b, lambda0)
    return v ** 2


def orthonormal_values(x: float, alpha: np.ndarray, beta: np.ndarray, gamma: np.ndarray) -> np.ndarray:
    """Forward evaluation of the orthonormal polynomials at a scalar x."""
    d = len(alpha) - 1
    b = np.sqrt(beta[: d] * gamma[: d])
    v = np.empty(d + 1)
    v[0] = 1.0
    if d >= 1:
        v[1] = (x - alpha[0]) / b[0]
    for k in range(1, d):
        v[k + 1] = ((x - alpha[k]) * v[k] - b[k - 1] * v[k - 1]) / b[k]
    return v


def charpoly_and_derivative(x: float, alpha: np.ndarray, offdiag_sq: np.ndarray) -> tuple[float, float]:
    """det(x I - J) and its x-derivative for the tridiagonal J, by the
    principal-minor recurrence."""
    pm1, p = 1.0, x - alpha[0]
    dm1, dp = 0.0, 1.0
    for k in range(1, len(alpha)):
        pn = (x - alpha[k]) * p - offdiag_sq[k - 1] * pm1
        dn = p + (x - alpha[k]) * dp - offdiag_sq[k - 1] * dm1
        pm1, p = p, pn
        dm1, dp = dp, dn
    return p, dp


def polish_against_recurrence(xs: np.ndarray, alpha: np.ndarray, beta: np.ndarray,
                              gamma: np.ndarray, iters: int = 4) -> np.ndarray:
    """Newton-polish approximate eigenvalues against the recurrence matrix.

    The characteristic polynomial is evaluated through the stable
    principal-minor recurrence, so a handful of iterations reaches machine
    precision from coefficient-space root estimates.
    """
    offdiag_sq = beta[: len(gamma)] * gamma
    out = np.array(xs, dtype=np.float64)
    for i, x in enumerate(out):
        for _ in range(iters):
            f, df = charpoly_and_derivative(x, alpha, offdiag_sq)
            if df == 0.0:
                break
            step = f / df
            x -= step
            if abs(step) <= 1e-15 * max(1.0, abs(x)):
                break
        out[i] = x
    return out


def real_roots(coeffs: np.ndarray, imag_tol: float = 1e-6,
               require_all: bool = True) -> np.ndarray:
    """Real roots of a polynomial: companion-matrix eigenvalues plus one
    Newton step, sorted descending.

    With ``require_all`` a root with imaginary part beyond tolerance raises
    NonRealRoots; otherwise complex pairs are silently dropped (for
    polynomials that legitimately carry them).
    """
    coeffs = np.asarray(coeffs, dtype=np.float64)
    coeffs = np.trim_zeros(coeffs, "b")
    if coeffs.size <= 1:
        return np.empty(0)
    roots = npp.polyroots(coeffs)
    scale = max(1.0, float(np.abs(roots).max()))
    complex_mask = np.abs(roots.imag) > imag_tol * scale
    if complex_mask.any():
        if require_all:
            raise NonRealRoots(
                f"root imaginary part {np.abs(roots.imag).max():.3e} exceeds tolerance"
            )
        roots = roots[~complex_mask]
    roots = roots.real
    deriv = npp.polyder(coeffs)
    fx = npp.polyval(roots, coeffs)
    dfx = npp.polyval(roots, deriv)
    safe = dfx != 0.0
    roots[safe] -= fx[safe] / dfx[safe]
    return np.sort(roots)[::-1]
