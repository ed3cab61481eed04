"""Conversions between the three equivalent graph descriptions.

Spectrum, polynomial family, and recurrence coefficients each determine the
other two; this module hosts the conversion directions not already owned by
the construction modules, plus a round-trip checker over named paths.
"""
from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from numpy.polynomial import polynomial as npp

from . import _kernels
from ._recurrence import (
    charpoly_and_derivative,
    omega_from_recurrence,
    orthonormal_values,
    polish_against_recurrence,
    predistance_recurrence,
    real_roots,
)
from .errors import (
    DegenerateSpectrum,
    InstabilityWarning,
    MomentDeficit,
    MultiplicityDrift,
    NonSimpleEigenvalues,
    NoRootAbove,
    SpectraError,
)
from .orthopoly import Poly, PolySequence, hoffman, polys_from_spectrum
from .preintersect import PreintersectionSet, preintersection_from_polys
from .spectral import Spectrum, WalkMoments, walk_moments

logger = logging.getLogger(__name__)

DRIFT_TOL = 0.01
MOMENT_RESIDUAL_WARN = 1e-10


def spectrum_from_polys(ps: PolySequence, drift_tol: float = DRIFT_TOL) -> Spectrum:
    """Recover the spectrum from the polynomial coefficient matrix.

    lambda_1..lambda_d are the roots of the Hoffman polynomial; lambda0 is
    -w_1^1 w_2^0 / w_2^2 (for d >= 2; a single distinct subdominant
    eigenvalue leaves the family scale-free, so the stored lambda0 is used);
    n = H(lambda0); multiplicities follow the reciprocal sum
    m_i = n * (sum_j p_j(lambda_i)^2 / p_j(lambda0))^-1.

    Root estimates from the coefficient form are Newton-polished against the
    recurrence-matrix characteristic polynomial, whose minor recurrence
    evaluates stably where high-degree coefficient forms cancel.
    """
    d = ps.d
    if d == 0:
        return Spectrum(eigenvalues=np.array([ps.lambda0]),
                        multiplicities=np.array([1]),
                        raw_multiplicities=np.array([1.0]))
    h = hoffman(ps)
    roots = real_roots(h.coeffs)
    if roots.size != d:
        raise DegenerateSpectrum(
            f"Hoffman polynomial yielded {roots.size} real roots, expected {d}"
        )
    om = ps.omega
    lam0 = float(-om[1, 1] * om[2, 0] / om[2, 2]) if d >= 2 else ps.lambda0
    pre = preintersection_from_polys(ps)
    roots = polish_against_recurrence(roots, pre.alpha, pre.beta, pre.gamma)
    lam0 = float(polish_against_recurrence(np.array([lam0]),
                                           pre.alpha, pre.beta, pre.gamma)[0])
    eigenvalues = np.concatenate(([lam0], roots))
    n_raw = float(h(lam0))
    raw = np.empty(d + 1)
    for i, x in enumerate(eigenvalues):
        raw[i] = n_raw / float(np.sum(
            orthonormal_values(x, pre.alpha, pre.beta, pre.gamma) ** 2))
    rounded = np.rint(raw).astype(np.int64)
    drift = float(np.abs(raw - rounded).max())
    if drift > drift_tol:
        raise MultiplicityDrift(f"multiplicity residual {drift:.3e} exceeds {drift_tol}")
    logger.info("spectrum recovered from polynomials: n=%.12g, multiplicity drift=%.3e",
                n_raw, drift)
    return Spectrum(eigenvalues=eigenvalues, multiplicities=rounded,
                    raw_multiplicities=raw)


def lambda0_from_h(ps: PolySequence, roots) -> float:
    """Spectral radius as the largest real root of the auxiliary polynomial
    h = (sum_i lambda_i / p_d(lambda_i) * L_i) * p_d - x, where L_i are the
    Lagrange basis polynomials over the subdominant eigenvalues.

    For d < 2 the polynomial vanishes identically (complete graphs share one
    coefficient matrix), so the stored normalization radius is returned.
    """
    roots = np.asarray(roots, dtype=np.float64)
    d = ps.d
    if d < 2:
        return ps.lambda0
    if roots.size != d:
        raise ValueError(f"expected {d} subdominant eigenvalues, got {roots.size}")
    pd = ps.p(d)
    lagrange_sum = np.zeros(d)
    for i in range(d):
        others = np.delete(roots, i)
        basis = npp.polyfromroots(others).real
        denom = float(np.prod(roots[i] - others))
        lagrange_sum[: basis.size] += (roots[i] / float(pd(roots[i]))) * basis / denom
    h = npp.polymul(lagrange_sum, pd.coeffs)
    h[1] -= 1.0
    candidates = real_roots(h, imag_tol=1e-8, require_all=False)
    if candidates.size == 0 or candidates.max() <= roots.max():
        raise NoRootAbove("no real root above the subdominant eigenvalues")
    return float(candidates.max())


def polys_from_preintersection(pre: PreintersectionSet) -> PolySequence:
    """Unroll the three-term recurrence starting from p_0 = 1."""
    omega = omega_from_recurrence(pre.alpha, pre.beta, pre.gamma)
    return PolySequence(omega=omega, lambda0=pre.lambda0)


def polys_via_charpoly(pre: PreintersectionSet) -> PolySequence:
    """Characteristic-polynomial route: p_i is det(xI - R_{i-1}) over the
    leading i x i block of the recurrence matrix, divided by gamma_1..gamma_i.
    The determinants expand along the last column, giving a polynomial
    recurrence in the matrix entries."""
    d = pre.d
    minors = np.zeros((d + 2, d + 2))          # minors[k] = det(xI - R_{k-1})
    minors[0, 0] = 1.0                         # empty matrix
    minors[1, 0] = -pre.alpha[0]
    minors[1, 1] = 1.0
    for k in range(1, d):
        shifted = np.roll(minors[k], 1)
        shifted[0] = 0.0
        minors[k + 1] = (shifted - pre.alpha[k] * minors[k]
                         - pre.beta[k - 1] * pre.gamma[k - 1] * minors[k - 1])
    omega = np.zeros((d + 1, d + 1))
    omega[0, 0] = 1.0
    scale = 1.0
    for i in range(1, d + 1):
        scale /= pre.gamma[i - 1]
        omega[i] = scale * minors[i][: d + 1]
    return PolySequence(omega=omega, lambda0=pre.lambda0)


def recurrence_eigen_data(pre: PreintersectionSet,
                          cluster_tol: float = 1e-8) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues of the recurrence matrix (descending) and the products
    <u_i, v_i> of its standard left and right eigenvectors (first component
    normalized to 1).

    The matrix is similar to a symmetric tridiagonal via diagonal scaling
    with sqrt(beta_i / gamma_{i+1}), which also maps its eigenvectors onto
    the left/right pairs.
    """
    d = pre.d
    if d == 0:
        return np.array([pre.lambda0]), np.array([1.0])
    off = np.sqrt(pre.beta * pre.gamma)
    sym = np.diag(pre.alpha) + np.diag(off, 1) + np.diag(off, -1)
    w, vecs = _kernels.jacobi_eigh(sym)
    order = np.argsort(w)[::-1]
    w = w[order]
    vecs = vecs[:, order]
    gaps = w[:-1] - w[1:]
    if gaps.min() <= cluster_tol * max(1.0, abs(float(w[0]))):
        raise NonSimpleEigenvalues(
            f"recurrence matrix eigenvalues separated by only {gaps.min():.3e}"
        )
    scaling = np.cumprod(np.concatenate(([1.0], np.sqrt(pre.beta / pre.gamma))))
    uv = np.empty(d + 1)
    for i in range(d + 1):
        q = vecs[:, i]
        right = scaling * q / (scaling[0] * q[0])
        left = (q / scaling) / (q[0] / scaling[0])
        uv[i] = float(left @ right)
    return w, uv


def spectrum_from_preintersection(pre: PreintersectionSet,
                                  drift_tol: float = DRIFT_TOL,
                                  cluster_tol: float = 1e-8) -> Spectrum:
    """Eigen-route: the distinct eigenvalues are those of the recurrence
    matrix; multiplicities are n / <u_i, v_i> over the standard (first
    component 1) left and right eigenvectors, with n = <u_0, v_0>."""
    w, uv = recurrence_eigen_data(pre, cluster_tol=cluster_tol)
    raw = uv[0] / uv
    rounded = np.rint(raw).astype(np.int64)
    drift = float(np.abs(raw - rounded).max())
    if drift > drift_tol:
        raise MultiplicityDrift(f"multiplicity residual {drift:.3e} exceeds {drift_tol}")
    return Spectrum(eigenvalues=w, multiplicities=rounded, raw_multiplicities=raw)


def preintersection_from_spectrum(s: Spectrum) -> PreintersectionSet:
    """Direct route from the spectrum: orthogonalize against the trace
    scalar product and read the projection coefficients
    gamma_i = <x p_{i-1}, p_i> / ||p_i||^2, alpha_i = <x p_i, p_i> / ||p_i||^2,
    beta_i = lambda0 - alpha_i - gamma_i."""
    alpha, beta, gamma, _ = predistance_recurrence(s.eigenvalues, s.weights())
    return PreintersectionSet(alpha=alpha, beta=beta, gamma=gamma, lambda0=s.lambda0)


class MomentClosedForms(NamedTuple):
    """Low-order recurrence coefficients in closed form over c(2)..c(5)."""

    alpha0: float
    beta0: float
    gamma1: float
    alpha1: float
    beta1: float
    gamma2: float
    alpha2: float


def moment_closed_forms(m: WalkMoments, lambda0: float) -> MomentClosedForms:
    """Closed forms of the first recurrence coefficients from walk counts.

    The alpha2 numerator carries +c(3)^3: expanding
    <x r_2, r_2> with r_2 = x^2 - (c3/c2) x - c2 gives
    c2^2 c5 - 2 c2 c3 c4 + c3^3 over c2^2, and the worked nine-vertex
    example (alpha2 = 387/628) confirms the positive sign.
    """
    if m.length < 5:
        raise MomentDeficit("closed forms need moments up to c(5)")
    c = m.c
    gamma1 = c[2] / lambda0
    alpha1 = c[3] / c[2]
    beta1 = lambda0 - alpha1 - gamma1
    denom2 = c[2] * c[4] - c[3] ** 2 - c[2] ** 3
    gamma2 = lambda0 * denom2 / (c[2] * (lambda0 ** 2 * c[2] - c[3] * lambda0 - c[2] ** 2))
    alpha2 = (c[2] ** 2 * c[5] - 2.0 * c[2] * c[3] * c[4] + c[3] ** 3) / (c[2] * denom2)
    return MomentClosedForms(
        alpha0=0.0, beta0=float(lambda0), gamma1=float(gamma1),
        alpha1=float(alpha1), beta1=float(beta1),
        gamma2=float(gamma2), alpha2=float(alpha2),
    )


def _moment_ip(f: np.ndarray, g: np.ndarray, c: np.ndarray) -> float:
    conv = np.convolve(f, g)
    return float(conv @ c[: conv.size])


def preintersection_from_moments(m: WalkMoments, d: int,
                                 lambda0: float | None = None) -> PreintersectionSet:
    """Recurrence coefficients from walk counts alone.

    Runs Gram-Schmidt in the moment functional, where every inner product
    <f, g> expands to sum_{a,b} f_a g_b c(a+b), then reads off the projection
    ratios. When lambda0 is not supplied it is recovered as the largest
    eigenvalue of the moment data's own Jacobi matrix.

    Precision decays with d: the moments compress the low end of the
    spectrum under lambda0^l, so residual norms shrink and an
    InstabilityWarning is emitted once they cross 1e-10.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    if m.length < 2 * d + 1:
        raise MomentDeficit(
            f"need moments up to c({2 * d + 1}), have up to c({m.length})"
        )
    c = m.c
    monic = [np.array([1.0])]
    monic_norm2 = [_moment_ip(monic[0], monic[0], c)]
    a_diag = np.empty(d + 1)
    for i in range(d):
        a_diag[i] = _moment_ip(np.concatenate(([0.0], monic[i])), monic[i], c) / monic_norm2[i]
        t = np.concatenate(([0.0], monic[i]))
        t[: i + 1] -= a_diag[i] * monic[i]
        if i >= 1:
            t[: i] -= (monic_norm2[i] / monic_norm2[i - 1]) * monic[i - 1]
        for _pass in range(2):
            for pj, nj in zip(monic, monic_norm2):
                t[: pj.size] -= (_moment_ip(t, pj, c) / nj) * pj
        norm2 = _moment_ip(t, t, c)
        if norm2 <= 0.0:
            raise DegenerateSpectrum(
                f"moment Gram matrix lost positivity at degree {i + 1}; "
                "float64 moments cannot support this order"
            )
        if norm2 < MOMENT_RESIDUAL_WARN:
            warnings.warn(
                f"moment residual norm^2 = {norm2:.3e} at degree {i + 1}; "
                "results are losing precision",
                InstabilityWarning,
                stacklevel=2,
            )
        monic.append(t)
        monic_norm2.append(norm2)
    a_diag[d] = _moment_ip(np.concatenate(([0.0], monic[d])), monic[d], c) / monic_norm2[d]
    b_off = np.sqrt(np.array(monic_norm2[1:]) / np.array(monic_norm2[:-1]))
    if lambda0 is None:
        jac = np.diag(a_diag) + np.diag(b_off, 1) + np.diag(b_off, -1)
        w, _ = _kernels.jacobi_eigh(jac)
        lambda0 = float(w[-1])
    # predistance normalization: evaluate each monic polynomial at lambda0
    val0 = np.array([float(npp.polyval(lambda0, p)) for p in monic])
    if (val0 <= 0.0).any():
        raise DegenerateSpectrum("a polynomial value at lambda0 is not positive")
    polys = [p * (v / nrm) for p, v, nrm in zip(monic, val0, monic_norm2)]
    norms = np.array([_moment_ip(p, p, c) for p in polys])
    alpha = np.empty(d + 1)
    gamma = np.empty(d)
    for i in range(d + 1):
        xp = np.concatenate(([0.0], polys[i]))
        alpha[i] = _moment_ip(xp, polys[i], c) / norms[i]
        if i >= 1:
            gamma[i - 1] = _moment_ip(np.concatenate(([0.0], polys[i - 1])), polys[i], c) / norms[i]
    beta = lambda0 - alpha[:d] - np.concatenate(([0.0], gamma[: d - 1]))
    tail = lambda0 - alpha[d] - gamma[d - 1]
    if abs(tail) > 1e-6 * (1.0 + abs(lambda0)):
        raise MomentDeficit(
            f"the walk counts extend past degree {d} (implied beta_{d} = {tail:.6g}); "
            f"pass the full number of distinct eigenvalues minus one and moments "
            f"up to c({2 * d + 1})"
        )
    return PreintersectionSet(alpha=alpha, beta=beta, gamma=gamma, lambda0=float(lambda0))


# ---------------------------------------------------------------------------
# round trips

CONVERSIONS: dict[str, tuple[str, str]] = {
    "sp→poly": ("spectrum", "polys"),
    "poly→sp": ("polys", "spectrum"),
    "poly→pre": ("polys", "preintersection"),
    "pre→poly": ("preintersection", "polys"),
    "pre→sp": ("preintersection", "spectrum"),
    "sp→pre": ("spectrum", "preintersection"),
}

_ASCII_ALIASES = {name.replace("→", "->"): name for name in CONVERSIONS}

_KIND_OF_TYPE = {
    Spectrum: "spectrum",
    PolySequence: "polys",
    PreintersectionSet: "preintersection",
}


def normalize_conversion_name(name: str) -> str:
    name = name.strip()
    name = _ASCII_ALIASES.get(name, name)
    if name not in CONVERSIONS:
        raise ValueError(f"unknown conversion {name!r}; expected one of "
                         f"{sorted(CONVERSIONS)} (ASCII '->' accepted)")
    return name


def apply_conversion(name: str, obj):
    name = normalize_conversion_name(name)
    if name == "sp→poly":
        return polys_from_spectrum(obj)
    if name == "poly→sp":
        return spectrum_from_polys(obj)
    if name == "poly→pre":
        return preintersection_from_polys(obj)
    if name == "pre→poly":
        return polys_from_preintersection(obj)
    if name == "pre→sp":
        return spectrum_from_preintersection(obj)
    return preintersection_from_spectrum(obj)


def representation_kind(obj) -> str:
    for tp, kind in _KIND_OF_TYPE.items():
        if isinstance(obj, tp):
            return kind
    raise TypeError(f"not a representation: {type(obj).__name__}")


def _deviation(a, b) -> float:
    """Max scaled deviation between two same-kind representations.

    Arrays are compared entrywise against max(1, magnitude); integer
    multiplicities must match exactly (else the deviation is infinite).
    """
    def arr_dev(x, y):
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        scale = max(1.0, float(np.abs(x).max(initial=0.0)), float(np.abs(y).max(initial=0.0)))
        return float(np.abs(x - y).max(initial=0.0)) / scale

    if isinstance(a, Spectrum):
        if (a.multiplicities != b.multiplicities).any():
            return float("inf")
        return arr_dev(a.eigenvalues, b.eigenvalues)
    if isinstance(a, PolySequence):
        return max(arr_dev(a.omega, b.omega), arr_dev([a.lambda0], [b.lambda0]))
    return max(arr_dev(a.alpha, b.alpha), arr_dev(a.beta, b.beta),
               arr_dev(a.gamma, b.gamma), arr_dev([a.lambda0], [b.lambda0]))


@dataclass(frozen=True)
class RoundtripReport:
    start_kind: str
    path: tuple[str, ...]
    deviation: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tol

    def to_dict(self) -> dict:
        return {
            "start_kind": self.start_kind,
            "path": list(self.path),
            "deviation": self.deviation,
            "tol": self.tol,
            "pass": self.passed,
        }


def roundtrip_check(start, path, tol: float) -> RoundtripReport:
    """Apply the conversions in order and measure how far the final object
    sits from the start. The path must begin at the start's representation
    and cycle back to it. Conversion errors re-raise with the step attached.
    """
    names = tuple(normalize_conversion_name(p) for p in path)
    kind = representation_kind(start)
    if not names:
        raise ValueError("path must contain at least one conversion")
    cursor = kind
    for step, name in enumerate(names):
        src, dst = CONVERSIONS[name]
        if src != cursor:
            raise ValueError(
                f"step {step} ({name}) expects {src!r} but the current "
                f"representation is {cursor!r}"
            )
        cursor = dst
    if cursor != kind:
        raise ValueError(f"path ends at {cursor!r}, not back at {kind!r}")
    obj = start
    for step, name in enumerate(names):
        try:
            obj = apply_conversion(name, obj)
        except SpectraError as exc:
            raise type(exc)(f"at step {step} ({name}): {exc}") from exc
    deviation = _deviation(start, obj)
    logger.debug("roundtrip %s from %s: deviation %.3e", names, kind, deviation)
    return RoundtripReport(start_kind=kind, path=names, deviation=deviation, tol=tol)


def multiplicities_from_excess(ps: PolySequence, eigenvalues: np.ndarray) -> np.ndarray:
    """Alternative multiplicity formula
    m_i = phi_0 p_d(lambda_0) / (phi_i p_d(lambda_i)) with the signed gap
    products phi_i = prod_{j != i} (lambda_i - lambda_j), eigenvalues given
    in descending order starting at lambda0.

    p_d at the radius goes through the stable norm chain; the monomial form
    cannot resolve it once the value has decayed.
    """
    ev = np.asarray(eigenvalues, dtype=np.float64)
    pd_vals = ps.p(ps.d)(ev)
    pd_vals[0] = ps.norms_squared()[ps.d]
    diffs = ev[:, None] - ev[None, :] + np.eye(ev.size)
    phi = diffs.prod(axis=1)
    return phi[0] * pd_vals[0] / (phi * pd_vals)


def walk_moments_for(source, d: int) -> WalkMoments:
    """Moments c(0..2d+1), the minimum the moment route needs."""
    return walk_moments(source, 2 * d + 1)
