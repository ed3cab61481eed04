"""Preintersection numbers: coefficient formulas, matrix identity, tensor."""
from __future__ import annotations

import numpy as np
import pytest

from conftest import (
    GOLDEN_ALPHA,
    GOLDEN_BETA,
    GOLDEN_GAMMA,
    complete,
    cycle,
    fr,
    intersection_array_oracle,
    petersen,
    random_graph_corpus,
    rel_err,
)
from spectra import (
    PolySequence,
    PreintersectionSet,
    RecurrenceMatrix,
    ZeroLeadingCoeff,
    leading_coeffs_from_preintersection,
    polys_from_spectrum,
    preintersection_from_polys,
    recurrence_from_omega,
    spectral_excess,
    spectrum_of_graph,
    xi_from_spectrum,
)


def _golden_pre(golden_spectrum):
    return preintersection_from_polys(polys_from_spectrum(golden_spectrum))


def test_golden_preintersection_values(golden_spectrum):
    pre = _golden_pre(golden_spectrum)
    assert rel_err(pre.gamma, fr(GOLDEN_GAMMA)) <= 1e-9
    assert rel_err(pre.beta, fr(GOLDEN_BETA)) <= 1e-9
    assert rel_err(pre.alpha[1:], fr(GOLDEN_ALPHA[1:])) <= 1e-9
    assert abs(pre.alpha[0]) <= 1e-12
    assert pre.lambda0 == pytest.approx(3.0, rel=1e-12)


def test_golden_matrix_route_rows(golden_spectrum):
    ps = polys_from_spectrum(golden_spectrum)
    R = recurrence_from_omega(ps).matrix
    row0 = [0.0, 8 / 9, 0.0, 0.0, 0.0]
    row1 = [3.0, 1 / 4, 471 / 268, 0.0, 0.0]
    assert R[0] == pytest.approx(row0, abs=1e-10)
    assert R[1] == pytest.approx(row1, abs=1e-9)


def test_matrix_route_agrees_with_formulas(golden_spectrum):
    ps = polys_from_spectrum(golden_spectrum)
    pre = preintersection_from_polys(ps)
    R = recurrence_from_omega(ps)
    assert np.abs(R.matrix - pre.to_matrix().matrix).max() <= 1e-8


def test_k2_recurrence_matrix():
    s = spectrum_of_graph(complete(2))
    ps = polys_from_spectrum(s)
    R = recurrence_from_omega(ps)
    assert np.abs(R.matrix - np.array([[0.0, 1.0], [1.0, 0.0]])).max() <= 1e-12


def test_k3_preintersection_by_hand():
    pre = preintersection_from_polys(polys_from_spectrum(spectrum_of_graph(complete(3))))
    assert pre.alpha == pytest.approx([0.0, 1.0], abs=1e-12)
    assert pre.beta == pytest.approx([2.0], abs=1e-12)
    assert pre.gamma == pytest.approx([1.0], abs=1e-12)


def test_petersen_matches_intersection_array_oracle():
    g = petersen()
    arr = intersection_array_oracle(g)
    assert arr is not None, "Petersen is distance-regular"
    a, b, c = arr
    pre = preintersection_from_polys(polys_from_spectrum(spectrum_of_graph(g)))
    assert pre.alpha == pytest.approx(a, abs=1e-9)
    assert pre.beta == pytest.approx(b[:-1], abs=1e-9)
    assert pre.gamma == pytest.approx(c[1:], abs=1e-9)
    assert pre.alpha == pytest.approx([0.0, 0.0, 2.0], abs=1e-9)
    assert pre.beta == pytest.approx([3.0, 2.0], abs=1e-9)
    assert pre.gamma == pytest.approx([1.0, 1.0], abs=1e-9)


def test_recurrence_invariants_on_random_corpus():
    for g in random_graph_corpus(seed=37, count=25):
        s = spectrum_of_graph(g)
        ps = polys_from_spectrum(s)
        pre = preintersection_from_polys(ps)
        lam0 = pre.lambda0
        tol = 1e-8 * (1.0 + abs(lam0))
        assert np.abs(pre.column_sums() - lam0).max() <= tol
        # balance identity between consecutive norms
        at_l0 = ps.norms_squared()
        lhs = at_l0[:-1] * pre.beta
        rhs = at_l0[1:] * pre.gamma
        assert np.abs(lhs - rhs).max() <= 1e-8 * np.abs(rhs).max()
        # excess as a product ratio
        prod = float(np.prod(pre.beta) / np.prod(pre.gamma))
        assert rel_err(prod, spectral_excess(ps)) <= 1e-8
        # matrix route agrees entrywise
        R = recurrence_from_omega(ps)
        assert np.abs(R.matrix - pre.to_matrix().matrix).max() <= 1e-8 * (1 + abs(lam0))


def test_xi_tensor_golden(golden_spectrum):
    ps = polys_from_spectrum(golden_spectrum)
    pre = preintersection_from_polys(ps)
    xi = xi_from_spectrum(golden_spectrum, ps)
    assert xi.gamma()[1] == pytest.approx(471 / 268, rel=1e-9)
    assert np.abs(xi.alpha() - pre.alpha).max() <= 1e-8
    assert np.abs(xi.beta() - pre.beta).max() <= 1e-8
    assert np.abs(xi.gamma() - pre.gamma).max() <= 1e-8
    # p_0 rows pick out the identity
    identity = xi.xi[:, 0, :]
    assert np.abs(identity - np.eye(5)).max() <= 1e-10


def test_xi_tensor_petersen_triangle_free():
    s = spectrum_of_graph(petersen())
    ps = polys_from_spectrum(s)
    xi = xi_from_spectrum(s, ps)
    assert abs(xi.xi[1, 1, 1]) <= 1e-10
    assert xi.x_scale == pytest.approx(1.0, abs=1e-12)


def test_leading_coeffs_golden(golden_spectrum):
    pre = _golden_pre(golden_spectrum)
    top, second, third = leading_coeffs_from_preintersection(pre)
    assert rel_err(top, [1.0, 9 / 8, 201 / 314, 183 / 646, 1 / 12]) <= 1e-9
    assert second[2] == pytest.approx(-201 / 1256, rel=1e-9)
    ps = polys_from_spectrum(golden_spectrum)
    for i in range(1, 5):
        assert second[i] == pytest.approx(ps.omega[i, i - 1], abs=1e-10)
    for i in range(2, 5):
        assert third[i] == pytest.approx(ps.omega[i, i - 2], abs=1e-10)


def test_leading_coeffs_bipartite_second_vanishes():
    pre = preintersection_from_polys(polys_from_spectrum(spectrum_of_graph(cycle(6))))
    _, second, _ = leading_coeffs_from_preintersection(pre)
    assert np.abs(second).max() <= 1e-10


def test_leading_coeffs_match_omega_on_random_corpus():
    for g in random_graph_corpus(seed=41, count=15):
        ps = polys_from_spectrum(spectrum_of_graph(g))
        pre = preintersection_from_polys(ps)
        top, second, third = leading_coeffs_from_preintersection(pre)
        d = ps.d
        scale = np.abs(ps.omega).max()
        assert np.abs(top - np.diag(ps.omega)).max() <= 1e-9 * scale
        assert np.abs(second[1:] - np.array([ps.omega[i, i - 1] for i in range(1, d + 1)])).max() <= 1e-9 * scale
        if d >= 2:
            assert np.abs(third[2:] - np.array([ps.omega[i, i - 2] for i in range(2, d + 1)])).max() <= 1e-9 * scale


def test_zero_leading_coeff_guard():
    omega = np.array([[1.0, 0.0], [0.0, 1e-13]])
    ps = PolySequence(omega=omega, lambda0=1.0)
    with pytest.raises(ZeroLeadingCoeff):
        preintersection_from_polys(ps)


def test_preintersection_set_validation():
    with pytest.raises(ValueError):
        PreintersectionSet(alpha=[0.0, 1.0], beta=[2.0], gamma=[-1.0], lambda0=2.0)
    with pytest.raises(ValueError):
        PreintersectionSet(alpha=[0.0, 1.0], beta=[-2.0], gamma=[1.0], lambda0=-1.0)
    with pytest.raises(ValueError):  # column sums off
        PreintersectionSet(alpha=[0.0, 0.0], beta=[2.0], gamma=[0.5], lambda0=2.0)
    with pytest.raises(ValueError):  # alpha_0 nonzero
        PreintersectionSet(alpha=[0.5, 0.0], beta=[1.5], gamma=[2.0], lambda0=2.0)


def test_preintersection_json_roundtrip(golden_spectrum):
    pre = _golden_pre(golden_spectrum)
    again = PreintersectionSet.from_dict(pre.to_dict())
    assert np.abs(again.alpha - pre.alpha).max() == 0.0
    assert np.abs(again.beta - pre.beta).max() == 0.0
    assert np.abs(again.gamma - pre.gamma).max() == 0.0


def test_recurrence_matrix_validation():
    with pytest.raises(ValueError):  # off-band entry
        RecurrenceMatrix(matrix=np.array([[0.0, 1.0, 0.5], [2.0, 0.0, 1.0], [0.0, 1.0, 0.0]]))
    with pytest.raises(ValueError):  # unequal column sums
        RecurrenceMatrix(matrix=np.array([[0.0, 1.0], [2.0, 0.5]]))
    m = RecurrenceMatrix(matrix=np.array([[0.0, 1.0], [1.0, 0.0]]))
    pre = m.to_preintersection()
    assert pre.lambda0 == 1.0
    assert (pre.to_matrix().matrix == m.matrix).all()
