"""Distance-regularity criteria and structural predicates."""
from __future__ import annotations

import numpy as np
import pytest

from conftest import (
    complete,
    complete_bipartite,
    cycle,
    girth_oracle,
    odd_girth_oracle,
    path_graph,
    petersen,
    prism,
    random_graph_corpus,
    two_coloring_oracle,
)
from spectra import (
    NegativeAlphaAnomaly,
    NotRegular,
    PatternUnmatched,
    PreintersectionSet,
    RegularityRequired,
    check_bipartite_oddgirth,
    check_bipartite_omega,
    check_gamma_sufficient,
    check_girth_regular,
    check_monic_sufficient,
    check_spectral_excess,
    polys_from_spectrum,
    preintersection_from_polys,
    spectrum_of_graph,
)

DRG_CORPUS = [
    ("petersen", petersen),
    ("C5", lambda: cycle(5)),
    ("C6", lambda: cycle(6)),
    ("C7", lambda: cycle(7)),
    ("C8", lambda: cycle(8)),
    ("K3", lambda: complete(3)),
    ("K4", lambda: complete(4)),
    ("K5", lambda: complete(5)),
    ("K6", lambda: complete(6)),
    ("K33", lambda: complete_bipartite(3, 3)),
]


def _derived(g):
    s = spectrum_of_graph(g)
    ps = polys_from_spectrum(s)
    return ps, preintersection_from_polys(ps)


@pytest.mark.parametrize("name,factory", DRG_CORPUS)
def test_distance_regular_corpus(name, factory):
    report = check_spectral_excess(factory())
    assert report.is_drg, name
    assert report.gap <= 1e-7
    assert report.spectral_excess == pytest.approx(report.average_excess, rel=1e-7)


def test_petersen_report_values(petersen_graph):
    report = check_spectral_excess(petersen_graph)
    assert report.spectral_excess == pytest.approx(6.0, rel=1e-9)
    assert report.average_excess == 6.0
    names = [c.name for c in report.criteria]
    assert "gamma_sufficient" in names and "girth" in names
    payload = report.to_dict()
    assert payload["is_drg"] is True
    assert isinstance(payload["criteria"], list)


def test_prism_is_internally_consistent():
    report = check_spectral_excess(prism())
    # no published verdict; assert only that the report holds together
    assert report.is_drg == (report.gap <= 1e-7)
    assert report.gap == pytest.approx(
        abs(report.spectral_excess - report.average_excess) / report.spectral_excess)
    agreement = [c for c in report.criteria if c.name == "excess_formula_agreement"]
    assert agreement and agreement[0].verdict == "pass"


def test_not_regular_rejected():
    with pytest.raises(NotRegular):
        check_spectral_excess(path_graph(3))


def test_bipartite_verdicts_known_graphs(golden_spectrum):
    _, pre_c6 = _derived(cycle(6))
    assert check_bipartite_oddgirth(pre_c6) == (True, None)
    _, pre_p = _derived(petersen())
    assert check_bipartite_oddgirth(pre_p) == (False, 5)
    _, pre_k3 = _derived(complete(3))
    assert check_bipartite_oddgirth(pre_k3) == (False, 3)
    ps = polys_from_spectrum(golden_spectrum)
    assert check_bipartite_oddgirth(preintersection_from_polys(ps)) == (False, 3)
    assert check_bipartite_omega(ps) == (False, 3)


def test_bipartite_omega_known_graphs():
    ps_c6, _ = _derived(cycle(6))
    assert check_bipartite_omega(ps_c6) == (True, None)
    ps_k2, _ = _derived(complete(2))
    assert check_bipartite_omega(ps_k2) == (True, None)
    ps_p, _ = _derived(petersen())
    assert check_bipartite_omega(ps_p) == (False, 5)


def test_bipartite_routes_agree_and_match_coloring_oracle():
    for g in random_graph_corpus(seed=61, count=30):
        ps, pre = _derived(g)
        via_pre = check_bipartite_oddgirth(pre)
        via_omega = check_bipartite_omega(ps)
        assert via_pre == via_omega
        assert via_pre[0] == two_coloring_oracle(g)
        if not via_pre[0]:
            assert via_pre[1] == odd_girth_oracle(g)


def test_girth_known_graphs():
    cases = [
        (petersen(), 5),
        (cycle(5), 5),
        (cycle(6), 6),
        (cycle(8), 8),
        (complete(3), 3),
        (complete(4), 3),
        (complete_bipartite(3, 3), 4),
    ]
    for g, want in cases:
        _, pre = _derived(g)
        assert check_girth_regular(pre) == want == girth_oracle(g)


def test_girth_indeterminate_for_k2():
    _, pre = _derived(complete(2))
    assert check_girth_regular(pre) is None


def test_girth_requires_regularity(golden_spectrum):
    pre = preintersection_from_polys(polys_from_spectrum(golden_spectrum))
    with pytest.raises(RegularityRequired):
        check_girth_regular(pre)


def test_girth_pattern_unmatched():
    pre = PreintersectionSet(alpha=[0.0, 0.0, 0.0, 0.0], beta=[2.0, 1.0, 1.2],
                             gamma=[1.0, 0.8, 2.0], lambda0=2.0)
    with pytest.raises(PatternUnmatched):
        check_girth_regular(pre)


def test_negative_alpha_anomaly():
    pre = PreintersectionSet(alpha=[0.0, -0.5, 1.0], beta=[2.0, 1.5],
                             gamma=[1.0, 1.0], lambda0=2.0)
    with pytest.raises(NegativeAlphaAnomaly):
        check_bipartite_oddgirth(pre)


def test_gamma_sufficient_verdicts(golden_spectrum):
    _, pre_p = _derived(petersen())
    assert check_gamma_sufficient(pre_p, bipartite=False).startswith("DRG")
    pre_g = preintersection_from_polys(polys_from_spectrum(golden_spectrum))
    assert check_gamma_sufficient(pre_g, bipartite=False) == "inconclusive"
    _, pre_c6 = _derived(cycle(6))
    assert check_gamma_sufficient(pre_c6, bipartite=True).startswith("DRG")


def test_monic_sufficient_verdicts(golden_spectrum):
    ps_p, _ = _derived(petersen())
    assert check_monic_sufficient(ps_p, bipartite=False).startswith("DRG")
    ps_g = polys_from_spectrum(golden_spectrum)
    assert check_monic_sufficient(ps_g, bipartite=False) == "inconclusive"
    ps_k2, _ = _derived(complete(2))
    assert check_monic_sufficient(ps_k2, bipartite=True).startswith("DRG")


def test_gamma_sufficient_implies_spectral_excess_verdict():
    for g in random_graph_corpus(seed=67, count=20):
        if not g.is_regular():
            continue
        ps, pre = _derived(g)
        bip, _ = check_bipartite_oddgirth(pre)
        if check_gamma_sufficient(pre, bip).startswith("DRG"):
            assert check_spectral_excess(g).is_drg
        assert check_gamma_sufficient(pre, bip) == check_monic_sufficient(ps, bip)
