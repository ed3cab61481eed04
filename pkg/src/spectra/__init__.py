"""Spectra, predistance polynomials, and preintersection numbers of
connected graphs, with distance-regularity measures built on them."""

from .errors import (
    ClusterAmbiguity,
    DegenerateSpectrum,
    Disconnected,
    InstabilityWarning,
    InternalInconsistency,
    MomentDeficit,
    MultiplicityDrift,
    NegativeAlphaAnomaly,
    NonRealRoots,
    NonSimpleEigenvalues,
    NoRootAbove,
    NotRegular,
    NotSimple,
    ParseError,
    PatternUnmatched,
    RegularityRequired,
    SingularOmega,
    SpectraError,
    ZeroLeadingCoeff,
)
from .graphs import DistanceProfile, Graph, average_excess, distance_profile, parse_graph
from .spectral import Spectrum, WalkMoments, spectrum_of_graph, walk_moments
from .orthopoly import (
    Poly,
    PolySequence,
    hoffman,
    inner_product,
    polys_from_spectrum,
    spectral_excess,
    spectral_excess_from_spectrum,
)
from .preintersect import (
    PreintersectionSet,
    RecurrenceMatrix,
    XiTensor,
    leading_coeffs_from_preintersection,
    preintersection_from_polys,
    recurrence_from_omega,
    xi_from_spectrum,
)
from .transforms import (
    RoundtripReport,
    lambda0_from_h,
    moment_closed_forms,
    multiplicities_from_excess,
    polys_from_preintersection,
    polys_via_charpoly,
    preintersection_from_moments,
    preintersection_from_spectrum,
    recurrence_eigen_data,
    roundtrip_check,
    spectrum_from_polys,
    spectrum_from_preintersection,
)
from .drg import (
    Criterion,
    DrgReport,
    check_bipartite_oddgirth,
    check_bipartite_omega,
    check_gamma_sufficient,
    check_girth_regular,
    check_monic_sufficient,
    check_spectral_excess,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
