"""neardist: separated point sets, nearly-equal distance counts, and the
extremal bounds they attain.

Generators for the stacked, product, simplex-sum and clustered
configurations; optimal k-window coverage of distance multisets; Turán
number arithmetic; and verifiers/certificates for few-distance
structure.
"""

from .errors import (
    BudgetError,
    CertificateError,
    InputError,
    ParseError,
    UnsupportedError,
)
from .geometry import (
    DEFAULT_REL_TOL,
    DistanceMultiset,
    PointSet,
    distance,
    distance_multiset,
    duplicate_pairs,
    embed_hyperplane,
    is_separated,
    max_min_ratio,
    min_separation,
)
from .constructions import (
    MdkResult,
    MdkWitness,
    ScaleCascade,
    arithmetic_progression,
    binomial_simplex_set,
    clustered_turan_set,
    columns_set,
    default_eps1,
    eps1_max,
    generate_construction,
    iter_witnesses,
    known_two_distance_set,
    maximize_m,
    product_set,
    regular_simplex,
    simplex_sum_set,
    stacked_set,
)
from .spectrum import (
    BestWindows,
    IntervalFamily,
    SpectrumReport,
    best_k_windows,
    best_windows_over_values,
    count_pairs_in_family,
    spectrum_report,
    turan_number,
)
from .verification import (
    DecompositionNode,
    DistanceClusters,
    KDistanceResult,
    MdBounds,
    WeakCover,
    certify_decomposition,
    check_schuette,
    cluster_distances,
    md_table,
    minimal_window_cover,
    schuette_bound,
    verify_k_distance_set,
    verify_weak_eps_k,
)
from .pointio import (
    emit_pointset,
    format_pointset,
    parse_pointset,
    parse_pointset_text,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "CertificateError",
    "InputError",
    "ParseError",
    "UnsupportedError",
    "DEFAULT_REL_TOL",
    "DistanceMultiset",
    "PointSet",
    "distance",
    "distance_multiset",
    "duplicate_pairs",
    "embed_hyperplane",
    "is_separated",
    "max_min_ratio",
    "min_separation",
    "MdkResult",
    "MdkWitness",
    "ScaleCascade",
    "arithmetic_progression",
    "binomial_simplex_set",
    "clustered_turan_set",
    "columns_set",
    "default_eps1",
    "eps1_max",
    "generate_construction",
    "iter_witnesses",
    "known_two_distance_set",
    "maximize_m",
    "product_set",
    "regular_simplex",
    "simplex_sum_set",
    "stacked_set",
    "BestWindows",
    "IntervalFamily",
    "SpectrumReport",
    "best_k_windows",
    "best_windows_over_values",
    "count_pairs_in_family",
    "spectrum_report",
    "turan_number",
    "DecompositionNode",
    "DistanceClusters",
    "KDistanceResult",
    "MdBounds",
    "WeakCover",
    "certify_decomposition",
    "check_schuette",
    "cluster_distances",
    "md_table",
    "minimal_window_cover",
    "schuette_bound",
    "verify_k_distance_set",
    "verify_weak_eps_k",
    "emit_pointset",
    "format_pointset",
    "parse_pointset",
    "parse_pointset_text",
]
