"""Combinatorial and numerical calculus of log-orbi curves.

Exact signature arithmetic, orbifold group presentations and coset
enumeration, parahoric filtration algebra, the canonical PSL2 local-type
system, hypergeometric monodromy of hyperbolic triangle orbifolds, and the
refinement poset of orbifold models over a fixed coarse curve.
"""

from .signatures import (
    Sector,
    Signature,
    canonical_degree,
    classify_sector,
    euler_char,
    is_hyperbolic,
    kappa,
)
from .presentations import OrbiPresentation, presentation
from .coset_enum import (
    CosetTable,
    coset_enumerate,
    low_index_subgroups,
    standardize_table,
)
from .covers import SubgroupRecord, induced_signature
from .parahoric import (
    FilteredSpace,
    LocalType,
    ParahoricBundleData,
    ResidueDatum,
    classify_residue,
    filt_dual,
    filt_hom,
    filt_sum,
    filt_tensor,
    gl_type,
    model_filtration,
    mp_grading,
    normalize_window,
    pdeg,
    psl2_type,
    pullback_pdeg,
    pullback_residue,
    pullback_type,
    pushout_sl2_to_psl2,
    residue_from_type,
    sl2_type,
)
from .canonical import (
    CanonicalTypeSystem,
    MaximalityReport,
    canonical_type_system,
    maximality_certificate,
)
from .hypergeometric import (
    TriangleData,
    TriangleMonodromyReport,
    eigenvalue_oracle,
    hyperbolic_triples,
    hypergeometric_monodromy,
    triangle_data,
)
from .orbposet import (
    OrbifoldModel,
    RamifiedCoverData,
    common_refinement,
    enumerate_models,
    hyperbolic_prosystem_edges,
    refines,
    resolve_ramification,
)

__version__ = "0.1.0"

__all__ = [
    "Sector",
    "Signature",
    "canonical_degree",
    "classify_sector",
    "euler_char",
    "is_hyperbolic",
    "kappa",
    "OrbiPresentation",
    "presentation",
    "CosetTable",
    "coset_enumerate",
    "low_index_subgroups",
    "standardize_table",
    "SubgroupRecord",
    "induced_signature",
    "FilteredSpace",
    "LocalType",
    "ParahoricBundleData",
    "ResidueDatum",
    "classify_residue",
    "filt_dual",
    "filt_hom",
    "filt_sum",
    "filt_tensor",
    "gl_type",
    "model_filtration",
    "mp_grading",
    "normalize_window",
    "pdeg",
    "psl2_type",
    "pullback_pdeg",
    "pullback_residue",
    "pullback_type",
    "pushout_sl2_to_psl2",
    "residue_from_type",
    "sl2_type",
    "CanonicalTypeSystem",
    "MaximalityReport",
    "canonical_type_system",
    "maximality_certificate",
    "TriangleData",
    "TriangleMonodromyReport",
    "eigenvalue_oracle",
    "hyperbolic_triples",
    "hypergeometric_monodromy",
    "triangle_data",
    "OrbifoldModel",
    "RamifiedCoverData",
    "common_refinement",
    "enumerate_models",
    "hyperbolic_prosystem_edges",
    "refines",
    "resolve_ramification",
    "__version__",
]
