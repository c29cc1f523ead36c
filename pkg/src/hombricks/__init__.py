"""Exact computations with bricks, semibricks and Hom-orthogonal sets over bound quiver algebras."""

__version__ = "0.1.0"

from ._kernels import BACKEND as KERNEL_BACKEND
from .algebra import Arrow, BoundQuiverAlgebra, Path, Quiver, Relation, injective, monomial_basis, multiply, projective, simple
from .bricks import (
    HomBasis,
    SemibrickCertificate,
    automorphism_count,
    end_dim,
    extract_brick,
    extract_semibrick,
    hom_basis,
    hom_dim,
    is_brick,
    is_hom_orthogonal,
    is_indecomposable,
    is_isomorphic,
    is_semibrick,
    iso_test,
)
from .census import (
    BBTReport,
    CensusResult,
    ClassInfo,
    FamilyResult,
    OrthogonalityGraph,
    bbt_witness,
    brick_census,
    enumerate_reps,
    greedy_orthogonal_family,
    hom_table,
    orthogonality_graph,
)
from .errors import (
    AlgebraMismatch,
    CapExceeded,
    HombricksError,
    MalformedCertificate,
    NonSplitEndomorphisms,
    NotABrick,
    NotAdmissible,
    NotHereditary,
    NotHomogeneous,
    NotHomOrthogonal,
    ParseError,
    RationalFieldUnsupported,
    ShapeError,
    TooManyVertices,
    ZeroModule,
)
from .fileio import fixture, fixture_path, load_algebra, load_rep, parse_algebra, parse_maps, parse_rep
from .homology import (
    ext1_dim,
    is_tau_rigid,
    minimal_presentation,
    projective_cover,
    projective_dimension,
    syzygy,
    tau,
    theta_of,
)
from .linalg import GF, QQ, Field, inverse, kernel_basis, rank, rref, solve_linear
from .representation import ModuleMap, Representation, change_basis, direct_sum, module_map, validate_rep
from .stability import (
    ZwaraCertificate,
    coray_theta,
    generic_param_estimate,
    geometry_report,
    homogeneous_stability_witness,
    is_theta_stable,
    orbit_dim,
    submodule_dim_vectors,
    tangent_dim,
    zwara_check,
    zwara_verify,
)

__all__ = [
    "__version__",
    "AlgebraMismatch",
    "Arrow",
    "automorphism_count",
    "bbt_witness",
    "BBTReport",
    "BoundQuiverAlgebra",
    "brick_census",
    "CapExceeded",
    "CensusResult",
    "change_basis",
    "ClassInfo",
    "coray_theta",
    "direct_sum",
    "end_dim",
    "enumerate_reps",
    "ext1_dim",
    "extract_brick",
    "extract_semibrick",
    "FamilyResult",
    "Field",
    "fixture",
    "fixture_path",
    "generic_param_estimate",
    "geometry_report",
    "GF",
    "greedy_orthogonal_family",
    "hom_basis",
    "hom_dim",
    "hom_table",
    "HomBasis",
    "HombricksError",
    "homogeneous_stability_witness",
    "injective",
    "inverse",
    "is_brick",
    "is_hom_orthogonal",
    "is_indecomposable",
    "is_isomorphic",
    "is_semibrick",
    "is_tau_rigid",
    "is_theta_stable",
    "iso_test",
    "KERNEL_BACKEND",
    "kernel_basis",
    "load_algebra",
    "load_rep",
    "MalformedCertificate",
    "minimal_presentation",
    "module_map",
    "ModuleMap",
    "monomial_basis",
    "multiply",
    "NonSplitEndomorphisms",
    "NotABrick",
    "NotAdmissible",
    "NotHereditary",
    "NotHomogeneous",
    "NotHomOrthogonal",
    "orbit_dim",
    "orthogonality_graph",
    "OrthogonalityGraph",
    "parse_algebra",
    "parse_maps",
    "parse_rep",
    "ParseError",
    "Path",
    "projective",
    "projective_cover",
    "projective_dimension",
    "QQ",
    "Quiver",
    "rank",
    "RationalFieldUnsupported",
    "Relation",
    "Representation",
    "rref",
    "SemibrickCertificate",
    "ShapeError",
    "simple",
    "solve_linear",
    "submodule_dim_vectors",
    "syzygy",
    "tangent_dim",
    "tau",
    "theta_of",
    "TooManyVertices",
    "validate_rep",
    "ZeroModule",
    "zwara_check",
    "zwara_verify",
    "ZwaraCertificate",
]
