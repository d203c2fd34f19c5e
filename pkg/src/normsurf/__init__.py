"""Normal surface theory on triangulated 3-manifolds.

Matching equations, fundamental (Hilbert basis) surface enumeration,
surface topology reports, complement regions, integer homology, normal
curves on triangulated surfaces, and split-link / unknottedness
decision procedures.
"""

from .curves2d import (
    CurveReport,
    SurfaceTriangulation,
    analyze_curve,
    build_matching_system_2d,
    connect_boundary_points,
    parse_surface,
    serialize_surface,
    validate_surface,
)
from .detect import (
    Verdict,
    boundary_meeting_variables,
    filter_unknotting_disks,
    split_link_check,
    unknot_via_pushoff,
)
from .errors import (
    HomologyError,
    NormSurfError,
    ResourceLimitExceeded,
    TriangulationError,
    VectorError,
)
from .hilbert import (
    FundamentalSet,
    brute_force_solutions,
    enumerate_fundamental,
    filter_admissible,
)
from .homology import (
    ChainComplex,
    H1Class,
    H1Summary,
    chain_complex,
    cycle_chain,
    edge_cycle_class,
    h1,
    verify_zero_pushoff,
)
from .matching import (
    MatchingSystem,
    NormalVector,
    all_triangles_vector,
    build_matching_system,
    haken_sum,
    is_admissible,
    is_solution,
    restrict_to_link,
    tet_block,
    variable_name,
    vertex_link_vector,
    zero_vector,
)
from .surface import (
    RegionGraph,
    SurfaceReport,
    analyze,
    complement_regions,
    separates,
)
from .triangulation import (
    EdgeCycle,
    IdealVertex,
    LinkSpec,
    Skeleton,
    Triangulation,
    compute_skeleton,
    parse_cycle,
    parse_link,
    parse_link_component,
    parse_triangulation,
    resolve_link,
    serialize_cycle,
    serialize_link,
    serialize_link_component,
    serialize_triangulation,
    validate,
)

__all__ = [
    "ChainComplex",
    "CurveReport",
    "EdgeCycle",
    "FundamentalSet",
    "H1Class",
    "H1Summary",
    "HomologyError",
    "IdealVertex",
    "LinkSpec",
    "MatchingSystem",
    "NormSurfError",
    "NormalVector",
    "RegionGraph",
    "ResourceLimitExceeded",
    "Skeleton",
    "SurfaceReport",
    "SurfaceTriangulation",
    "Triangulation",
    "TriangulationError",
    "VectorError",
    "Verdict",
    "all_triangles_vector",
    "analyze",
    "analyze_curve",
    "boundary_meeting_variables",
    "brute_force_solutions",
    "build_matching_system",
    "build_matching_system_2d",
    "chain_complex",
    "complement_regions",
    "compute_skeleton",
    "connect_boundary_points",
    "cycle_chain",
    "edge_cycle_class",
    "enumerate_fundamental",
    "filter_admissible",
    "filter_unknotting_disks",
    "h1",
    "haken_sum",
    "is_admissible",
    "is_solution",
    "parse_cycle",
    "parse_link",
    "parse_link_component",
    "parse_surface",
    "parse_triangulation",
    "resolve_link",
    "restrict_to_link",
    "separates",
    "serialize_cycle",
    "serialize_link",
    "serialize_link_component",
    "serialize_surface",
    "serialize_triangulation",
    "split_link_check",
    "tet_block",
    "unknot_via_pushoff",
    "validate",
    "validate_surface",
    "variable_name",
    "verify_zero_pushoff",
    "vertex_link_vector",
    "zero_vector",
]
