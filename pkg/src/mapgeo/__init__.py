"""mapgeo: angle-factored planar map geometries and pseudo-planes.

The package makes a family of generalized plane geometries computable: maps
whose vertices carry angle factors (so the angle around a point need not be
2*pi), the m-lines that are straight within faces and turn at non-euclidean
points, and pseudo-planes where a continuous angle field governs which
curves can exist.
"""

from .map_core import (
    EdgeClass,
    PlanarMap,
    PointClass,
    Vertex,
    build_map,
    census,
    classify_edge,
    classify_edge_point,
    classify_vertex,
    dump_map_text,
    has_infinite_noneuclidean,
    parse_map_text,
    remove_faces,
)
from .mline import (
    CrossingEvent,
    LinearAngleFunction,
    TraceClass,
    TraceConfig,
    TraceResult,
    angle_at,
    curvature,
    edge_curvature,
    map_total_curvature,
    predict_class,
    trace_mline,
)
from .polygon import (
    ChainKind,
    MCircleQuery,
    SideChain,
    chain_area,
    exists_1_polygon,
    exists_2_polygon,
    internal_angle_sum,
    mcircle_equation,
    mcircle_exists,
    triangle_area_one_point,
)
from .bundles import (
    Cut,
    cut_from_map,
    exits_parallel,
    is_parallel_bundle,
    linear_bundle_check,
    parallel_to_initial,
    simulate_bundle,
    sufficient_per_edge,
)
from .enumeration import (
    EnumerationReport,
    GenusPolynomial,
    SimpleGraph,
    aut_order,
    betti,
    count_from_map_set,
    enumeration_report,
    genus_distribution,
    n_nonorientable,
    n_nonorientable_boundary,
    n_orientable,
    n_orientable_boundary,
)
from .pseudo_plane import (
    ConstantField,
    FieldClass,
    GridField,
    LiftedField,
    OmegaField,
    Orbit,
    RadialRingField,
    SingularClass,
    SpiralKind,
    Stability,
    check_spiral_condition,
    classify_field,
    classify_point_p,
    classify_singular,
    closed_curve_params,
    cone_check,
    curve_residual,
    detect_omega_discontinuity,
    integrate_ode,
    integrate_slope,
    intermediate_euclidean,
    lift_omega,
    limiting_ring_field,
    omega_from_ode,
    polar_curve_residual,
    straightness_check,
)

__version__ = "0.1.0"
