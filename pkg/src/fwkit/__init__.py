"""Average-distance functionals and Fermat-Weber centers of planar convex bodies."""

from .bounds import (
    BoundReport,
    GeneratorSpec,
    constants_report,
    cubic_root_z0,
    generate,
    improved_constants,
    kappa_comparison,
    kappa_crossover,
    maximize_sector_bound,
    run_sweep,
    sector_bound_f,
    verify_bounds,
)
from .errors import (
    AllCollinear,
    DegenerateTriangle,
    EmptyGrid,
    FwkitError,
    InvalidPolygon,
    InvalidSpec,
    NonConvergence,
)
from .geometry import (
    ConvexPolygon,
    Disk,
    HalfPlane,
    Point,
    central_symmetry_center,
    clip,
    convex_hull,
    diameter,
    load_polygon,
    polygon_from_json,
    polygon_to_json,
    save_polygon,
    smallest_enclosing_disk,
)
from .moments import (
    MomentResult,
    mean_distance,
    mean_distance_batch,
    polygon_moment,
    sector_mean_distance,
    segment_mean_distance_ratio,
    triangle_distance_integral,
    union_mean_distance,
)
from .quadrature import QuadratureConfig, integrate_triangle
from .solver import (
    FWResult,
    SED_RATIO_BOUND,
    fw_center_exact,
    fw_center_grid,
    fw_center_sed,
    ratio,
)
from .symmetrization import Axis, double_symmetrize, steiner_symmetrize

__version__ = "0.1.0"
