# provide the API
from ._version import __version__
from .mesh_io import (
    SimplicialMesh,
    SoSOrder,
    Comparison,
    BuiltinField,
    BUILTIN_FIELDS,
    build_builtin,
    load_mesh,
    save_mesh,
    parse_mesh,
    vertex_compare,
    mesh_components,
    boundary_facets,
)
from .reeb import (
    NodeKind,
    Node,
    Arc,
    ArcRef,
    ReebGraph,
    compute_reeb_graph,
    assign_simplices,
    subdivide_arc,
    check_graph,
)
from .classify import (
    InclusionLabel,
    Location,
    Contour,
    extract_contour,
    point_in_contour,
    contours_intersect,
    classify_pair,
    classify_cell,
)
from .complement import (
    Rectangle,
    PartitionCell,
    ComplementGraph,
    common_simplices,
    compute_rectangle,
    compute_complement,
    project_reeb,
    glue,
)
from .simplify import (
    Measure,
    Mode,
    ImportanceMeasure,
    Cancellation,
    simplify_graph,
    simplify_complement,
)
from .oracle import (
    Relation,
    SamplePlan,
    contours_at,
    pair_relation,
    empirical_cells,
    check_agreement,
)
from .cli import RunConfig, compute_graphs, run

from .exceptions import (
    ReebComplementException,
    ParseError,
    ValidationError,
    ConfigError,
    NonGenericValue,
    OutsideArc,
    ZeroArea,
    OpenContour,
    UnsupportedDimension,
    IntersectingContours,
    ComputationError,
    INTERNAL_ERRORS,
    raise_for,
    MeshStateError,
)
