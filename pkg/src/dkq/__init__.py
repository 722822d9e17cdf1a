"""D(k,q): algebraically defined bipartite graphs over GF(q).

The library builds the q-regular incidence graphs D(k,q), splits them
into connected components, evaluates the conserved invariant vector,
computes exact girth with certificates, and checks the structural
claims (order, regularity, component counts, girth bounds, the edge
density identity) on concrete instances.
"""

from .builder import (
    DEFAULT_BUDGET,
    DEFAULT_SEED,
    BipartiteGraph,
    BudgetError,
    build,
    decode,
    encode,
    incident,
    line_through,
    point_on,
)
from .components import (
    ComponentLabeling,
    components,
    extract_component,
    invariant_a,
    invariant_table,
    invariant_vector,
    witness_point,
)
from .coords import (
    FIRST,
    LINE,
    POINT,
    Label,
    Vertex,
    b,
    d,
    dp,
    label_of,
    position_of,
    read_coord,
    s,
    t_of,
)
from .cycles import (
    BipartiteCheck,
    GirthResult,
    check_bipartite,
    girth,
    validate_cycle,
)
from .field import FieldSpec, make_field, poly_str
from .graphio import FORMATS, GraphFileError, export_graph, import_graph
from .verify import (
    CheckRecord,
    ExponentRecord,
    VerificationReport,
    extremal_exponent,
    density_identity,
    density_identity_exact,
    gamma_metric,
    instance_summary,
    survey,
    verify_all,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteCheck",
    "BipartiteGraph",
    "BudgetError",
    "CheckRecord",
    "ComponentLabeling",
    "DEFAULT_BUDGET",
    "DEFAULT_SEED",
    "ExponentRecord",
    "FIRST",
    "FORMATS",
    "FieldSpec",
    "GirthResult",
    "GraphFileError",
    "Label",
    "LINE",
    "POINT",
    "VerificationReport",
    "Vertex",
    "b",
    "build",
    "check_bipartite",
    "components",
    "extremal_exponent",
    "d",
    "decode",
    "density_identity",
    "density_identity_exact",
    "dp",
    "encode",
    "export_graph",
    "extract_component",
    "gamma_metric",
    "girth",
    "import_graph",
    "incident",
    "instance_summary",
    "invariant_a",
    "invariant_table",
    "invariant_vector",
    "label_of",
    "line_through",
    "make_field",
    "point_on",
    "position_of",
    "read_coord",
    "s",
    "survey",
    "t_of",
    "validate_cycle",
    "verify_all",
    "witness_point",
    "__version__",
]
