from tccmap.cluster.fields import (  # noqa: F401
    FieldOverlap,
    FieldSpec,
    field_overlap,
    field_product_state,
    verify_field_identity,
)
from tccmap.cluster.graph import ClusterGraph, build_cluster_graph  # noqa: F401
from tccmap.cluster.state import (  # noqa: F401
    closed_form_cluster_state,
    cluster_generators,
    cluster_state,
    project_faces,
)
