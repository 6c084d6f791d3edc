from tccmap.spinmodel.couplings import CouplingSet, SpinConfig, TriangleChain  # noqa: F401
from tccmap.spinmodel.criticality import (  # noqa: F401
    REFERENCE_CONSTANTS,
    CriticalityReport,
    critical_coupling,
    criticality_scan,
    dual_coupling,
    specific_heat,
    strip_torus_dual,
    transfer_matrix,
    transfer_matrix_free_energy,
    transfer_trace_partition,
)
from tccmap.spinmodel.expansion import chain_expansion_sum, partition_high_t  # noqa: F401
from tccmap.spinmodel.partition import energy, partition_exact  # noqa: F401
from tccmap.spinmodel.symmetry import (  # noqa: F401
    NEGATIVE_PARITY_TAGS,
    POSITIVE_PARITY_TAGS,
    color_flip,
    ground_states,
    parity_tag_config,
)
