from tccmap.correspondence.identity import (  # noqa: F401
    CouplingDictionary,
    OverlapIdentityResult,
    couplings_from_product_state,
    verify_overlap_identity,
)
from tccmap.correspondence.mqc import (  # noqa: F401
    JointDistribution,
    MeasurementBasis,
    OutcomeVector,
    iter_samples,
    mqc_joint,
    mqc_sample,
    partial_measurement_partition,
    sub_dual,
)
