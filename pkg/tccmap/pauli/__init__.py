from tccmap.pauli.operators import PauliOp, commutes, face_operator  # noqa: F401
from tccmap.pauli.stabilizers import (  # noqa: F401
    Role,
    StabilizerSet,
    encoded_qubits,
    stabilizer_set,
)
from tccmap.pauli.stringnets import (  # noqa: F401
    BoundaryGroup,
    FaceChain,
    StringNet,
    boundary,
    boundary_group,
    closed_basis,
    colored_string,
    homology_gap,
    is_boundary,
    is_closed,
)
