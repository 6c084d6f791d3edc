from tccmap.codestate.overlap import overlap, string_net_overlap  # noqa: F401
from tccmap.codestate.vectors import (  # noqa: F401
    ProductState,
    StateVector,
    apply_pauli,
    code_state,
    hamiltonian_expectation,
)
