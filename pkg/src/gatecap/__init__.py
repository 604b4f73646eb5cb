"""Entangling and disentangling power of bipartite unitary gates.

A numerics toolkit around a single phenomenon: the two capacities of a
bipartite gate — how much entanglement it can create and how much it can
remove in one use — are not equal in general.  The package builds the 2×3
trine gate realizing the separation, estimates both capacities by
optimization over ancilla-extended pure states, certifies the separation
through an infeasible orthonormality system, and reproduces the statistics
of Haar-random gates.
"""

from .capacity import (
    CapacityEstimate,
    OptimizerConfig,
    delta_entanglement,
    disentangling_power,
    entangling_power,
    entangling_power_product_ansatz,
    gradient_delta_entanglement,
)
from .certify import (
    ForcedConstraintReport,
    GramResidual,
    TauTriple,
    build_phi_states,
    forced_constraint_check,
    forced_constraint_tau,
    gram_matrix,
    gram_residual,
    infeasibility_search,
    phi2_in,
)
from .entropy import (
    binary_entropy,
    conditional_entropy,
    entanglement,
    renyi2,
    von_neumann,
)
from .gates import (
    BipartiteGate,
    TwoQubitCanonical,
    build_u2x3,
    build_u2x3_dagger_oracle,
    canonical_two_qubit,
    phi1_in,
    swap_gate,
    trine_states,
    u2x3_inverse_vectors,
)
from .haar import (
    MomentReport,
    ScatterRecord,
    canonical_input,
    expected_entanglement_bound,
    haar_gate,
    haar_unitary,
    mean_purity_experiment,
    output_entanglement,
    predicted_mean_purity,
    purity_after_gate,
    scatter_experiment,
    twirl,
)
from .streams import DEFAULT_SEED, derive_seed, keyed_stream
from .tensor import (
    DensityMatrix,
    PureState,
    apply_gate,
    hermitian_eig,
    hermitian_eigvals,
    is_unitary,
    kron,
    maximally_entangled,
    partial_trace,
    product_input,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteGate",
    "CapacityEstimate",
    "DEFAULT_SEED",
    "DensityMatrix",
    "ForcedConstraintReport",
    "GramResidual",
    "MomentReport",
    "OptimizerConfig",
    "PureState",
    "ScatterRecord",
    "TauTriple",
    "TwoQubitCanonical",
    "apply_gate",
    "binary_entropy",
    "build_phi_states",
    "build_u2x3",
    "build_u2x3_dagger_oracle",
    "canonical_input",
    "canonical_two_qubit",
    "conditional_entropy",
    "delta_entanglement",
    "derive_seed",
    "disentangling_power",
    "entangling_power",
    "entangling_power_product_ansatz",
    "entanglement",
    "expected_entanglement_bound",
    "forced_constraint_check",
    "forced_constraint_tau",
    "gradient_delta_entanglement",
    "gram_matrix",
    "gram_residual",
    "haar_gate",
    "haar_unitary",
    "hermitian_eig",
    "hermitian_eigvals",
    "infeasibility_search",
    "is_unitary",
    "keyed_stream",
    "kron",
    "maximally_entangled",
    "mean_purity_experiment",
    "output_entanglement",
    "partial_trace",
    "phi1_in",
    "phi2_in",
    "predicted_mean_purity",
    "product_input",
    "purity_after_gate",
    "renyi2",
    "scatter_experiment",
    "swap_gate",
    "trine_states",
    "twirl",
    "u2x3_inverse_vectors",
    "von_neumann",
]
