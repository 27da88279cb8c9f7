"""Exact simulator and certifier for joint Pauli-product measurements on two singlets."""

from .statevec import (
    QubitPermutation,
    StateVector,
    basis_state,
    inner_product,
    permute_qubits,
    tensor,
)
from .observables import (
    OutcomeDistribution,
    Pauli,
    PauliProduct,
    apply_eigenprojector,
    apply_observable,
    commute,
    expectation,
    joint_outcome_distribution,
)
from .protocol import (
    BellKind,
    PropertyReport,
    bell_measurement,
    bell_state,
    conditional_prob_equal,
    decompose_bell_basis,
    joint_prob_all_four,
    outcome_table,
    prob_equal,
    singlet_state,
    swap_collapse_report,
    two_singlet_state,
    verify_all_properties,
)
from .lhv import (
    Certificate,
    ParityConstraint,
    build_constraints,
    classify_outcome,
    parity_certificate,
    satisfying_assignments,
)
from .sampler import RunRecord, SamplerConfig, empirical_distribution, run

__version__ = "0.1.0"

__all__ = [
    "BellKind",
    "Certificate",
    "OutcomeDistribution",
    "ParityConstraint",
    "Pauli",
    "PauliProduct",
    "PropertyReport",
    "QubitPermutation",
    "RunRecord",
    "SamplerConfig",
    "StateVector",
    "apply_eigenprojector",
    "apply_observable",
    "basis_state",
    "bell_measurement",
    "bell_state",
    "build_constraints",
    "classify_outcome",
    "commute",
    "conditional_prob_equal",
    "decompose_bell_basis",
    "empirical_distribution",
    "expectation",
    "inner_product",
    "joint_outcome_distribution",
    "joint_prob_all_four",
    "outcome_table",
    "parity_certificate",
    "permute_qubits",
    "prob_equal",
    "run",
    "satisfying_assignments",
    "singlet_state",
    "swap_collapse_report",
    "tensor",
    "two_singlet_state",
    "verify_all_properties",
]
