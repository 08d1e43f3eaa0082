"""Many-body distance between quantum states, and its flux-qubit application.

The package measures how many single-particle operations separate two
N-particle states: a subspace chain is grown from the start state by
repeated operator application with orthogonal projection, and the
target state's weights over the chain levels form the distance
distribution P(D=d).  The machinery is applied to the counterrotating
current states of a numerically diagonalized three-junction flux qubit.
"""

from .basis import (
    OccupationBasis,
    StateVector,
    basis_state,
    boson_basis,
    charge_basis,
    enumerate_basis,
    fermion_basis,
    inner,
)
from .distance import (
    DistanceDistribution,
    SubspaceChain,
    average_distance,
    decompose,
    distance,
    generate_chain,
)
from .errors import (
    BasisMismatchError,
    CatsizeError,
    ChainOverflowError,
    ConfigLookupError,
    ContractError,
    DegenerateCurrentError,
    InsufficientWeightError,
    ParameterError,
    UnreachableTargetError,
)
from .operators import (
    FluxQubitParams,
    LinearOperator,
    OperatorSet,
    boson_hop,
    charging_hamiltonian,
    current_operator,
    fermion_hop,
    fermion_operator_set,
    flux_qubit_hamiltonian,
    flux_qubit_operator_set,
    identity,
    josephson_hamiltonian,
    number_op,
    pair_hop,
    rotated_two_mode_operator_set,
    two_mode_operator_set,
)
from .oracles import (
    GhzParams,
    asymmetric_pair,
    bec_pair,
    ghz_lambda,
    persistent_current_pair,
)
from .spectra import (
    CurrentStatePair,
    EigenDecomposition,
    charge_fluctuation,
    current_distribution,
    current_states_2d,
    current_states_filter,
    eig_hermitian,
    spectrum_vs_frustration,
)

__version__ = "0.1.0"

__all__ = [
    "OccupationBasis",
    "StateVector",
    "basis_state",
    "boson_basis",
    "charge_basis",
    "enumerate_basis",
    "fermion_basis",
    "inner",
    "DistanceDistribution",
    "SubspaceChain",
    "average_distance",
    "decompose",
    "distance",
    "generate_chain",
    "BasisMismatchError",
    "CatsizeError",
    "ChainOverflowError",
    "ConfigLookupError",
    "ContractError",
    "DegenerateCurrentError",
    "InsufficientWeightError",
    "ParameterError",
    "UnreachableTargetError",
    "FluxQubitParams",
    "LinearOperator",
    "OperatorSet",
    "boson_hop",
    "charging_hamiltonian",
    "current_operator",
    "fermion_hop",
    "fermion_operator_set",
    "flux_qubit_hamiltonian",
    "flux_qubit_operator_set",
    "identity",
    "josephson_hamiltonian",
    "number_op",
    "pair_hop",
    "rotated_two_mode_operator_set",
    "two_mode_operator_set",
    "GhzParams",
    "asymmetric_pair",
    "bec_pair",
    "ghz_lambda",
    "persistent_current_pair",
    "CurrentStatePair",
    "EigenDecomposition",
    "charge_fluctuation",
    "current_distribution",
    "current_states_2d",
    "current_states_filter",
    "eig_hermitian",
    "spectrum_vs_frustration",
]
