"""Dense hermitian diagonalization and flux-qubit spectral diagnostics.

Eigenvectors are phase-fixed so that the largest-magnitude amplitude is
real and positive (ties broken by lowest basis index), which makes the
extracted current states reproducible across runs and platforms.

The counterpropagating current states of the flux qubit are extracted
two ways:

* ``current_states_2d`` diagonalizes the current operator inside the
  two-dimensional subspace of the ground and first excited states.
* ``current_states_filter`` expands the ground state over the
  full-space current eigenbasis and keeps the positive- and
  negative-current contributions separately.

Both label the positive-current member as ``plus``.  Weight sitting on
(numerically) zero current eigenvalues is excluded from both filter
projections, renormalized away, and reported as ``zero_weight``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import OccupationBasis, StateVector, charge_basis, ensure_same_basis
from .errors import (
    ContractError,
    DegenerateCurrentError,
    InsufficientWeightError,
    ParameterError,
)
from .operators import FluxQubitParams, LinearOperator, flux_qubit_hamiltonian

ZERO_CURRENT_TOL = 1e-9
DEGENERATE_CURRENT_TOL = 1e-10
DEFAULT_WEIGHT_FLOOR = 1e-6


def _phase_fixed(column: np.ndarray) -> np.ndarray:
    """Rotate a unit vector so its largest-magnitude entry is real positive."""
    k = int(np.argmax(np.abs(column)))
    z = column[k]
    mag = abs(z)
    if mag == 0.0:
        return column
    return column * (np.conj(z) / mag)


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Ascending eigenvalues and phase-fixed orthonormal eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: tuple[StateVector, ...]

    def __post_init__(self) -> None:
        vals = np.array(self.eigenvalues, dtype=np.float64, copy=True)
        vals.setflags(write=False)
        object.__setattr__(self, "eigenvalues", vals)

    @property
    def basis(self) -> OccupationBasis:
        return self.eigenvectors[0].basis

    def vector_matrix(self) -> np.ndarray:
        """Eigenvectors as columns of a dense matrix."""
        return np.column_stack([v.amplitudes for v in self.eigenvectors])


def eig_hermitian(op: LinearOperator) -> EigenDecomposition:
    """Full dense decomposition of a hermitian operator."""
    if not op.hermitian:
        raise ContractError("eig_hermitian requires the hermitian flag")
    eigenvalues, vectors = np.linalg.eigh(op.to_dense())
    states = tuple(
        StateVector(op.basis, _phase_fixed(vectors[:, k]))
        for k in range(vectors.shape[1])
    )
    return EigenDecomposition(eigenvalues, states)


@dataclass(frozen=True, eq=False)
class CurrentStatePair:
    """Counterpropagating current states and their current magnitude.

    ``zero_weight`` is the ground-state weight on zero-current
    eigenvalues that the filter extraction excluded (always 0 for the
    two-level extraction).
    """

    plus: StateVector
    minus: StateVector
    current: float
    zero_weight: float = 0.0


def current_states_2d(
    eig: EigenDecomposition, current_op: LinearOperator
) -> CurrentStatePair:
    """Diagonalize the current operator in the ground/first-excited subspace."""
    if len(eig.eigenvectors) < 2:
        raise ContractError("need at least two eigenvectors")
    ensure_same_basis(eig.basis, current_op.basis, "decomposition and current operator")
    v0 = eig.eigenvectors[0].amplitudes
    v1 = eig.eigenvectors[1].amplitudes
    i01 = complex(np.vdot(v0, current_op.matrix @ v1))
    projected = np.array(
        [
            [np.vdot(v0, current_op.matrix @ v0).real, i01],
            [np.conj(i01), np.vdot(v1, current_op.matrix @ v1).real],
        ],
        dtype=np.complex128,
    )
    w, u = np.linalg.eigh(projected)
    if w[1] < DEGENERATE_CURRENT_TOL or -w[0] < DEGENERATE_CURRENT_TOL:
        raise DegenerateCurrentError(
            f"projected current eigenvalues {w[0]:.3e}, {w[1]:.3e} do not "
            "resolve a counterpropagating pair"
        )
    plus = StateVector(eig.basis, _phase_fixed(u[0, 1] * v0 + u[1, 1] * v1))
    minus = StateVector(eig.basis, _phase_fixed(u[0, 0] * v0 + u[1, 0] * v1))
    return CurrentStatePair(plus, minus, current=float(w[1]))


def current_states_filter(
    ground: StateVector,
    current_op: LinearOperator,
    weight_floor: float = DEFAULT_WEIGHT_FLOOR,
) -> CurrentStatePair:
    """Split the ground state by the sign of the current eigenvalue.

    The ground state is expanded in the full-space eigenbasis of the
    current operator; the contributions with positive and negative
    eigenvalues are kept separately and renormalized.
    """
    if not ground.is_normalized(1e-12):
        raise ContractError("ground state must be normalized")
    ensure_same_basis(ground.basis, current_op.basis, "state and current operator")
    eig = eig_hermitian(current_op)
    vectors = eig.vector_matrix()
    coeffs = vectors.conj().T @ ground.amplitudes
    weights = np.abs(coeffs) ** 2
    positive = eig.eigenvalues > ZERO_CURRENT_TOL
    negative = eig.eigenvalues < -ZERO_CURRENT_TOL
    w_pos = float(weights[positive].sum())
    w_neg = float(weights[negative].sum())
    if w_pos < weight_floor or w_neg < weight_floor:
        raise InsufficientWeightError(
            f"current-sign weights {w_pos:.3e} / {w_neg:.3e} below "
            f"floor {weight_floor:g}"
        )
    plus_amp = (vectors[:, positive] @ coeffs[positive]) / np.sqrt(w_pos)
    minus_amp = (vectors[:, negative] @ coeffs[negative]) / np.sqrt(w_neg)
    current = float((eig.eigenvalues[positive] * weights[positive]).sum() / w_pos)
    zero_weight = max(0.0, 1.0 - w_pos - w_neg)
    return CurrentStatePair(
        StateVector(ground.basis, _phase_fixed(plus_amp)),
        StateVector(ground.basis, _phase_fixed(minus_amp)),
        current=current,
        zero_weight=zero_weight,
    )


def charge_fluctuation(
    state: StateVector, basis: OccupationBasis | None = None
) -> float:
    """RMS occupation fluctuation averaged over the modes.

    Returns sqrt( (1/n_modes) * sum_j Var(n_j) ) in the given state.
    """
    if basis is not None:
        ensure_same_basis(state.basis, basis, "state and basis")
    if not state.is_normalized(1e-12):
        raise ContractError("state must be normalized")
    occupations = state.basis.occupation_array().astype(np.float64)
    prob = np.abs(state.amplitudes) ** 2
    means = prob @ occupations
    seconds = prob @ occupations**2
    variances = np.clip(seconds - means**2, 0.0, None)
    return float(np.sqrt(variances.mean()))


def current_distribution(
    state: StateVector, current_op: LinearOperator
) -> list[tuple[float, float]]:
    """Weights of the state over current eigenspaces.

    Eigenvalues within ZERO_CURRENT_TOL of each other are merged into a
    single eigenspace (the current operator carries exact
    symmetry-induced degeneracies); weights sum to one.
    """
    if not state.is_normalized(1e-12):
        raise ContractError("state must be normalized")
    ensure_same_basis(state.basis, current_op.basis, "state and current operator")
    eig = eig_hermitian(current_op)
    coeffs = eig.vector_matrix().conj().T @ state.amplitudes
    weights = np.abs(coeffs) ** 2
    result: list[tuple[float, float]] = []
    group_values: list[float] = []
    group_weight = 0.0
    for value, weight in zip(eig.eigenvalues, weights):
        if group_values and value - group_values[-1] > ZERO_CURRENT_TOL:
            result.append((float(np.mean(group_values)), group_weight))
            group_values, group_weight = [], 0.0
        group_values.append(float(value))
        group_weight += float(weight)
    if group_values:
        result.append((float(np.mean(group_values)), group_weight))
    return result


def spectrum_vs_frustration(
    ej_over_ec: float,
    alpha: float,
    delta_n: int,
    f_grid,
    k_levels: int = 5,
) -> np.ndarray:
    """Lowest k eigenvalues (E_J units) for every frustration in the grid.

    Returns an array of shape (len(f_grid), 1 + k_levels) whose first
    column is the frustration.
    """
    f_values = list(f_grid)
    if not f_values:
        raise ParameterError("f_grid must not be empty")
    if k_levels < 1:
        raise ParameterError(f"k_levels must be >= 1, got {k_levels}")
    basis = charge_basis(delta_n)
    if k_levels > len(basis):
        raise ParameterError(
            f"k_levels = {k_levels} exceeds basis size {len(basis)}"
        )
    table = np.empty((len(f_values), 1 + k_levels), dtype=np.float64)
    for row, f in enumerate(f_values):
        params = FluxQubitParams(ej_over_ec, alpha, float(f), delta_n)
        h = flux_qubit_hamiltonian(params, basis)
        energies = np.linalg.eigvalsh(h.to_dense())
        table[row, 0] = f
        table[row, 1:] = energies[:k_levels]
    return table
