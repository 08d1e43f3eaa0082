"""Sparse second-quantized operators and the three-junction flux qubit.

Conventions used throughout:

* Island and mode indices are 1-based.
* Energies are measured in units of the Josephson coupling (E_J = 1);
  the charging scale enters only through the ratio E_J/E_C with
  E_C = e^2/2C.
* Circulating current is measured in units where 2*pi*E_J/Phi_0 = 1.
* ``pair_hop(basis, i, j)`` moves one Cooper pair from island j to
  island i with matrix element 1.  Images that leave the truncation
  window |n1|, |n2| <= delta_n are dropped, i.e. the operator matrix is
  the truncation of the infinite-window matrix.
* Fermionic sign convention: modes are ordered by index and
  ``fermion_hop(basis, i, j)`` acquires ``(-1)**k`` where ``k`` is the
  number of occupied modes strictly between i and j.  Any consistent
  convention produces the same subspace spans downstream.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from .basis import OccupationBasis, StateVector, charge_basis, ensure_same_basis
from .errors import ParameterError

_HERMITIAN_TOL = 1e-12


def _empty_matrix(n: int) -> sparse.csr_array:
    return sparse.csr_array((n, n), dtype=np.complex128)


def _matrix_from_entries(n, rows, cols, vals) -> sparse.csr_array:
    if not rows:
        return _empty_matrix(n)
    data = np.asarray(vals, dtype=np.complex128)
    return sparse.csr_array((data, (rows, cols)), shape=(n, n))


def _hermiticity_defect(matrix: sparse.csr_array) -> float:
    diff = (matrix - matrix.conj().T).tocoo()
    return float(np.abs(diff.data).max()) if diff.nnz else 0.0


@dataclass(frozen=True, eq=False)
class LinearOperator:
    """Sparse complex matrix over an OccupationBasis."""

    basis: OccupationBasis
    matrix: sparse.csr_array
    hermitian: bool = False

    def __post_init__(self) -> None:
        n = len(self.basis)
        if self.matrix.shape != (n, n):
            raise ParameterError(
                f"matrix shape {self.matrix.shape} does not match basis size {n}"
            )
        if self.hermitian:
            defect = _hermiticity_defect(self.matrix)
            if defect >= _HERMITIAN_TOL:
                raise ParameterError(
                    f"hermitian flag set but max|M - M^dag| = {defect:.3e}"
                )

    @property
    def dim(self) -> int:
        return len(self.basis)

    def apply(self, state: StateVector) -> StateVector:
        ensure_same_basis(self.basis, state.basis, "operator and state")
        return StateVector(self.basis, self.matrix @ state.amplitudes)

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def adjoint(self) -> "LinearOperator":
        return LinearOperator(
            self.basis, self.matrix.conj().T.tocsr(), hermitian=self.hermitian
        )

    def hermiticity_defect(self) -> float:
        return _hermiticity_defect(self.matrix)

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        ensure_same_basis(self.basis, other.basis, "operator sum terms")
        return LinearOperator(
            self.basis,
            (self.matrix + other.matrix).tocsr(),
            hermitian=self.hermitian and other.hermitian,
        )

    def __sub__(self, other: "LinearOperator") -> "LinearOperator":
        return self + (-1.0) * other

    def __mul__(self, scalar) -> "LinearOperator":
        s = complex(scalar)
        keep = self.hermitian and s.imag == 0.0
        return LinearOperator(self.basis, (self.matrix * s).tocsr(), hermitian=keep)

    __rmul__ = __mul__

    def __neg__(self) -> "LinearOperator":
        return (-1.0) * self

    def __matmul__(self, other: "LinearOperator") -> "LinearOperator":
        ensure_same_basis(self.basis, other.basis, "operator product factors")
        return LinearOperator(self.basis, (self.matrix @ other.matrix).tocsr())

    def __repr__(self) -> str:
        return (
            f"LinearOperator({self.basis.flavor}{self.basis.params}, "
            f"nnz={self.matrix.nnz}, hermitian={self.hermitian})"
        )


def identity(basis: OccupationBasis) -> LinearOperator:
    n = len(basis)
    return LinearOperator(basis, sparse.eye_array(n, dtype=np.complex128, format="csr"),
                          hermitian=True)


def _check_mode_pair(basis: OccupationBasis, i: int, j: int) -> None:
    if i == j:
        raise ParameterError(f"hop needs two distinct modes, got i = j = {i}")
    for k in (i, j):
        if not 1 <= k <= basis.n_modes:
            raise ParameterError(
                f"mode index {k} out of range 1..{basis.n_modes}"
            )


def pair_hop(basis: OccupationBasis, i: int, j: int) -> LinearOperator:
    """Cooper-pair hop from island j to island i on the charge basis.

    Matrix element 1 between |.., n_i, .., n_j, ..> and its image with
    n_i + 1, n_j - 1; components whose image leaves the truncation
    window are dropped.
    """
    if basis.flavor != "charge3":
        raise ParameterError(f"pair_hop needs a charge3 basis, got {basis.flavor}")
    _check_mode_pair(basis, i, j)
    rows, cols, vals = [], [], []
    for col, cfg in enumerate(basis.configs):
        target = list(cfg)
        target[i - 1] += 1
        target[j - 1] -= 1
        row = basis.index.get(tuple(target))
        if row is not None:
            rows.append(row)
            cols.append(col)
            vals.append(1.0)
    return LinearOperator(basis, _matrix_from_entries(len(basis), rows, cols, vals))


def number_op(basis: OccupationBasis, j: int) -> LinearOperator:
    """Occupation-number operator of mode j (diagonal, hermitian)."""
    if not 1 <= j <= basis.n_modes:
        raise ParameterError(f"mode index {j} out of range 1..{basis.n_modes}")
    diag = np.array([cfg[j - 1] for cfg in basis.configs], dtype=np.complex128)
    return LinearOperator(
        basis, sparse.csr_array(sparse.diags_array(diag)), hermitian=True
    )


def boson_hop(basis: OccupationBasis, i: int, j: int) -> LinearOperator:
    """Bosonic c_i^dag c_j with ladder amplitudes sqrt((n_i + 1) n_j)."""
    if basis.flavor != "boson2":
        raise ParameterError(f"boson_hop needs a boson2 basis, got {basis.flavor}")
    _check_mode_pair(basis, i, j)
    rows, cols, vals = [], [], []
    for col, cfg in enumerate(basis.configs):
        nj = cfg[j - 1]
        if nj == 0:
            continue
        target = list(cfg)
        target[i - 1] += 1
        target[j - 1] -= 1
        rows.append(basis.index_of(target))
        cols.append(col)
        vals.append(math.sqrt((cfg[i - 1] + 1) * nj))
    return LinearOperator(basis, _matrix_from_entries(len(basis), rows, cols, vals))


def fermion_hop(basis: OccupationBasis, i: int, j: int) -> LinearOperator:
    """Fermionic c_i^dag c_j; zero on Pauli-blocked configurations.

    Sign: (-1)**(number of occupied modes strictly between i and j),
    which follows from ordering creation operators by mode index.
    """
    if basis.flavor != "fermionM":
        raise ParameterError(f"fermion_hop needs a fermionM basis, got {basis.flavor}")
    _check_mode_pair(basis, i, j)
    lo, hi = sorted((i - 1, j - 1))
    rows, cols, vals = [], [], []
    for col, cfg in enumerate(basis.configs):
        if cfg[j - 1] != 1 or cfg[i - 1] != 0:
            continue
        target = list(cfg)
        target[i - 1] = 1
        target[j - 1] = 0
        sign = -1.0 if sum(cfg[lo + 1 : hi]) % 2 else 1.0
        rows.append(basis.index_of(target))
        cols.append(col)
        vals.append(sign)
    return LinearOperator(basis, _matrix_from_entries(len(basis), rows, cols, vals))


@dataclass(frozen=True)
class FluxQubitParams:
    """Dimensionless parameters of the three-junction flux qubit.

    ej_over_ec : ratio of Josephson to charging energy, E_J/E_C.
    alpha      : asymmetry of the third junction, in (0, 1].
    f          : magnetic frustration; the external flux is f flux quanta.
    delta_n    : charge truncation, |n1|, |n2| <= delta_n.
    """

    ej_over_ec: float
    alpha: float = 1.0
    f: float = 0.5
    delta_n: int = 6

    def __post_init__(self) -> None:
        if not self.ej_over_ec > 0:
            raise ParameterError(f"ej_over_ec must be > 0, got {self.ej_over_ec}")
        if not self.alpha > 0:
            raise ParameterError(f"alpha must be > 0, got {self.alpha}")
        if self.alpha > 1:
            warnings.warn(
                f"alpha = {self.alpha} > 1 lies outside the usual junction "
                "asymmetry range", stacklevel=2,
            )
        if self.delta_n < 1:
            raise ParameterError(f"delta_n must be >= 1, got {self.delta_n}")

    @property
    def theta(self) -> float:
        """Tunneling phase 2*pi*f picked up on the alpha junction."""
        return 2.0 * math.pi * self.f


def _check_flux_basis(params: FluxQubitParams, basis: OccupationBasis | None) -> OccupationBasis:
    if basis is None:
        return charge_basis(params.delta_n)
    if basis.flavor != "charge3" or basis.params != (params.delta_n,):
        raise ParameterError(
            f"basis {basis.flavor}{basis.params} does not match "
            f"charge3 with delta_n = {params.delta_n}"
        )
    return basis


def josephson_hamiltonian(
    params: FluxQubitParams, basis: OccupationBasis | None = None
) -> LinearOperator:
    """Pair-tunneling part of the flux-qubit Hamiltonian, in E_J units.

    H_J = -1/2 [hop(2,1) + hop(3,2) + alpha e^{i theta} hop(1,3) + h.c.]
    with theta = 2*pi*f on the weak (alpha) junction.
    """
    basis = _check_flux_basis(params, basis)
    phase = complex(np.exp(1j * params.theta))
    forward = (
        pair_hop(basis, 2, 1).matrix
        + pair_hop(basis, 3, 2).matrix
        + (params.alpha * phase) * pair_hop(basis, 1, 3).matrix
    )
    mat = (-0.5) * (forward + forward.conj().T)
    return LinearOperator(basis, mat.tocsr(), hermitian=True)


def charging_hamiltonian(
    params: FluxQubitParams, basis: OccupationBasis | None = None
) -> LinearOperator:
    """Electrostatic part of the flux-qubit Hamiltonian, in E_J units.

    With island charges Q_j = 2e n_j, charging energy E_C = e^2/2C and
    the junction capacitance network of the asymmetric loop, the
    electrostatic energy is diagonal in the charge basis:

        diag(n1, n3) = 4 (E_C/E_J) [n1^2 + n3^2 - (n1 - n3)^2 / (2 + 1/alpha)]

    (n2 enters only through n3 = -n1 - n2).  The quadratic form is
    positive definite for every alpha > 0.
    """
    if params.alpha == 0:
        raise ParameterError("alpha = 0 leaves the capacitance form undefined")
    basis = _check_flux_basis(params, basis)
    prefactor = 4.0 / params.ej_over_ec
    cross = 2.0 + 1.0 / params.alpha
    diag = np.array(
        [
            prefactor * (n1 * n1 + n3 * n3 - (n1 - n3) ** 2 / cross)
            for n1, _, n3 in basis.configs
        ],
        dtype=np.complex128,
    )
    return LinearOperator(
        basis, sparse.csr_array(sparse.diags_array(diag)), hermitian=True
    )


def flux_qubit_hamiltonian(
    params: FluxQubitParams, basis: OccupationBasis | None = None
) -> LinearOperator:
    """Full flux-qubit Hamiltonian H = H_J + H_ch in E_J units."""
    basis = _check_flux_basis(params, basis)
    return josephson_hamiltonian(params, basis) + charging_hamiltonian(params, basis)


def current_operator(
    params: FluxQubitParams, basis: OccupationBasis | None = None
) -> LinearOperator:
    """Circulating-current operator of the loop, in units 2*pi*E_J/Phi_0 = 1.

    The current around the loop is the average of the three junction
    currents (the Josephson relation per junction, with the flux phase
    theta on the weak junction to match the Hamiltonian gauge):

        I = (i/6) [ hop(2,1) - hop(1,2) + hop(3,2) - hop(2,3)
                    + alpha (e^{i theta} hop(1,3) - e^{-i theta} hop(3,1)) ]

    Hermitian and purely off-diagonal in the charge basis.  In any
    stationary state the three junction currents agree (charge
    conservation), so the expectation value of this operator equals
    minus the flux derivative of the energy; placing the whole flux
    dependence on one junction instead would leave expectation values
    unchanged but rotate the operator's eigenbasis, spoiling the
    agreement between the two current-state extraction methods.
    """
    basis = _check_flux_basis(params, basis)
    phase = complex(np.exp(1j * params.theta))
    mat = (1j / 6.0) * (
        pair_hop(basis, 2, 1).matrix
        - pair_hop(basis, 1, 2).matrix
        + pair_hop(basis, 3, 2).matrix
        - pair_hop(basis, 2, 3).matrix
        + (params.alpha * phase) * pair_hop(basis, 1, 3).matrix
        - (params.alpha * phase.conjugate()) * pair_hop(basis, 3, 1).matrix
    )
    return LinearOperator(basis, mat.tocsr(), hermitian=True)


@dataclass(frozen=True, eq=False)
class OperatorSet:
    """Ordered collection of single-particle operators over one basis."""

    ops: tuple[LinearOperator, ...]
    label: str = ""

    def __post_init__(self) -> None:
        if not self.ops:
            raise ParameterError("operator set must not be empty")
        for op in self.ops[1:]:
            ensure_same_basis(self.ops[0].basis, op.basis, "operator set members")

    @property
    def basis(self) -> OccupationBasis:
        return self.ops[0].basis

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)


FLUX_QUBIT_OPERATOR_SETS = ("hops_and_numbers", "hops_only")

_ORDERED_ISLAND_PAIRS = ((1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2))


def flux_qubit_operator_set(
    basis: OccupationBasis, kind: str = "hops_and_numbers"
) -> OperatorSet:
    """Single-particle operators of the flux qubit.

    All six ordered pair hops, optionally followed by the three island
    number operators (``kind="hops_and_numbers"``, the default) or the
    hops alone (``kind="hops_only"``).
    """
    if kind not in FLUX_QUBIT_OPERATOR_SETS:
        raise ParameterError(
            f"kind must be one of {FLUX_QUBIT_OPERATOR_SETS}, got {kind!r}"
        )
    ops = [pair_hop(basis, i, j) for i, j in _ORDERED_ISLAND_PAIRS]
    if kind == "hops_and_numbers":
        ops.extend(number_op(basis, j) for j in (1, 2, 3))
    return OperatorSet(tuple(ops), label=kind)


def two_mode_operator_set(
    basis: OccupationBasis, include_numbers: bool = False
) -> OperatorSet:
    """Bosonic hops between the two modes, optionally with number operators."""
    ops = [boson_hop(basis, 2, 1), boson_hop(basis, 1, 2)]
    label = "boson_hops"
    if include_numbers:
        ops.extend(number_op(basis, j) for j in (1, 2))
        label = "boson_bilinears"
    return OperatorSet(tuple(ops), label=label)


def fermion_operator_set(basis: OccupationBasis) -> OperatorSet:
    """All ordered fermionic hops c_i^dag c_j, i != j."""
    m = basis.n_modes
    ops = tuple(
        fermion_hop(basis, i, j)
        for i in range(1, m + 1)
        for j in range(1, m + 1)
        if i != j
    )
    return OperatorSet(ops, label="fermion_hops")


def rotated_two_mode_operator_set(
    basis: OccupationBasis, unitary: np.ndarray
) -> OperatorSet:
    """Complete bilinear family c'_i^dag c'_j in a rotated two-mode basis.

    The rotated modes are c'_i = sum_j U_ij c_j, so each bilinear is
    c'_i^dag c'_j = sum_kl conj(U_ik) U_jl c_k^dag c_l.  With the
    identity rotation this reduces to the hops plus number operators.
    """
    u = np.asarray(unitary, dtype=np.complex128)
    if u.shape != (2, 2):
        raise ParameterError(f"unitary must be 2x2, got shape {u.shape}")
    if np.max(np.abs(u.conj().T @ u - np.eye(2))) > 1e-10:
        raise ParameterError("matrix is not unitary within 1e-10")

    def bilinear(k: int, l: int) -> sparse.csr_array:
        if k == l:
            return number_op(basis, k).matrix
        return boson_hop(basis, k, l).matrix

    blocks = {(k, l): bilinear(k, l) for k in (1, 2) for l in (1, 2)}
    ops = []
    for i in (1, 2):
        for j in (1, 2):
            mat = _empty_matrix(len(basis))
            for k in (1, 2):
                for l in (1, 2):
                    coeff = np.conj(u[i - 1, k - 1]) * u[j - 1, l - 1]
                    mat = mat + coeff * blocks[(k, l)]
            ops.append(LinearOperator(basis, mat.tocsr()))
    return OperatorSet(tuple(ops), label="rotated_bilinears")
