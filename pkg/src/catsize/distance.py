"""Many-body distance between two states with the same particle number.

The distance distribution P(D=d) answers: how many single-particle
operations are needed, on average, to map a start state onto a target
state?  It is computed in two steps:

1. Grow a chain of orthonormal subspace blocks.  Block 0 spans the
   start state alone.  Block d+1 spans the images of block d under
   every operator in the supplied set, with the orthogonal projection
   onto blocks 0..d removed.  Repeating this exhausts everything the
   start state can reach under particle-conserving evolution.
2. Decompose the target state over the chain.  The squared projection
   norm onto block d is the weight P(D=d); whatever falls outside the
   chain is reported as residual weight.

The numerical rank of each new block is decided by one SVD of the
projected candidate matrix per level: left singular vectors with
sigma > rank_tol * sigma_max are kept, and a level whose largest
singular value falls below rank_tol (absolute) is empty, which
terminates the chain.  The batched SVD is deliberately preferred over
sequential Gram-Schmidt: candidate images are often nearly linearly
dependent, and the SVD rank decision is stable under that.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .basis import OccupationBasis, StateVector, ensure_same_basis
from .errors import (
    ChainOverflowError,
    ContractError,
    ParameterError,
    UnreachableTargetError,
)
from .operators import OperatorSet

DEFAULT_D_MAX = 12
DEFAULT_RANK_TOL = 1e-10
DEFAULT_WEIGHT_TOL = 1e-6

_NORMALIZATION_TOL = 1e-12
_WEIGHT_CLAMP = 1e-12
_UNITY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SubspaceChain:
    """Orthonormal basis blocks for the reachable subspaces H_0, H_1, ...

    ``blocks[d]`` is a (basis size, dims[d]) matrix whose columns span
    the states reachable in exactly d operations.  ``exhausted`` is set
    when the generation produced an empty block, i.e. no further
    vectors are producible.
    """

    basis: OccupationBasis
    blocks: tuple[np.ndarray, ...]
    exhausted: bool

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(block.shape[1] for block in self.blocks)

    @property
    def depth(self) -> int:
        """Largest distance d represented in the chain."""
        return len(self.blocks) - 1

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def block_states(self, d: int) -> tuple[StateVector, ...]:
        return tuple(
            StateVector(self.basis, col) for col in self.blocks[d].T
        )


@dataclass(frozen=True)
class DistanceDistribution:
    """Weights P(D=d), residual weight outside the chain, and mean distance.

    ``mean`` is sum(d * P(d)) / sum(P(d)); it is NaN when every weight
    vanishes.  ``chain_dims`` records the block sizes of the chain the
    decomposition ran against.
    """

    weights: tuple[float, ...]
    residual: float
    mean: float
    chain_dims: tuple[int, ...] = ()

    @property
    def d_max(self) -> int:
        return len(self.weights) - 1


def _require_normalized(state: StateVector, name: str) -> None:
    if not state.is_normalized(_NORMALIZATION_TOL):
        raise ContractError(
            f"{name} must be normalized, got |{name}|^2 = "
            f"{np.vdot(state.amplitudes, state.amplitudes).real!r}"
        )


def _block_iterator(
    start: np.ndarray,
    matrices: list,
    rank_tol: float,
    basis_size: int,
) -> Iterator[np.ndarray]:
    """Yield orthonormal blocks level by level; stop when a block is empty."""
    previous = start.reshape(-1, 1).astype(np.complex128)
    yield previous
    block = previous
    total = 1
    while True:
        candidates = np.hstack([m @ block for m in matrices])
        # Project out everything reached so far; twice is enough to keep
        # the residual orthogonal to machine precision.
        for _ in range(2):
            candidates = candidates - previous @ (previous.conj().T @ candidates)
        u, s, _ = np.linalg.svd(candidates, full_matrices=False)
        if s.size == 0 or s[0] < rank_tol:
            return
        new = u[:, s > rank_tol * s[0]]
        total += new.shape[1]
        if total > basis_size:
            raise ChainOverflowError(
                f"chain dimension {total} exceeds basis size {basis_size}; "
                f"rank_tol = {rank_tol:g} is admitting spurious directions"
            )
        yield new
        previous = np.hstack([previous, new])
        block = new


def _prepare(a: StateVector, ops: OperatorSet, d_max: int, rank_tol: float):
    _require_normalized(a, "start state")
    ensure_same_basis(a.basis, ops.basis, "start state and operator set")
    if d_max < 0:
        raise ParameterError(f"d_max must be >= 0, got {d_max}")
    if not 0.0 < rank_tol < 1.0:
        raise ParameterError(f"rank_tol must lie in (0, 1), got {rank_tol}")
    return _block_iterator(
        a.amplitudes, [op.matrix for op in ops], rank_tol, len(a.basis)
    )


def generate_chain(
    a: StateVector,
    ops: OperatorSet,
    d_max: int = DEFAULT_D_MAX,
    rank_tol: float = DEFAULT_RANK_TOL,
) -> SubspaceChain:
    """Grow the subspace chain from ``a`` up to depth ``d_max``."""
    levels = _prepare(a, ops, d_max, rank_tol)
    blocks: list[np.ndarray] = []
    exhausted = False
    for _ in range(d_max + 1):
        try:
            blocks.append(next(levels))
        except StopIteration:
            exhausted = True
            break
    return SubspaceChain(a.basis, tuple(blocks), exhausted)


def _make_distribution(
    weights: list[float], chain_dims: tuple[int, ...]
) -> DistanceDistribution:
    w = np.asarray(weights, dtype=np.float64)
    if (w < -_WEIGHT_CLAMP).any():
        raise ContractError(
            f"projection weight {w.min():.3e} below zero; chain is not orthonormal"
        )
    w = np.clip(w, 0.0, None)
    total = float(w.sum())
    residual = 1.0 - total
    if residual < -_UNITY_TOL:
        raise ContractError(
            f"weights sum to {total!r} > 1; chain is not orthonormal"
        )
    residual = max(residual, 0.0)
    if total > 0.0:
        mean = float(np.dot(np.arange(len(w)), w) / total)
    else:
        mean = float("nan")
    return DistanceDistribution(tuple(float(x) for x in w), residual, mean, chain_dims)


def decompose(b: StateVector, chain: SubspaceChain) -> DistanceDistribution:
    """Weights of ``b`` over the chain blocks; phases are discarded."""
    _require_normalized(b, "target state")
    ensure_same_basis(b.basis, chain.basis, "target state and chain")
    amp = b.amplitudes
    weights = [
        float(np.linalg.norm(block.conj().T @ amp) ** 2) for block in chain.blocks
    ]
    return _make_distribution(weights, chain.dims)


def distance(
    a: StateVector,
    b: StateVector,
    ops: OperatorSet,
    d_max: int = DEFAULT_D_MAX,
    rank_tol: float = DEFAULT_RANK_TOL,
    weight_tol: float = DEFAULT_WEIGHT_TOL,
) -> DistanceDistribution:
    """Distance distribution from ``a`` to ``b`` under the operator set.

    Generation is lazy: it stops as soon as the cumulative weight of
    ``b`` reaches 1 - weight_tol, the chain exhausts, or d_max is hit.
    A chain that exhausts while ``b`` still has weight beyond
    weight_tol outside it means ``b`` is not reachable from ``a`` by
    particle-conserving evolution; that raises UnreachableTargetError.
    """
    _require_normalized(b, "target state")
    ensure_same_basis(a.basis, b.basis, "start and target states")
    if not 0.0 <= weight_tol < 1.0:
        raise ParameterError(f"weight_tol must lie in [0, 1), got {weight_tol}")
    levels = _prepare(a, ops, d_max, rank_tol)
    amp = b.amplitudes
    weights: list[float] = []
    dims: list[int] = []
    cumulative = 0.0
    exhausted = False
    for _ in range(d_max + 1):
        try:
            block = next(levels)
        except StopIteration:
            exhausted = True
            break
        weights.append(float(np.linalg.norm(block.conj().T @ amp) ** 2))
        dims.append(block.shape[1])
        cumulative += weights[-1]
        if cumulative >= 1.0 - weight_tol:
            break
    dist = _make_distribution(weights, tuple(dims))
    if exhausted and dist.residual > weight_tol:
        raise UnreachableTargetError(
            f"chain exhausted at depth {len(weights) - 1} with residual "
            f"weight {dist.residual:.6e} > weight_tol = {weight_tol:g}; "
            "target is not reachable from the start state"
        )
    return dist


def average_distance(dist: DistanceDistribution) -> float:
    """Mean distance sum(d P(d)) / sum(P(d))."""
    total = sum(dist.weights)
    if total <= 0.0:
        raise ContractError("average distance undefined: all weights are zero")
    return sum(d * w for d, w in enumerate(dist.weights)) / total
