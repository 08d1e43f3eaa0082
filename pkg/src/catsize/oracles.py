"""Closed-form and hand-constructible reference pairs.

These cases pin down the distance measure independently of the chain
machinery: a condensate pair whose distribution is binomial in closed
form, an asymmetric two-island pair whose forward and backward
distances differ, and Slater-determinant pairs whose distance equals
the number of modes that must be repopulated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import StateVector, basis_state, boson_basis, fermion_basis
from .errors import ParameterError

# Exact integer binomials stay below 2**63 up to N = 20; beyond that the
# log-gamma route avoids overflow while keeping full float precision.
_EXACT_BINOMIAL_LIMIT = 20


@dataclass(frozen=True)
class GhzParams:
    """Condensate pair of N particles with single-particle overlap cos(theta)."""

    n_particles: int
    theta: float

    def __post_init__(self) -> None:
        if self.n_particles < 1:
            raise ParameterError(
                f"n_particles must be >= 1, got {self.n_particles}"
            )
        if not 0.0 <= self.theta <= math.pi / 2:
            raise ParameterError(
                f"theta must lie in [0, pi/2], got {self.theta}"
            )


def ghz_lambda(params: GhzParams) -> np.ndarray:
    """Expansion amplitudes lambda_d = sqrt(C(N,d)) sin^d(theta) cos^(N-d)(theta).

    The squared amplitudes form Binomial(N, sin^2 theta), so the mean
    distance is N sin^2(theta).  The global phase is fixed to +1.
    """
    n, theta = params.n_particles, params.theta
    s, c = math.sin(theta), math.cos(theta)
    lam = np.zeros(n + 1, dtype=np.float64)
    for d in range(n + 1):
        if (s == 0.0 and d > 0) or (c == 0.0 and d < n):
            continue
        if n <= _EXACT_BINOMIAL_LIMIT:
            lam[d] = math.sqrt(math.comb(n, d)) * s**d * c ** (n - d)
        else:
            log_binom = (
                math.lgamma(n + 1) - math.lgamma(d + 1) - math.lgamma(n - d + 1)
            )
            log_s = d * math.log(s) if d else 0.0
            log_c = (n - d) * math.log(c) if n - d else 0.0
            lam[d] = math.exp(0.5 * log_binom + log_s + log_c)
    return lam


def bec_pair(params: GhzParams) -> tuple[StateVector, StateVector]:
    """Condensate pair (A, B) over the two-mode basis with N particles.

    A puts all N particles in mode 1; B condenses them into the rotated
    single-particle state cos(theta) mode1 + sin(theta) mode2, giving B
    amplitude lambda_d on the configuration (N-d, d).
    """
    n = params.n_particles
    basis = boson_basis(n)
    a = basis_state(basis, (n, 0))
    lam = ghz_lambda(params)
    amp = np.zeros(len(basis), dtype=np.complex128)
    for d in range(n + 1):
        amp[basis.index_of((n - d, d))] = lam[d]
    return a, StateVector(basis, amp).normalized()


def asymmetric_pair(n_particles: int) -> tuple[StateVector, StateVector]:
    """The pair A = (|N,0> + |0,N>)/sqrt(2), B = |N-1,1>.

    The distance is maximally asymmetric: B lies one hop from A, but A
    keeps weight N-1 hops away from B.
    """
    if n_particles < 2:
        raise ParameterError(f"n_particles must be >= 2, got {n_particles}")
    basis = boson_basis(n_particles)
    amp = np.zeros(len(basis), dtype=np.complex128)
    amp[basis.index_of((n_particles, 0))] = 1.0 / math.sqrt(2.0)
    amp[basis.index_of((0, n_particles))] = 1.0 / math.sqrt(2.0)
    a = StateVector(basis, amp)
    b = basis_state(basis, (n_particles - 1, 1))
    return a, b


def persistent_current_pair(
    m_modes: int, occupied_a, occupied_b
) -> tuple[StateVector, StateVector]:
    """Two Slater-determinant basis states over m_modes fermionic modes.

    ``occupied_a`` and ``occupied_b`` are sets of 1-based mode indices
    of equal size.  The expected distance between the pair equals
    ``len(set(occupied_a) - set(occupied_b))``, the number of particles
    that must be moved.
    """
    set_a, set_b = frozenset(occupied_a), frozenset(occupied_b)
    if len(set_a) != len(tuple(occupied_a)) or len(set_b) != len(tuple(occupied_b)):
        raise ParameterError("occupied mode sets must not repeat indices")
    if len(set_a) != len(set_b):
        raise ParameterError(
            f"unequal particle numbers: {len(set_a)} vs {len(set_b)}"
        )
    for mode in set_a | set_b:
        if not 1 <= mode <= m_modes:
            raise ParameterError(
                f"mode index {mode} out of range 1..{m_modes}"
            )
    basis = fermion_basis(m_modes, len(set_a))
    config_a = tuple(1 if k + 1 in set_a else 0 for k in range(m_modes))
    config_b = tuple(1 if k + 1 in set_b else 0 for k in range(m_modes))
    return basis_state(basis, config_a), basis_state(basis, config_b)
