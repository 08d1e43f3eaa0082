"""Occupation-number bases and state vectors.

Three basis flavors are supported:

* ``charge3`` -- excess Cooper-pair configurations ``(n1, n2, n3)`` of a
  three-island superconducting loop with total charge zero.  Only ``n1``
  and ``n2`` are free, each restricted to ``[-delta_n, +delta_n]``;
  ``n3 = -n1 - n2`` is derived and never stored independently.
* ``boson2`` -- two bosonic modes at fixed total particle number ``N``.
* ``fermionM`` -- ``M`` fermionic modes occupied by ``N`` particles.

Configurations are ordered lexicographically on the occupation tuple.
That ordering fixes every operator matrix, eigenvector and subspace
decomposition downstream, making all results reproducible run to run.
Bases and states are immutable after construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import BasisMismatchError, ConfigLookupError, ParameterError

Config = tuple[int, ...]


@dataclass(frozen=True)
class OccupationBasis:
    """Ordered, constraint-filtered enumeration of occupation configurations."""

    flavor: str
    params: tuple[int, ...]
    configs: tuple[Config, ...]
    index: dict[Config, int] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "index", {c: i for i, c in enumerate(self.configs)}
        )

    def __len__(self) -> int:
        return len(self.configs)

    @property
    def n_modes(self) -> int:
        return len(self.configs[0])

    def index_of(self, config) -> int:
        """Position of ``config`` in the basis ordering."""
        try:
            return self.index[tuple(config)]
        except KeyError:
            raise ConfigLookupError(
                f"configuration {tuple(config)} not in {self.flavor} basis "
                f"with params {self.params}"
            ) from None

    def occupation_array(self) -> np.ndarray:
        """All configurations as an integer array of shape (size, n_modes)."""
        return np.array(self.configs, dtype=np.int64)


def charge_basis(delta_n: int) -> OccupationBasis:
    """Three-island charge basis truncated to |n1|, |n2| <= delta_n."""
    if delta_n < 0:
        raise ParameterError(f"delta_n must be >= 0, got {delta_n}")
    window = range(-delta_n, delta_n + 1)
    configs = tuple(
        (n1, n2, -n1 - n2) for n1 in window for n2 in window
    )
    return OccupationBasis("charge3", (delta_n,), configs)


def boson_basis(n_particles: int) -> OccupationBasis:
    """Two bosonic modes holding n_particles in total."""
    if n_particles < 0:
        raise ParameterError(f"n_particles must be >= 0, got {n_particles}")
    configs = tuple((n, n_particles - n) for n in range(n_particles + 1))
    return OccupationBasis("boson2", (n_particles,), configs)


def fermion_basis(m_modes: int, n_particles: int) -> OccupationBasis:
    """m_modes fermionic modes occupied by n_particles."""
    if n_particles < 0 or n_particles > m_modes:
        raise ParameterError(
            f"need 0 <= n_particles <= m_modes, got N={n_particles}, M={m_modes}"
        )
    configs = sorted(
        tuple(1 if k in occupied else 0 for k in range(m_modes))
        for occupied in itertools.combinations(range(m_modes), n_particles)
    )
    return OccupationBasis("fermionM", (m_modes, n_particles), tuple(configs))


_FLAVORS = {
    "charge3": (charge_basis, ("delta_n",)),
    "boson2": (boson_basis, ("n_particles",)),
    "fermionM": (fermion_basis, ("m_modes", "n_particles")),
}


def enumerate_basis(flavor: str, **params) -> OccupationBasis:
    """Build a basis by flavor name; see the flavor-specific constructors."""
    if flavor not in _FLAVORS:
        raise ParameterError(
            f"unknown flavor {flavor!r}, expected one of {sorted(_FLAVORS)}"
        )
    ctor, names = _FLAVORS[flavor]
    if set(params) != set(names):
        raise ParameterError(
            f"flavor {flavor!r} takes parameters {names}, got {sorted(params)}"
        )
    return ctor(**{k: params[k] for k in names})


def ensure_same_basis(a: OccupationBasis, b: OccupationBasis, what: str = "operands") -> None:
    if a is not b and a != b:
        raise BasisMismatchError(
            f"{what} live on different bases: "
            f"{a.flavor}{a.params} vs {b.flavor}{b.params}"
        )


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitude vector over an OccupationBasis (read-only)."""

    basis: OccupationBasis
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amp = np.array(self.amplitudes, dtype=np.complex128, copy=True)
        if amp.shape != (len(self.basis),):
            raise ParameterError(
                f"amplitude vector has shape {amp.shape}, "
                f"basis needs ({len(self.basis)},)"
            )
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = 1e-12) -> bool:
        return abs(np.vdot(self.amplitudes, self.amplitudes).real - 1.0) <= tol

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n == 0.0:
            raise ParameterError("cannot normalize the zero vector")
        return StateVector(self.basis, self.amplitudes / n)

    def conj(self) -> "StateVector":
        return StateVector(self.basis, self.amplitudes.conj())

    def __repr__(self) -> str:
        return (
            f"StateVector({self.basis.flavor}{self.basis.params}, "
            f"dim={len(self.basis)}, norm={self.norm():.6g})"
        )


def basis_state(basis: OccupationBasis, config) -> StateVector:
    """Unit vector with amplitude 1 at the index of ``config``."""
    amp = np.zeros(len(basis), dtype=np.complex128)
    amp[basis.index_of(config)] = 1.0
    return StateVector(basis, amp)


def inner(a: StateVector, b: StateVector) -> complex:
    """Inner product <a|b>, conjugate-linear in the first argument."""
    ensure_same_basis(a.basis, b.basis, "inner product arguments")
    return complex(np.vdot(a.amplitudes, b.amplitudes))
