#!/usr/bin/env python3
"""Convergence of the mean distance with the charge truncation window.

Prints the mean distance between the counterpropagating current states
at E_J/E_C = 20, alpha = 1, f = 0.5 for increasing delta_n.
"""

import sys

from catsize import (
    FluxQubitParams,
    charge_basis,
    current_operator,
    current_states_2d,
    distance,
    eig_hermitian,
    flux_qubit_hamiltonian,
    flux_qubit_operator_set,
)


def main() -> int:
    ej_over_ec, alpha = 20.0, 1.0
    previous = None
    print("delta_n  basis  mean_distance      change")
    for delta_n in range(2, 9):
        basis = charge_basis(delta_n)
        params = FluxQubitParams(ej_over_ec, alpha, 0.5, delta_n)
        eig = eig_hermitian(flux_qubit_hamiltonian(params, basis))
        pair = current_states_2d(eig, current_operator(params, basis))
        mean = distance(pair.plus, pair.minus, flux_qubit_operator_set(basis)).mean
        change = "" if previous is None else f"{mean - previous:+.3e}"
        print(f"{delta_n:7d}  {len(basis):5d}  {mean:.12f}  {change}")
        previous = mean
    return 0


if __name__ == "__main__":
    sys.exit(main())
