import itertools
import math
from collections import deque

import numpy as np
import pytest

from catsize import (
    GhzParams,
    ParameterError,
    asymmetric_pair,
    bec_pair,
    distance,
    fermion_basis,
    fermion_operator_set,
    ghz_lambda,
    inner,
    persistent_current_pair,
    two_mode_operator_set,
)


def binomial_weights(n, theta):
    # independent route: explicit binomial law, no shared code with ghz_lambda
    p = math.sin(theta) ** 2
    return np.array([math.comb(n, d) * p**d * (1 - p) ** (n - d) for d in range(n + 1)])


def hop_distance_bfs(m_modes, occupied_a, occupied_b):
    """Independent oracle: breadth-first search over occupation configs,
    one edge per single-particle move."""
    start = frozenset(occupied_a)
    goal = frozenset(occupied_b)
    seen = {start}
    queue = deque([(start, 0)])
    while queue:
        current, depth = queue.popleft()
        if current == goal:
            return depth
        for source in current:
            for target in range(1, m_modes + 1):
                if target in current:
                    continue
                nxt = (current - {source}) | {target}
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append((nxt, depth + 1))
    raise AssertionError("sector exhausted without reaching the goal")


class TestGhzLambda:
    def test_identical_states(self):
        lam = ghz_lambda(GhzParams(5, 0.0))
        assert lam[0] == 1.0
        assert np.all(lam[1:] == 0.0)

    def test_orthogonal_states(self):
        lam = ghz_lambda(GhzParams(10, math.pi / 2))
        assert lam[-1] == pytest.approx(1.0, abs=1e-12)
        assert np.abs(lam[:-1]).max() < 1e-15

    def test_two_particle_values(self):
        lam = ghz_lambda(GhzParams(2, math.pi / 4))
        assert np.allclose(lam, [0.5, 1.0 / math.sqrt(2.0), 0.5], atol=1e-15)

    def test_normalization_sweep(self):
        for n in range(1, 31):
            for theta in np.linspace(0.0, math.pi / 2, 20):
                lam = ghz_lambda(GhzParams(n, float(theta)))
                assert abs(np.sum(lam**2) - 1.0) < 1e-12

    def test_mean_matches_binomial(self):
        for n in (1, 3, 10, 24, 30):
            for theta in (0.2, 0.8, 1.4):
                weights = ghz_lambda(GhzParams(n, theta)) ** 2
                mean = float(np.dot(np.arange(n + 1), weights))
                assert abs(mean - n * math.sin(theta) ** 2) < 1e-10

    def test_log_gamma_route_matches_exact_binomials(self):
        # N = 25 uses the log-gamma branch; C(25, d) is still exact in floats
        n, theta = 25, 0.6
        lam = ghz_lambda(GhzParams(n, theta))
        direct = np.array(
            [
                math.sqrt(math.comb(n, d))
                * math.sin(theta) ** d
                * math.cos(theta) ** (n - d)
                for d in range(n + 1)
            ]
        )
        assert np.abs(lam - direct).max() < 1e-13

    def test_parameter_validation(self):
        with pytest.raises(ParameterError):
            GhzParams(0, 0.3)
        with pytest.raises(ParameterError):
            GhzParams(3, -0.1)
        with pytest.raises(ParameterError):
            GhzParams(3, 2.0)


class TestBecPair:
    def test_overlap_is_cos_power_n(self):
        for n in (1, 5, 12):
            for theta in (0.2, 0.9, 1.4):
                a, b = bec_pair(GhzParams(n, theta))
                assert inner(a, b) == pytest.approx(math.cos(theta) ** n, abs=1e-12)

    def test_single_particle_case(self):
        theta = 0.7
        a, b = bec_pair(GhzParams(1, theta))
        basis = a.basis
        assert b.amplitudes[basis.index_of((1, 0))] == pytest.approx(math.cos(theta))
        assert b.amplitudes[basis.index_of((0, 1))] == pytest.approx(math.sin(theta))

    def test_pipeline_reproduces_binomial(self):
        params = GhzParams(10, 0.3)
        a, b = bec_pair(params)
        dist = distance(a, b, two_mode_operator_set(a.basis), d_max=10, weight_tol=1e-12)
        expected = binomial_weights(10, 0.3)
        got = np.zeros(11)
        got[: len(dist.weights)] = dist.weights
        assert np.abs(got - expected).max() < 1e-8


class TestAsymmetricPair:
    def test_states_as_written(self):
        a, b = asymmetric_pair(4)
        basis = a.basis
        assert a.amplitudes[basis.index_of((4, 0))] == pytest.approx(1 / math.sqrt(2))
        assert a.amplitudes[basis.index_of((0, 4))] == pytest.approx(1 / math.sqrt(2))
        assert b.amplitudes[basis.index_of((3, 1))] == 1.0

    def test_forward_single_hop(self):
        a, b = asymmetric_pair(5)
        dist = distance(a, b, two_mode_operator_set(a.basis), weight_tol=1e-12)
        assert dist.weights[1] == pytest.approx(1.0, abs=1e-10)

    def test_backward_splits(self):
        a, b = asymmetric_pair(5)
        dist = distance(b, a, two_mode_operator_set(a.basis), weight_tol=1e-12)
        assert dist.weights[1] < 1.0 - 1e-6
        assert dist.weights[4] > 1e-6  # weight at d = N - 1

    def test_needs_two_particles(self):
        with pytest.raises(ParameterError):
            asymmetric_pair(1)


class TestPersistentCurrentPair:
    def test_identical_sets(self):
        a, b = persistent_current_pair(5, (1, 3, 4), (1, 3, 4))
        dist = distance(a, b, fermion_operator_set(a.basis), weight_tol=1e-12)
        assert dist.weights[0] == pytest.approx(1.0, abs=1e-12)

    def test_single_move(self):
        a, b = persistent_current_pair(4, (1, 2), (1, 4))
        assert hop_distance_bfs(4, (1, 2), (1, 4)) == 1
        dist = distance(a, b, fermion_operator_set(a.basis), weight_tol=1e-12)
        assert dist.weights[1] == pytest.approx(1.0, abs=1e-10)

    def test_three_mode_turnover(self):
        occupied_a, occupied_b = (1, 2, 3), (2, 5, 6)
        assert hop_distance_bfs(6, occupied_a, occupied_b) == 2
        occupied_b = (4, 5, 6)
        assert hop_distance_bfs(6, occupied_a, occupied_b) == 3
        a, b = persistent_current_pair(6, occupied_a, occupied_b)
        dist = distance(a, b, fermion_operator_set(a.basis), weight_tol=1e-12)
        assert dist.weights[3] == pytest.approx(1.0, abs=1e-10)

    def test_random_pairs_match_bfs_oracle(self, rng):
        m, n = 6, 3
        modes = list(range(1, m + 1))
        for _ in range(8):
            occ_a = tuple(sorted(rng.choice(modes, size=n, replace=False)))
            occ_b = tuple(sorted(rng.choice(modes, size=n, replace=False)))
            expected = hop_distance_bfs(m, occ_a, occ_b)
            assert expected == len(set(occ_a) - set(occ_b))
            a, b = persistent_current_pair(m, occ_a, occ_b)
            dist = distance(a, b, fermion_operator_set(a.basis), weight_tol=1e-12)
            assert dist.weights[expected] == pytest.approx(1.0, abs=1e-10)

    def test_validation(self):
        with pytest.raises(ParameterError):
            persistent_current_pair(4, (1, 2), (1, 2, 3))
        with pytest.raises(ParameterError):
            persistent_current_pair(4, (1, 5), (1, 2))
        with pytest.raises(ParameterError):
            persistent_current_pair(4, (1, 1), (1, 2))
