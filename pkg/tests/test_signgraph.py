"""Sign-pattern graphs and the threshold filter."""

import numpy as np

from spnkit import (
    SymMatrix,
    apply_group,
    edges_to_dot,
    extract_sign_graphs,
    is_threshold,
    orbit_necessary_filter,
    threshold_elimination,
)
from spnkit.samplers import random_group_element, random_mn_member, random_symmetric

PENTAGON_POS = frozenset({(1, 3), (1, 4), (2, 4), (2, 5), (3, 5)})
PENTAGON_NEG = frozenset({(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)})


class TestExtract:
    def test_bordered_fixture_star_and_clique(self, horn_bordered6):
        g = extract_sign_graphs(horn_bordered6)
        assert g.neg_edges == frozenset({(1, j) for j in range(2, 7)})
        assert g.pos_edges == frozenset(
            {(i, j) for i in range(2, 7) for j in range(i + 1, 7)}
        )

    def test_identity_empty(self, identity3):
        g = extract_sign_graphs(identity3)
        assert g.pos_edges == frozenset() and g.neg_edges == frozenset()

    def test_horn_complementary_pentagons(self, horn):
        g = extract_sign_graphs(horn)
        assert g.pos_edges == PENTAGON_POS
        assert g.neg_edges == PENTAGON_NEG


class TestThreshold:
    def test_star(self):
        star = {(1, j) for j in range(2, 7)}
        assert is_threshold(6, star)

    def test_path4(self):
        assert not is_threshold(4, {(1, 2), (2, 3), (3, 4)})

    def test_cycle4(self):
        assert not is_threshold(4, {(1, 2), (2, 3), (3, 4), (1, 4)})

    def test_two_disjoint_edges(self):
        assert not is_threshold(4, {(1, 2), (3, 4)})

    def test_pentagon(self):
        assert not is_threshold(5, PENTAGON_POS)

    def test_empty_and_complete(self):
        assert is_threshold(5, set())
        assert is_threshold(4, {(i, j) for i in range(1, 5) for j in range(i + 1, 5)})

    def test_elimination_ledger(self):
        star = {(1, j) for j in range(2, 6)}
        order = threshold_elimination(5, star)
        assert order is not None and len(order) == 5
        # replay: each removal drops exactly the vertex's current degree,
        # isolated removals drop nothing, dominating ones touch all survivors
        adj = {v: set() for v in range(1, 6)}
        for i, j in star:
            adj[i].add(j)
            adj[j].add(i)
        remaining = set(range(1, 6))
        edges_left = len(star)
        for v, role in order:
            deg = len(adj[v])
            if role == "isolated":
                assert deg == 0
            else:
                assert deg == len(remaining) - 1
            edges_left -= deg
            for u in adj[v]:
                adj[u].discard(v)
            adj[v] = set()
            remaining.discard(v)
        assert edges_left == 0

    def test_complement_duality_dense(self, rng):
        # dense matrices: positive graph is the complement of the negative one
        for _ in range(100):
            n = int(rng.integers(2, 8))
            arr = random_symmetric(rng, n).to_array()
            arr[np.abs(arr) < 0.05] += 0.1  # keep off-diagonals away from zero
            a = SymMatrix((arr + arr.T) / 2)
            g = extract_sign_graphs(a)
            if len(g.pos_edges) + len(g.neg_edges) == n * (n - 1) // 2:
                assert is_threshold(n, g.pos_edges) == is_threshold(n, g.neg_edges)


class TestFilter:
    def test_ordered_fixture(self, ordered6):
        assert orbit_necessary_filter(ordered6)

    def test_bordered_fixture_inconclusive_true(self, horn_bordered6):
        # same sign pattern as the ordered fixture: the filter passes even
        # though the orbit search fails, demonstrating non-sufficiency
        assert orbit_necessary_filter(horn_bordered6)

    def test_horn_rejected(self, horn):
        assert not orbit_necessary_filter(horn)

    def test_soundness_on_orbit_members(self, rng):
        for _ in range(200):
            n = int(rng.integers(2, 9))
            a = apply_group(random_group_element(rng, n), random_mn_member(rng, n))
            assert orbit_necessary_filter(a)


class TestDot:
    def test_dot_output(self):
        text = edges_to_dot(3, {(1, 2)}, "positive")
        assert "graph positive {" in text
        assert "1 -- 2;" in text
