from itertools import permutations, product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cliquerad.graph import Graph, gen_complete, gen_cycle, gen_random
from cliquerad.tensor import CliqueTensor, unit_normalize

from conftest import dense_apply, dense_tensor


def tensor(g, t):
    return CliqueTensor.from_graph(g, t)


def uniform_unit(n, t):
    return np.full(n, n ** (-1.0 / t))


small_cases = [(gen_random(n, p, seed), t) for n in (3, 5, 6) for p in (0.5, 0.9) for seed in (1, 2) for t in (2, 3, 4)]


class TestEntry:
    def test_triangle(self):
        assert tensor(gen_complete(3), 3).entry((0, 1, 2)) == 0.5

    def test_repeated_index(self):
        assert tensor(gen_complete(3), 3).entry((0, 0, 1)) == 0.0

    def test_order_two_is_adjacency(self):
        g = gen_random(6, 0.5, 4)
        T = tensor(g, 2)
        for u, v in product(range(6), repeat=2):
            assert T.entry((u, v)) == (1.0 if g.has_edge(u, v) else 0.0)

    def test_errors(self):
        T = tensor(gen_complete(3), 3)
        with pytest.raises(ValueError):
            T.entry((0, 1))
        with pytest.raises(IndexError):
            T.entry((0, 1, 3))

    @pytest.mark.parametrize("g,t", small_cases)
    def test_permutation_symmetry(self, g, t):
        T = tensor(g, t)
        for idx in product(range(g.n), repeat=t):
            v = T.entry(idx)
            assert v >= 0
            assert all(T.entry(p) == v for p in permutations(idx))


class TestApply:
    def test_triangle_ones(self):
        np.testing.assert_array_equal(tensor(gen_complete(3), 3).apply(np.ones(3)), np.ones(3))

    def test_c5_zero(self):
        x = np.random.default_rng(0).random(5)
        np.testing.assert_array_equal(tensor(gen_cycle(5), 3).apply(x), np.zeros(5))

    def test_k4_ones(self):
        T = tensor(gen_complete(4), 3)
        np.testing.assert_array_equal(T.apply(np.ones(4)), np.full(4, 3.0))
        np.testing.assert_allclose(dense_apply(dense_tensor(T), np.ones(4)), np.full(4, 3.0), atol=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            tensor(gen_complete(3), 3).apply(np.ones(4))

    @pytest.mark.parametrize("g,t", small_cases)
    def test_dense_oracle(self, g, t):
        T = tensor(g, t)
        a = dense_tensor(T)
        rng = np.random.default_rng(g.n * 10 + t)
        for _ in range(3):
            x = rng.random(g.n)
            np.testing.assert_allclose(T.apply(x), dense_apply(a, x), atol=1e-12, rtol=0)

    @pytest.mark.parametrize("seed", range(10))
    def test_order_two_matrix_product(self, seed):
        g = gen_random(9, 0.5, seed)
        # integer entries keep both sums exact regardless of summation order
        x = np.random.default_rng(seed).integers(0, 1000, 9).astype(float)
        np.testing.assert_array_equal(tensor(g, 2).apply(x), g.adjacency_matrix() @ x)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 10**6), st.integers(2, 4), st.floats(0.0, 5.0))
    def test_homogeneous(self, seed, t, c):
        g = gen_random(8, 0.7, seed)
        T = tensor(g, t)
        x = np.random.default_rng(seed).random(8)
        np.testing.assert_allclose(T.apply(c * x), c ** (t - 1) * T.apply(x), rtol=1e-12, atol=1e-12)

    def test_batch_matches_single(self):
        T = tensor(gen_random(9, 0.7, 3), 3)
        xs = np.random.default_rng(1).random((5, 9))
        np.testing.assert_allclose(T.apply_batch(xs), np.array([T.apply(x) for x in xs]), atol=1e-14)

    def test_bit_identical_repeats(self):
        T = tensor(gen_random(10, 0.8, 2), 4)
        x = np.random.default_rng(2).random(10)
        assert T.apply(x).tobytes() == T.apply(x).tobytes()


class TestRayleigh:
    def test_triangle(self):
        assert tensor(gen_complete(3), 3).rayleigh(uniform_unit(3, 3)) == pytest.approx(1.0, abs=1e-14)

    def test_clique_free(self):
        assert tensor(gen_cycle(5), 3).rayleigh(uniform_unit(5, 3)) == 0.0

    def test_k4(self):
        assert tensor(gen_complete(4), 3).rayleigh(uniform_unit(4, 3)) == pytest.approx(3.0, abs=1e-14)

    def test_not_unit(self):
        with pytest.raises(ValueError):
            tensor(gen_complete(3), 3).rayleigh(np.ones(3))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10**6), st.integers(2, 4))
    def test_contraction_consistency(self, seed, t):
        g = gen_random(9, 0.7, seed)
        T = tensor(g, t)
        x = unit_normalize(np.random.default_rng(seed).random(9), t)
        assert abs(x @ T.apply(x) - T.rayleigh(x)) <= 1e-12


class TestResidual:
    def test_eigenpair(self):
        assert tensor(gen_complete(3), 3).residual(uniform_unit(3, 3), 1.0) <= 1e-12

    def test_wrong_lambda(self):
        # apply_i = x_j x_k = 3^{-2/3}; lambda * x_i^2 = 2 * 3^{-2/3}
        assert tensor(gen_complete(3), 3).residual(uniform_unit(3, 3), 2.0) == pytest.approx(3 ** (-2 / 3), rel=1e-12)

    def test_empty_graph(self):
        assert tensor(Graph(4, (0, 0, 0, 0)), 2).residual(np.ones(4), 0.0) == 0.0


def test_restrict_relabels():
    g = Graph.from_edges(6, [(1, 3), (3, 5), (1, 5), (0, 2)])
    sub = tensor(g, 3).restrict([1, 3, 5])
    assert sub.n == 3 and sub.clique_set.cliques == ((0, 1, 2),)


def test_unit_normalize():
    x = unit_normalize(np.array([1.0, 2.0, 0.0]), 3)
    assert abs(np.sum(x**3) - 1) <= 1e-12
    with pytest.raises(ValueError):
        unit_normalize(np.zeros(3), 3)
    with pytest.raises(ValueError):
        unit_normalize(np.array([-1.0, 1.0]), 2)
