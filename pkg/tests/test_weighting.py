"""Weighted-degree arithmetic, validity checks, bounds and weight files."""

from fractions import Fraction

import numpy as np
import pytest

from irrstrength import (
    EdgeWeighting,
    Graph,
    WeightFormatError,
    bounds,
    collision_witness,
    finite_strength,
    is_irregular,
    load_weights,
    save_weights,
    vertex_weights,
)

from conftest import complete, cycle, path


class TestVertexWeights:
    def test_triangle_all_ones(self):
        g = complete(3)
        assert vertex_weights(g, np.ones(3, dtype=np.int64)).tolist() == [2, 2, 2]

    def test_square_witness(self):
        g = cycle(4)
        # edge order (0,1) (0,3) (1,2) (2,3)
        w = np.array([1, 1, 2, 3], dtype=np.int64)
        assert vertex_weights(g, w).tolist() == [2, 3, 5, 4]
        assert is_irregular(g, w)
        assert collision_witness(g, w) is None

    def test_accepts_weighting_object(self):
        g = complete(3)
        ew = EdgeWeighting(g, np.array([1, 2, 3], dtype=np.int64))
        assert vertex_weights(g, ew).tolist() == [3, 4, 5]

    def test_huge_weights_exact(self):
        g = path(3)
        big = 2**60
        w = np.array([big, big + 1], dtype=np.int64)
        sums = vertex_weights(g, w)
        assert sums.tolist() == [big, 2 * big + 1, big + 1]

    def test_isolated_vertex_sums_zero(self):
        g = Graph(3, [(0, 1)])
        assert vertex_weights(g, np.array([5], dtype=np.int64)).tolist() == [5, 5, 0]


class TestCollisionAndIrregular:
    def test_collision_on_equal_sums(self):
        g = complete(3)
        w = np.ones(3, dtype=np.int64)
        pair = collision_witness(g, w)
        assert pair is not None
        u, v = pair
        sums = vertex_weights(g, w)
        assert u != v and sums[u] == sums[v]
        assert not is_irregular(g, w)

    def test_single_vertex_is_irregular(self):
        assert is_irregular(Graph(1), np.empty(0, dtype=np.int64))


class TestFiniteStrength:
    def test_isolated_edge(self):
        assert not finite_strength(Graph(2, [(0, 1)]))

    def test_isolated_edge_among_others(self):
        g = Graph(5, [(0, 1), (2, 3), (3, 4)])
        assert not finite_strength(g)

    def test_two_isolated_vertices(self):
        assert not finite_strength(Graph(2, []))

    def test_one_isolated_vertex_ok(self):
        assert finite_strength(Graph(4, [(0, 1), (1, 2)]))

    def test_path3(self):
        assert finite_strength(path(3))

    def test_single_vertex(self):
        assert finite_strength(Graph(1))


class TestEdgeWeighting:
    def test_k_is_max(self):
        g = cycle(4)
        ew = EdgeWeighting(g, np.array([1, 1, 2, 3], dtype=np.int64))
        assert ew.k == 3

    def test_empty_k(self):
        assert EdgeWeighting(Graph(1), np.empty(0, dtype=np.int64)).k == 0

    def test_rejects_wrong_shape(self):
        with pytest.raises(WeightFormatError):
            EdgeWeighting(cycle(4), np.array([1, 2, 3], dtype=np.int64))

    def test_rejects_nonpositive(self):
        with pytest.raises(WeightFormatError):
            EdgeWeighting(cycle(4), np.array([1, 0, 2, 3], dtype=np.int64))

    def test_mapping_round_trip(self):
        g = cycle(4)
        m = {(0, 1): 1, (0, 3): 1, (1, 2): 2, (2, 3): 3}
        ew = EdgeWeighting.from_mapping(g, m)
        assert ew.weights.tolist() == [1, 1, 2, 3]
        assert ew.to_mapping() == m


class TestBounds:
    def test_counting_bounds_large(self):
        b = bounds(100000, 10000, 0.1, 0.04)
        assert b.safe_lower == 11
        assert b.paper_lower == 12
        assert b.kkp == 60
        assert b.beta == pytest.approx(0.02)
        assert b.thm_dense == pytest.approx(38.0)
        assert b.thm_dense_applicable is False
        assert b.thm_general == pytest.approx(154.44692795437393)

    def test_dense_regime_gate(self):
        b = bounds(12000, 10000, 0.1, 0.04)
        assert b.thm_dense_applicable is True
        assert b.thm_dense == pytest.approx(29.2)

    def test_without_rate_parameters(self):
        b = bounds(100, 10)
        assert b.safe_lower == 11 and b.paper_lower == 12 and b.kkp == 60
        assert b.thm_general is None and b.thm_dense is None

    def test_square_sits_below_ideal_bound(self):
        # the 4-cycle achieves 3, one below the idealized (n+2d)/d value
        b = bounds(4, 2)
        assert b.safe_lower == 3
        assert b.paper_lower == 4

    def test_validation(self):
        with pytest.raises(ValueError):
            bounds(10, 0)
        with pytest.raises(ValueError):
            bounds(10, 10)
        with pytest.raises(ValueError):
            bounds(100, 10, 0.25, 0.04)
        with pytest.raises(ValueError):
            bounds(100, 10, 0.1, 0.05)
        with pytest.raises(ValueError):
            bounds(100, 10, 0.1, 0.0)

    def test_accepts_fractions(self):
        b = bounds(100000, 10000, Fraction(1, 10), Fraction(1, 25))
        assert b.thm_general == pytest.approx(154.44692795437393)


class TestWeightFiles:
    def test_round_trip(self, tmp_path):
        g = cycle(4)
        ew = EdgeWeighting(g, np.array([1, 1, 2, 3], dtype=np.int64))
        p = tmp_path / "w.txt"
        save_weights(ew, p)
        text = p.read_text()
        assert text == "0 1 1\n0 3 1\n1 2 2\n2 3 3\n"
        back = load_weights(p, g)
        assert back.weights.tolist() == [1, 1, 2, 3]

    def test_order_independent_load(self, tmp_path):
        g = cycle(4)
        p = tmp_path / "w.txt"
        p.write_text("2 3 3\n1 2 2  # middle\n0 3 1\n0 1 1\n")
        assert load_weights(p, g).weights.tolist() == [1, 1, 2, 3]

    def test_missing_edge_rejected(self, tmp_path):
        p = tmp_path / "w.txt"
        p.write_text("0 1 1\n0 3 1\n1 2 2\n")
        with pytest.raises(WeightFormatError):
            load_weights(p, cycle(4))

    def test_duplicate_edge_rejected(self, tmp_path):
        p = tmp_path / "w.txt"
        p.write_text("0 1 1\n0 1 2\n0 3 1\n1 2 2\n2 3 3\n")
        with pytest.raises(WeightFormatError):
            load_weights(p, cycle(4))

    def test_unknown_edge_rejected(self, tmp_path):
        from irrstrength import GraphFormatError

        p = tmp_path / "w.txt"
        p.write_text("0 2 1\n")
        with pytest.raises((WeightFormatError, GraphFormatError)):
            load_weights(p, cycle(4))

    def test_nonpositive_weight_rejected(self, tmp_path):
        p = tmp_path / "w.txt"
        p.write_text("0 1 0\n0 3 1\n1 2 2\n2 3 3\n")
        with pytest.raises(WeightFormatError):
            load_weights(p, cycle(4))
