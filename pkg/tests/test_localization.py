from fractions import Fraction

import numpy as np
import pytest

from gwmirror.exceptions import SingularWeightError, UnsupportedDegreeError
from gwmirror.localization import (
    FixedGraph,
    WeightVector,
    enumerate_fixed_graphs,
    graph_contribution,
    localize,
    random_weights,
    twisted_integral_localized,
)
from gwmirror.schubert import lines_on_hypersurface


def weights(*values) -> WeightVector:
    return WeightVector(tuple(Fraction(v) for v in values))


@pytest.mark.unit
class TestWeights:
    """Torus weight vectors"""

    def test_distinct_integers_in_range(self, rng):
        for n in range(1, 8):
            w = random_weights(n, rng)
            assert len(w) == n + 1
            assert len(set(w.values)) == n + 1
            assert all(-50 <= v <= 50 and v.denominator == 1 for v in w.values)

    def test_repeated_weights_rejected(self):
        with pytest.raises(SingularWeightError):
            weights(1, 2, 1)

    def test_seeded_draws_repeat(self):
        a = random_weights(4, np.random.default_rng(7))
        b = random_weights(4, np.random.default_rng(7))
        assert a == b


@pytest.mark.unit
class TestFixedGraphs:
    """Fixed-point graph enumeration"""

    def test_single_line_in_p1(self):
        graphs = enumerate_fixed_graphs(1, 1)
        assert len(graphs) == 1
        assert graphs[0].vertices == (0, 1)

    def test_lines_in_p4(self):
        assert len(enumerate_fixed_graphs(4, 1)) == 10

    def test_conics_in_p4(self):
        graphs = enumerate_fixed_graphs(4, 2)
        double_covers = [g for g in graphs if len(g.edges) == 1]
        paths = [g for g in graphs if len(g.edges) == 2 and g.vertices[1] != g.vertices[2]]
        folded = [g for g in graphs if len(g.edges) == 2 and g.vertices[1] == g.vertices[2]]
        assert len(double_covers) == 10
        assert len(paths) == 30
        assert len(folded) == 20
        assert len(graphs) == 60
        assert all(g.automorphism_order == 2 for g in double_covers + folded)
        assert all(g.automorphism_order == 1 for g in paths)
        assert all(g.degree == 2 for g in graphs)

    def test_path_valences(self):
        path = FixedGraph(vertices=(2, 0, 4), edges=((0, 1, 1), (0, 2, 1)))
        assert [path.valence(v) for v in range(3)] == [2, 1, 1]
        assert path.flags(0) == [(0, 1), (4, 1)]

    def test_degree_three_unsupported(self):
        with pytest.raises(UnsupportedDegreeError):
            enumerate_fixed_graphs(4, 3)

    def test_loop_edge_rejected(self):
        with pytest.raises(ValueError):
            FixedGraph(vertices=(1, 1), edges=((0, 1, 1),))


@pytest.mark.integration
class TestGraphSums:
    """Graph sums against known counts"""

    def test_line_in_plane(self):
        assert twisted_integral_localized(2, [1], 1, weights(0, 1, 2)) == 1

    def test_single_graph_by_hand(self):
        # lambda_i lambda_j / ((lambda_i - lambda_k)(lambda_j - lambda_k))
        graph = FixedGraph(vertices=(1, 2), edges=((0, 1, 1),))
        assert graph_contribution(graph, 2, [1], weights(3, 5, 7)) == Fraction(5 * 7, 2 * 4)

    @pytest.mark.parametrize("l, n", [(3, 3), (5, 4), (7, 5)])
    def test_degree_one_agrees_with_schubert(self, l, n):
        result = localize(n, [l], 1, seed=11, trials=3)
        assert result.value == lines_on_hypersurface(l, n)
        assert len(result.weight_trials) == 3

    @pytest.mark.slow
    def test_quintic_degree_two_matches_instantons(self, quintic_pipeline):
        table, _ = quintic_pipeline
        result = localize(4, [5], 2, seed=20030, trials=3)
        assert result.value == table.K[2]
        assert result.value == Fraction(4876875, 8)

    def test_conic_in_plane(self):
        # a conic in P^2 cut by one quadric equation is the conic itself
        for w in (weights(1, 2, 5), weights(2, 5, 11), weights(-7, 4, 19)):
            assert twisted_integral_localized(2, [2], 2, w) == 1

    @pytest.mark.parametrize("seed", [0, 1, 7, 42, 20030])
    def test_degree_two_weight_independence(self, seed):
        result = localize(4, [5], 2, seed=seed, trials=3)
        assert result.value == Fraction(4876875, 8)

    def test_weight_independence_across_seeds(self):
        values = {localize(3, [3], 1, seed=seed, trials=1).value for seed in range(5)}
        assert values == {27}

    @pytest.mark.parametrize("degrees, expected", [([3, 3], 1053), ([2, 4], 1280)])
    def test_complete_intersection_lines(self, degrees, expected):
        assert localize(5, degrees, 1, seed=3).value == expected

    def test_degree_mismatch_returns_zero(self, caplog):
        result = localize(3, [2], 1, seed=1)
        assert result.value == 0
        assert result.note
        assert twisted_integral_localized(3, [2], 1, weights(1, 2, 3, 4)) == 0
        assert "degree mismatch" in caplog.text

    def test_singular_node_weight(self):
        # the two-line graph through p_0 divides by the fiber of E at p_0
        graph = FixedGraph(vertices=(0, 1, 2), edges=((0, 1, 1), (0, 2, 1)))
        with pytest.raises(SingularWeightError):
            graph_contribution(graph, 4, [5], weights(0, 1, 2, 3, 7))
