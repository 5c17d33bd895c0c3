"""Few-distance checkers, the ratio bound, and decomposition certificates."""

import math

import numpy as np
import pytest

from neardist import (
    CertificateError,
    InputError,
    PointSet,
    certify_decomposition,
    check_schuette,
    cluster_distances,
    md_table,
    minimal_window_cover,
    schuette_bound,
    verify_k_distance_set,
    verify_weak_eps_k,
)
from neardist.constructions import (
    binomial_simplex_set,
    known_two_distance_set,
    regular_simplex,
    simplex_sum_set,
)
from neardist.reference import brute_minimal_cover


def line(*xs):
    return PointSet.from_rows([[float(x)] for x in xs])


class TestKDistance:
    def test_pentagon(self):
        ok, clusters = verify_k_distance_set(known_two_distance_set(2), 2)
        assert ok and len(clusters) == 2
        assert clusters.clusters[0].count == 5 and clusters.clusters[1].count == 5

    def test_octahedron(self):
        ok, clusters = verify_k_distance_set(known_two_distance_set(3), 2)
        assert ok
        assert np.allclose(clusters.anchors, [1.0, math.sqrt(2.0)], rtol=1e-9)

    def test_unit_square_is_not_one_distance(self):
        square = PointSet.from_rows([[0, 0], [1, 0], [0, 1], [1, 1]])
        ok, clusters = verify_k_distance_set(square, 1)
        assert not ok and len(clusters) == 2

    def test_multiplicities_sum_to_pairs(self):
        rng = np.random.default_rng(8)
        ps = PointSet(3, rng.normal(size=(9, 3)))
        _, clusters = verify_k_distance_set(ps, 4)
        assert clusters.total == 36

    def test_implies_weak_cover(self):
        # a k-distance set at tolerance tol is weakly (eps, k) for eps >= 2 tol
        for d in range(1, 5):
            ps = known_two_distance_set(d)
            ok, _ = verify_k_distance_set(ps, 2, 1e-9)
            assert ok
            assert verify_weak_eps_k(ps, 2e-9).window_count <= 2


class TestWeakEpsK:
    def test_three_collinear(self):
        cover = verify_weak_eps_k(line(0, 1, 2), 0.1)
        assert cover.window_count == 2
        assert cover.anchors == (1.0, 2.0)

    def test_regular_simplex_one_window(self):
        for eps in (0.001, 0.1, 0.9):
            assert verify_weak_eps_k(regular_simplex(3, 5.0), eps).window_count == 1

    def test_simplex_sum(self):
        ps = simplex_sum_set(2, 2, 0.01)
        assert verify_weak_eps_k(ps, 0.04).window_count <= 2

    def test_duplicates_rejected(self):
        with pytest.raises(InputError, match="coincide"):
            verify_weak_eps_k(PointSet.from_rows([[0.0], [0.0], [1.0]]), 0.1)

    def test_monotone_in_eps(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            values = np.exp(rng.uniform(0, 5, size=int(rng.integers(2, 12))))
            counts = [
                len(minimal_window_cover(values, eps)) for eps in (0.05, 0.1, 0.3, 0.8)
            ]
            assert counts == sorted(counts, reverse=True)

    def test_greedy_is_minimal(self):
        rng = np.random.default_rng(13)
        for _ in range(40):
            values = np.exp(rng.uniform(0, 6, size=int(rng.integers(2, 10))))
            eps = float(rng.uniform(0.05, 0.5))
            assert len(minimal_window_cover(values, eps)) == brute_minimal_cover(values, eps)


class TestSchuette:
    def test_cited_values(self):
        assert math.isclose(schuette_bound(2), math.sqrt(2.0), rel_tol=1e-12)
        assert math.isclose(schuette_bound(3), math.sqrt(12.0 / 7.0), rel_tol=1e-12)
        assert math.isclose(schuette_bound(4), math.sqrt(1.5), rel_tol=1e-12)

    def test_square_attains_planar_bound(self):
        square = PointSet.from_rows([[0, 0], [1, 0], [0, 1], [1, 1]])
        assert check_schuette(square)

    def test_random_sets(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            ps = PointSet(3, rng.uniform(0, 4, size=(5, 3)))
            assert check_schuette(ps)

    def test_wrong_cardinality(self):
        with pytest.raises(InputError):
            check_schuette(regular_simplex(3, 1.0))  # only d+1 points


class TestMdTable:
    def test_stored_values(self):
        assert md_table(2) == (5, 3, 6)
        assert md_table(8) == (45, 36, 45)

    def test_beyond_table_gives_bounds_only(self):
        bounds = md_table(9)
        assert bounds.value is None
        assert (bounds.lower, bounds.upper) == (45, 55)

    def test_all_bounds_hold(self):
        for d in range(1, 9):
            md = md_table(d)
            assert md.lower <= md.value <= md.upper


class TestClusterDistances:
    def test_greedy_splits_on_relative_gap(self):
        clusters = cluster_distances([1.0, 1.0000000001, 2.0, 2.0000000002], 1e-9)
        assert len(clusters) == 2
        assert clusters.total == 4

    def test_rel_width_bounded(self):
        rng = np.random.default_rng(1)
        values = np.exp(rng.uniform(0, 3, size=30))
        for c in cluster_distances(values, 0.05).clusters:
            assert c.rel_width <= 0.05 + 1e-12


def tree_invariants(node):
    assert node.cardinality == len(node.members)
    assert node.cardinality <= node.bound or node.failure
    if node.kind == "split":
        assert sum(c.cardinality for c in node.classes) == node.cardinality
        assert node.representatives.cardinality == len(node.classes)
        assert node.bound == node.class_bound * node.representatives.bound
        # children ordered by smallest member index
        firsts = [c.members[0] for c in node.classes]
        assert firsts == sorted(firsts)
        for c in node.classes:
            tree_invariants(c)
        tree_invariants(node.representatives)


class TestCertifyDecomposition:
    def test_four_collinear_points(self):
        # two tight pairs far apart: split at ell=1 into 2 classes of 2
        ps = simplex_sum_set(1, 2, 0.001)
        tree = certify_decomposition(ps, 1, 2, eps=0.01, D=10.0)
        assert tree.kind == "split" and tree.ell == 1
        assert len(tree.classes) == 2
        assert all(c.cardinality == 2 for c in tree.classes)
        assert tree.bound == 4 and tree.cardinality == 4
        assert not tree.has_failure()
        tree_invariants(tree)

    def test_regular_simplex_leaf(self):
        for d in (1, 2, 3):
            ps = regular_simplex(d, 3.0)
            tree = certify_decomposition(ps, d, 1, eps=0.5, D=10.0)
            assert tree.kind == "leaf" and tree.ratio_bounded
            assert tree.bound == d + 1
            assert not tree.failure

    def test_nine_point_sum(self):
        ps = simplex_sum_set(2, 2, 0.001)
        tree = certify_decomposition(ps, 2, 2, eps=0.01, D=10.0)
        assert tree.kind == "split"
        assert len(tree.classes) == 3
        assert tree.representatives.cardinality == 3
        assert tree.bound == 9
        assert not tree.has_failure()
        tree_invariants(tree)

    @pytest.mark.parametrize("d", [1, 2, 3])
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_simplex_sums_certify_to_full_bound(self, d, k):
        ps = simplex_sum_set(d, k, 0.01)
        tree = certify_decomposition(ps, d, k, eps=0.04, D=10.0)
        assert tree.bound == (d + 1) ** k
        assert not tree.has_failure()
        tree_invariants(tree)

    def test_window_budget_precondition(self):
        ps = line(0, 1, 10, 100)
        with pytest.raises(InputError, match="windows"):
            certify_decomposition(ps, 1, 1, eps=0.01, D=10.0)

    def test_transitivity_violation_reports_triple(self):
        # with eps = 1 the "small" window [1, 2] admits a non-transitive
        # chain 0 - 1 - 2.9 while the far points push the anchor span
        # over D, forcing a split at ell = 1
        ps = line(0.0, 1.0, 2.9, -7.0, -16.0)
        with pytest.raises(CertificateError) as err:
            certify_decomposition(ps, 1, 4, eps=1.0, D=10.0)
        assert err.value.witness == (0, 1, 2)

    def test_parameter_validation(self):
        ps = line(0, 1)
        with pytest.raises(InputError):
            certify_decomposition(ps, 2, 1, eps=0.1, D=10.0)  # d mismatch
        with pytest.raises(InputError):
            certify_decomposition(ps, 1, 1, eps=1.5, D=10.0)  # eps over 1
        with pytest.raises(InputError):
            certify_decomposition(ps, 1, 1, eps=0.1, D=2.0)  # D too small

    def test_serialization_shape(self):
        ps = simplex_sum_set(1, 2, 0.001)
        tree = certify_decomposition(ps, 1, 2, eps=0.01, D=10.0)
        data = tree.as_dict()
        assert data["kind"] == "split"
        assert {"bound", "cardinality", "members", "classes", "representatives"} <= set(data)
        assert data["classes"][0]["kind"] == "leaf"

    def test_binomial_two_distance_leaf(self):
        # ratio sqrt(2) <= D: certified as a single leaf with j = 2 windows
        ps = binomial_simplex_set(3, 2, 1.0)
        tree = certify_decomposition(ps, 3, 2, eps=0.01, D=10.0)
        assert tree.kind == "leaf"
        assert tree.bound == 16
        assert not tree.failure
