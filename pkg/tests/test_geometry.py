"""Distance primitives: exactness, tolerances, and the embedding isometry."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from neardist import (
    InputError,
    PointSet,
    distance,
    distance_multiset,
    duplicate_pairs,
    embed_hyperplane,
    is_separated,
    max_min_ratio,
    min_separation,
)
from neardist.constructions import binomial_simplex_set, regular_simplex, stacked_set

GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0


def line(*xs):
    return PointSet.from_rows([[float(x)] for x in xs])


class TestDistance:
    def test_pythagorean_triple(self):
        assert distance([0, 0], [3, 4]) == 5.0

    def test_identity(self):
        assert distance([1, 2, 3], [1, 2, 3]) == 0.0

    def test_symmetry(self):
        a, b = [0.3, -1.7, 2.0], [5.0, 0.1, -0.4]
        assert distance(a, b) == distance(b, a)

    def test_dimension_mismatch(self):
        with pytest.raises(InputError):
            distance([0, 0], [1, 2, 3])

    def test_disjoint_binomial_supports(self):
        # two points of the 6-point set with disjoint supports sit at sqrt(2)
        ps = binomial_simplex_set(3, 2, 1.0)
        dm = distance_multiset(ps)
        assert math.isclose(dm.max, math.sqrt(2.0), rel_tol=1e-12)

    @given(
        st.lists(
            st.tuples(
                st.floats(-100, 100, allow_nan=False),
                st.floats(-100, 100, allow_nan=False),
                st.floats(-100, 100, allow_nan=False),
            ),
            min_size=3,
            max_size=3,
        )
    )
    def test_triangle_inequality(self, triple):
        a, b, c = triple
        assert distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12


class TestDistanceMultiset:
    def test_collinear(self):
        dm = distance_multiset(line(0, 1, 3))
        assert list(dm.values) == [1.0, 2.0, 3.0]

    def test_unit_square(self):
        square = PointSet.from_rows([[0, 0], [1, 0], [0, 1], [1, 1]])
        dm = distance_multiset(square)
        assert np.allclose(dm.values[:4], 1.0)
        assert np.allclose(dm.values[4:], math.sqrt(2.0))

    def test_pentagon_closed_form(self):
        from neardist.constructions import known_two_distance_set

        dm = distance_multiset(known_two_distance_set(2))
        assert np.allclose(dm.values[:5], 1.0, rtol=1e-12)
        assert np.allclose(dm.values[5:], GOLDEN, rtol=1e-12)

    def test_length_and_sortedness(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            n = int(rng.integers(2, 15))
            d = int(rng.integers(1, 5))
            ps = PointSet(d, rng.normal(size=(n, d)))
            dm = distance_multiset(ps)
            assert len(dm) == n * (n - 1) // 2
            assert np.all(np.diff(dm.values) >= 0)

    def test_pair_provenance(self):
        ps = line(0, 5, 6)
        dm = distance_multiset(ps)
        # values 1 (pair 1,2), 5 (0,1), 6 (0,2)
        assert [tuple(p) for p in dm.pairs] == [(1, 2), (0, 1), (0, 2)]

    def test_needs_two_points(self):
        with pytest.raises(InputError):
            distance_multiset(line(0))

    def test_parallel_enumeration_bit_identical(self, monkeypatch):
        rng = np.random.default_rng(3)
        ps = PointSet(3, rng.normal(size=(600, 3)))
        sequential = distance_multiset(ps)
        monkeypatch.setenv("NEARDIST_THREADS", "4")
        threaded = distance_multiset(ps)
        assert np.array_equal(sequential.values, threaded.values)
        assert np.array_equal(sequential.pairs, threaded.pairs)


class TestSeparation:
    def test_unit_line(self):
        assert min_separation(line(0, 1, 2)) == 1.0

    def test_stacked_default_scale(self):
        from neardist.constructions import known_two_distance_set

        for d, n in [(2, 9), (3, 12)]:
            base = known_two_distance_set(d - 1)
            ps = stacked_set(base, n, float(n * n))
            assert min_separation(ps) >= 1.0
            assert is_separated(ps)

    def test_duplicate_reports_zero(self):
        ps = PointSet.from_rows([[0, 0], [0, 0], [1, 1]])
        assert min_separation(ps) == 0.0
        assert not is_separated(ps)
        assert duplicate_pairs(ps) == [(0, 1)]


class TestMaxMinRatio:
    def test_regular_simplex_is_one(self):
        assert math.isclose(max_min_ratio(regular_simplex(3, 2.0)), 1.0, rel_tol=1e-9)

    def test_collinear(self):
        assert max_min_ratio(line(0, 1, 3)) == 3.0

    def test_duplicates_raise(self):
        with pytest.raises(InputError, match="coincide"):
            max_min_ratio(PointSet.from_rows([[0.0], [0.0]]))

    def test_any_four_planar_points(self):
        # d+2 points in R^d: the square attains the even-d bound sqrt(2)
        rng = np.random.default_rng(11)
        for _ in range(200):
            ps = PointSet(2, rng.uniform(0, 5, size=(4, 2)))
            assert max_min_ratio(ps) >= math.sqrt(2.0) - 1e-9


class TestEmbedHyperplane:
    def test_equilateral_triangle(self):
        s = 3.0 / math.sqrt(2.0)
        tri = PointSet.from_rows(
            [[s, 0, 0], [0, s, 0], [0, 0, s]]
        )  # in the plane x+y+z = s
        flat = embed_hyperplane(tri, [1, 1, 1])
        assert flat.dim == 2
        before = distance_multiset(tri).values
        after = distance_multiset(flat).values
        assert np.allclose(before, after, rtol=1e-9)

    def test_binomial_triangle(self):
        ps = binomial_simplex_set(2, 1, 1.0)
        assert ps.dim == 2
        assert np.allclose(distance_multiset(ps).values, 1.0, rtol=1e-9)

    def test_single_point(self):
        one = PointSet.from_rows([[1.0, 2.0, 3.0]])
        flat = embed_hyperplane(one, [1.0, 2.0, 3.0])
        assert flat.dim == 2 and len(flat) == 1

    def test_off_hyperplane_rejected(self):
        bad = PointSet.from_rows([[1, 0, 0], [0, 1, 0], [0.5, 0.5, 0.5]])
        with pytest.raises(InputError, match="off the hyperplane"):
            embed_hyperplane(bad, [1, 1, 1])

    def test_random_constrained_sets_preserve_multiset(self):
        rng = np.random.default_rng(5)
        for _ in range(25):
            m = int(rng.integers(2, 7))
            n = int(rng.integers(2, 9))
            normal = rng.normal(size=m)
            u = normal / np.linalg.norm(normal)
            c = float(rng.uniform(-3, 3))
            raw = rng.normal(size=(n, m))
            pts = raw - np.outer(raw @ u, u) + c * u[None, :]
            ps = PointSet(m, pts)
            flat = embed_hyperplane(ps, normal)
            assert flat.dim == m - 1
            assert np.allclose(
                distance_multiset(ps).values,
                distance_multiset(flat).values,
                rtol=1e-9,
            )


def test_pointset_rejects_non_finite():
    with pytest.raises(InputError):
        PointSet.from_rows([[0.0], [float("nan")]])


def test_pointset_rejects_ragged_dim():
    with pytest.raises(InputError):
        PointSet(3, [[0.0, 1.0], [1.0, 2.0]])


def test_points_are_immutable():
    ps = line(0, 1)
    with pytest.raises(ValueError):
        ps.points[0, 0] = 5.0
