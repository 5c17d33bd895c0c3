"""Window coverage counting, the placement DP, and Turán arithmetic."""

import json
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st

from neardist import (
    InputError,
    IntervalFamily,
    PointSet,
    UnsupportedError,
    best_k_windows,
    best_windows_over_values,
    count_pairs_in_family,
    distance_multiset,
    spectrum_report,
    turan_number,
)
from neardist.constructions import (
    generate_construction,
    known_two_distance_set,
    stacked_set,
)
from neardist.reference import exhaustive_best_windows, random_separated_set


def line(*xs):
    return PointSet.from_rows([[float(x)] for x in xs])


class TestTuranNumber:
    def test_small_values(self):
        assert turan_number(6, 3) == 9
        assert turan_number(30, 4) == 300
        assert turan_number(5, 7) == 10  # complete graph, no K7 possible

    def test_complete_when_s_exceeds_n(self):
        for n in range(1, 12):
            assert turan_number(n, n + 1) == comb(n, 2)
        assert turan_number(0, 2) == 0

    @given(st.integers(2, 200), st.integers(2, 12))
    def test_recurrence(self, n, s):
        # T(n, s) = T(n-1, s) + (n-1) - floor((n-1)/(s-1))
        assert turan_number(n, s) == turan_number(n - 1, s) + (n - 1) - (n - 1) // (s - 1)

    def test_invalid_s(self):
        with pytest.raises(InputError):
            turan_number(5, 1)


class TestIntervalFamily:
    def test_anchor_order_enforced(self):
        with pytest.raises(InputError):
            IntervalFamily("additive", (2.0, 1.0), length=1.0)

    def test_mode_parameter_pairing(self):
        with pytest.raises(InputError):
            IntervalFamily("additive", (1.0,), eps=0.1)
        with pytest.raises(InputError):
            IntervalFamily("multiplicative", (1.0,), length=1.0)

    def test_boundary_tolerance(self):
        fam = IntervalFamily("additive", (1.0,), length=1.0)
        ps = line(0, 1, 2)  # distances 1, 1, 2: both endpoints closed
        assert count_pairs_in_family(ps, fam) == 3


class TestCountPairs:
    def test_single_window(self):
        fam = IntervalFamily("additive", (1.0,), length=0.5)
        assert count_pairs_in_family(line(0, 1, 2), fam) == 2

    def test_two_windows(self):
        fam = IntervalFamily("additive", (1.0, 2.0), length=0.5)
        assert count_pairs_in_family(line(0, 1, 2), fam) == 3

    def test_overlapping_windows_count_once(self):
        fam = IntervalFamily("additive", (0.8, 1.0), length=0.5)
        assert count_pairs_in_family(line(0, 1), fam) == 1

    def test_clustered_set_with_emitted_anchors(self):
        ps, meta = generate_construction("clustered_turan", d=2, k=1, eps1=0.01, n=9)
        fam = IntervalFamily(
            "multiplicative",
            tuple(meta["expected_window_anchors"]),
            eps=meta["window_eps"],
        )
        assert count_pairs_in_family(ps, fam) == turan_number(9, 4) == 27


class TestBestKWindows:
    def test_multiset_example(self):
        got = best_windows_over_values([1.0, 1.0, 2.0, 10.0, 10.5], 2, 1.0)
        assert got.count == 5
        # anchors are the smallest values the chosen windows cover
        assert got.family.anchors == (1.0, 10.0)

    def test_one_wide_window_covers_everything(self):
        rng = np.random.default_rng(1)
        ps = PointSet(2, rng.uniform(0, 5, size=(8, 2)))
        dm = distance_multiset(ps)
        spread = dm.max - dm.min
        got = best_k_windows(ps, 1, spread + 1.0)
        assert got.count == comb(8, 2)

    def test_stacked_pentagon(self):
        n = 25
        ps = stacked_set(known_two_distance_set(2), n, float(n * n))
        got = best_k_windows(ps, 2, 1.0)
        assert got.count == turan_number(n, 6) == 250

    def test_monotone_in_k_and_length(self):
        rng = np.random.default_rng(9)
        for _ in range(30):
            ps = random_separated_set(rng, int(rng.integers(4, 11)), 2)
            values = distance_multiset(ps).values
            counts_k = [best_windows_over_values(values, k, 1.0).count for k in (1, 2, 3)]
            assert counts_k == sorted(counts_k)
            counts_len = [
                best_windows_over_values(values, 2, length).count
                for length in (0.5, 1.0, 2.0)
            ]
            assert counts_len == sorted(counts_len)

    def test_matches_exhaustive_oracle(self):
        rng = np.random.default_rng(4)
        for _ in range(60):
            n = int(rng.integers(4, 13))
            dim = int(rng.integers(1, 4))
            k = int(rng.integers(1, 4))
            length = float(rng.choice([0.5, 1.0, 2.0]))
            ps = random_separated_set(rng, n, dim)
            values = distance_multiset(ps).values
            assert (
                best_windows_over_values(values, k, length).count
                == exhaustive_best_windows(values, k, length)
            )

    def test_family_recount_equals_dp_count(self):
        rng = np.random.default_rng(12)
        for _ in range(40):
            ps = random_separated_set(rng, int(rng.integers(4, 12)), 2)
            k = int(rng.integers(1, 4))
            count, family = best_k_windows(ps, k, 1.0)
            assert count_pairs_in_family(ps, family) == count

    def test_ties_prefer_smaller_anchors(self):
        got = best_windows_over_values([1.0, 5.0], 1, 0.5)
        assert got.count == 1
        assert got.family.anchors == (1.0,)


class TestSpectrumReport:
    def test_stacked_additive_report(self):
        n = 25
        ps = stacked_set(known_two_distance_set(2), n, float(n * n))
        report = spectrum_report(ps, 2, length=1.0, bound="turan_m")
        assert report.count == report.turan_reference == 250
        assert report.ratio_count_over_bound == 1.0
        assert report.mode == "additive"

    def test_clustered_multiplicative_report(self):
        ps, meta = generate_construction("clustered_turan", d=1, k=2, eps1=0.01, n=8)
        report = spectrum_report(ps, 2, eps=meta["window_eps"], bound="turan_dk")
        assert report.turan_reference == turan_number(8, 5) == 24
        assert report.count == 24
        assert len(report.anchors) == 2

    def test_count_bounded_by_pairs(self):
        rng = np.random.default_rng(3)
        ps = random_separated_set(rng, 10, 2)
        report = spectrum_report(ps, 3, length=2.0, bound="turan_dk")
        assert report.count <= comb(10, 2)

    def test_requires_one_mode(self):
        ps = line(0, 1, 2)
        with pytest.raises(InputError):
            spectrum_report(ps, 1)
        with pytest.raises(InputError):
            spectrum_report(ps, 1, length=1.0, eps=0.1)

    def test_turan_m_unsupported_dimension(self):
        ps = line(0, 1, 2)  # dim 1: m_0 is meaningless
        with pytest.raises(UnsupportedError):
            spectrum_report(ps, 1, length=1.0, bound="turan_m")
        wide = PointSet(11, np.eye(11)[:3] * 5)  # m_10 unknown
        with pytest.raises(UnsupportedError):
            spectrum_report(wide, 1, length=1.0, bound="turan_m")

    def test_report_serializes(self):
        ps = line(0, 1, 2, 3)
        report = spectrum_report(ps, 2, length=1.0, bound="turan_dk")
        payload = json.loads(json.dumps(report.as_dict()))
        assert payload["n"] == 4
        assert payload["bound_name"] == "turan_dk"
        assert {"anchor", "upper", "count"} <= set(payload["histogram"][0])
