"""Brute-force reference implementations.

Deliberately written as flat loops, independent of the optimized code
paths they cross-check.  Used by the acceptance table and the test
suite; slow on purpose.
"""

from __future__ import annotations

import itertools
import math
from bisect import bisect_left, bisect_right

import numpy as np

from .geometry import PointSet


def flat_mdk_maximum(d: int, k: int) -> int:
    """Maximum of prod C(e_i+1, p_i) * prod (q_j+1) over the full
    parameter space, enumerating every q split (unbalanced included) to
    prove that balancing the progressions never loses."""
    best = 0
    for e in range(d):
        f = d - 1 - e
        for e_parts in _cut_compositions(e):
            p_ranges = [range(1, (e_i + 1) // 2 + 1) for e_i in e_parts]
            for p_parts in itertools.product(*p_ranges):
                p = sum(p_parts)
                if p > k:
                    continue
                base = math.prod(
                    math.comb(e_i + 1, p_i) for e_i, p_i in zip(e_parts, p_parts)
                )
                if f == 0:
                    if base > best:
                        best = base
                    continue
                for q in range(k - p + 1):
                    for q_parts in _nonneg_splits(q, f):
                        v = base * math.prod(x + 1 for x in q_parts)
                        if v > best:
                            best = v
    return best


def _cut_compositions(total):
    if total == 0:
        yield ()
        return
    for r in range(total):
        for cuts in itertools.combinations(range(1, total), r):
            bounds = (0,) + cuts + (total,)
            yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def _nonneg_splits(total, parts):
    """All ways to write ``total`` as an ordered sum of ``parts``
    non-negative integers (stars and bars)."""
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 1 - prev - 1)
        yield tuple(out)


def exhaustive_best_windows(values, k: int, length: float, rel_tol: float = 1e-9) -> int:
    """Optimal k-window coverage by trying every placement of right ends
    at distinct values and merging the covered index ranges."""
    vals = sorted(float(v) for v in values)
    distinct = sorted(set(vals))
    spans = []
    for v in distinct:
        target = v - length
        lo = bisect_left(vals, target - rel_tol * max(1.0, abs(target)))
        hi = bisect_right(vals, v) - 1
        spans.append((lo, hi))
    kk = min(k, len(distinct))
    best = 0
    for combo in itertools.combinations(spans, kk):
        covered = 0
        cur_lo, cur_hi = combo[0]
        for lo, hi in combo[1:]:
            if lo > cur_hi + 1:
                covered += cur_hi - cur_lo + 1
                cur_lo, cur_hi = lo, hi
            else:
                cur_hi = max(cur_hi, hi)
        covered += cur_hi - cur_lo + 1
        if covered > best:
            best = covered
    return best


def brute_minimal_cover(values, eps: float, rel_tol: float = 1e-9) -> int:
    """Smallest number of windows [t, t(1+eps)] covering all values, by
    trying every anchor combination of growing size."""
    vals = sorted(float(v) for v in values)
    distinct = sorted(set(vals))
    for c in range(1, len(distinct) + 1):
        for anchors in itertools.combinations(distinct, c):
            if all(
                any(
                    a * (1.0 - rel_tol) <= v <= a * (1.0 + eps) * (1.0 + rel_tol)
                    for a in anchors
                )
                for v in vals
            ):
                return c
    return len(distinct)


def count_pairs_in_intervals(points, intervals, rel_tol: float = 1e-9) -> int:
    """Naive double loop: pairs whose distance lies in the closed union
    of the given (lo, hi) intervals."""
    pts = [list(map(float, row)) for row in points]
    count = 0
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            dist = math.dist(pts[i], pts[j])
            for lo, hi in intervals:
                if lo * (1.0 - rel_tol) <= dist <= hi * (1.0 + rel_tol):
                    count += 1
                    break
    return count


def cross_pair_count(labels) -> int:
    """Pairs with different class labels, counted one by one."""
    labels = list(labels)
    count = 0
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            if labels[i] != labels[j]:
                count += 1
    return count


def random_separated_set(rng: np.random.Generator, n: int, dim: int, min_sep: float = 1.0) -> PointSet:
    """A random n-point set in R^dim with all pairwise distances at
    least ``min_sep``; resamples in a slowly growing box until the
    separation holds, so the result is a pure function of the rng state."""
    side = max(2.0, 2.5 * n ** (1.0 / dim)) * min_sep
    for attempt in itertools.count():
        pts = rng.uniform(0.0, side * (1.0 + attempt / 10.0), size=(n, dim))
        if n < 2:
            return PointSet(dim, pts)
        diff = pts[:, None, :] - pts[None, :, :]
        dist = np.sqrt(np.einsum("ijc,ijc->ij", diff, diff))
        np.fill_diagonal(dist, np.inf)
        if float(dist.min()) >= min_sep:
            return PointSet(dim, pts)
