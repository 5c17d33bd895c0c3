"""Counting pairwise distances in interval unions and Turán arithmetic.

The headline operation places k closed windows of a fixed length over a
sorted distance multiset to cover as many distances as possible.  A
window may be anchored with its right end at an observed value without
loss, which makes the optimum a small dynamic program:

    f(j, i) = max(f(j, i-1), f(j-1, lo(i)-1) + (i - lo(i) + 1))

with lo(i) the least index whose value is >= value_i - L.  Overlapping
windows are allowed and union-counted; the recurrence never double
counts.

Intervals are closed on both ends, and membership uses a relative
tolerance (default 1e-9) on the boundary because the generators in this
package place distances exactly at window anchors.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import NamedTuple, Sequence

import numpy as np

from .errors import InputError, UnsupportedError
from .geometry import DEFAULT_REL_TOL, PointSet, distance_multiset
from .verification import CoverWindow, md_table, minimal_window_cover


def turan_number(n: int, s: int) -> int:
    """Maximum edge count of an n-vertex graph with no complete subgraph
    on s vertices: C(n,2) minus the internal edges of the balanced
    partition into s-1 parts."""
    if s < 2:
        raise InputError("s must be at least 2")
    if n < 0:
        raise InputError("n must be non-negative")
    parts = s - 1
    if parts >= n:
        return comb(n, 2)
    base, extra = divmod(n, parts)
    internal = extra * comb(base + 1, 2) + (parts - extra) * comb(base, 2)
    return comb(n, 2) - internal


@dataclass(frozen=True)
class IntervalFamily:
    """k closed intervals: additive [t, t+L] or multiplicative [t, t(1+eps)]."""

    mode: str
    anchors: tuple[float, ...]
    length: float | None = None
    eps: float | None = None

    def __post_init__(self):
        if self.mode not in ("additive", "multiplicative"):
            raise InputError(f"mode must be additive or multiplicative, got {self.mode!r}")
        anchors = tuple(float(a) for a in self.anchors)
        if not anchors:
            raise InputError("an interval family needs at least one anchor")
        if any(a <= 0 for a in anchors):
            raise InputError("anchors must be positive")
        if any(b <= a for a, b in zip(anchors, anchors[1:])):
            raise InputError("anchors must be strictly increasing")
        if self.mode == "additive":
            if self.length is None or not self.length > 0:
                raise InputError("additive mode needs a positive length")
            if self.eps is not None:
                raise InputError("additive mode takes no eps")
        else:
            if self.eps is None or not self.eps > 0:
                raise InputError("multiplicative mode needs a positive eps")
            if self.length is not None:
                raise InputError("multiplicative mode takes no length")
        object.__setattr__(self, "anchors", anchors)

    @property
    def k(self) -> int:
        return len(self.anchors)

    def upper(self, anchor: float) -> float:
        if self.mode == "additive":
            return anchor + self.length
        return anchor * (1.0 + self.eps)

    def intervals(self) -> list[tuple[float, float]]:
        return [(a, self.upper(a)) for a in self.anchors]

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "anchors": list(self.anchors),
            "length_or_eps": self.length if self.mode == "additive" else self.eps,
        }


def _membership_mask(
    values: np.ndarray, intervals: Sequence[tuple[float, float]], rel_tol: float
) -> np.ndarray:
    mask = np.zeros(values.shape, dtype=bool)
    for lo, hi in intervals:
        mask |= (values >= lo * (1.0 - rel_tol)) & (values <= hi * (1.0 + rel_tol))
    return mask


def count_pairs_in_family(
    ps: PointSet, family: IntervalFamily, rel_tol: float = DEFAULT_REL_TOL
) -> int:
    """Number of pairs whose distance lies in the closed union of the
    family's intervals (a pair in two overlapping intervals counts once)."""
    dm = distance_multiset(ps)
    return int(_membership_mask(dm.values, family.intervals(), rel_tol).sum())


class BestWindows(NamedTuple):
    count: int
    family: IntervalFamily


def best_windows_over_values(
    values: Sequence[float], k: int, length: float, rel_tol: float = DEFAULT_REL_TOL
) -> BestWindows:
    """Optimal k-window coverage of a raw distance multiset.

    The reported family uses the left endpoints of the chosen windows as
    anchors, deduplicated and sorted; ties in the DP are broken toward
    smaller anchors.
    """
    if k < 1:
        raise InputError("k must be at least 1")
    if not length > 0:
        raise InputError("window length must be positive")
    vals = np.sort(np.asarray(values, dtype=float))
    m = vals.size
    if m == 0:
        raise InputError("need at least one distance")

    targets = vals - length
    tol = rel_tol * np.maximum(1.0, np.abs(targets))
    lo = np.searchsorted(vals, targets - tol, side="left")
    cover = np.arange(1, m + 1) - lo  # pairs caught by a window ending at index i

    rows = [[0] * (m + 1) for _ in range(k + 1)]
    for j in range(1, k + 1):
        prev, row = rows[j - 1], rows[j]
        for i in range(1, m + 1):
            take = prev[lo[i - 1]] + int(cover[i - 1])
            skip = row[i - 1]
            row[i] = take if take > skip else skip
    count = rows[k][m]

    # Backtrack, preferring to skip on ties so windows land on the
    # smallest right ends that still achieve the optimum.
    chosen = []
    j, i = k, m
    while j > 0 and i > 0:
        if rows[j][i] == rows[j][i - 1]:
            i -= 1
        else:
            chosen.append(i - 1)
            i = int(lo[i - 1])
            j -= 1
    anchors = sorted({float(vals[lo[c]]) for c in chosen})
    family = IntervalFamily("additive", tuple(anchors), length=float(length))
    return BestWindows(int(count), family)


def best_k_windows(
    ps: PointSet, k: int, length: float, rel_tol: float = DEFAULT_REL_TOL
) -> BestWindows:
    """Maximum number of pairwise distances of ``ps`` coverable by k
    closed windows of the given length, with an optimal family."""
    dm = distance_multiset(ps)
    return best_windows_over_values(dm.values, k, length, rel_tol)


@dataclass(frozen=True)
class SpectrumReport:
    """Window coverage of a point set compared against a Turán bound."""

    n: int
    dim: int
    k: int
    mode: str
    length_or_eps: float
    count: int
    anchors: tuple[float, ...]
    turan_reference: int
    bound_name: str
    histogram: tuple[CoverWindow, ...]

    def __post_init__(self):
        if self.count > comb(self.n, 2):
            raise AssertionError("coverage exceeds the number of pairs")

    @property
    def ratio_count_over_bound(self) -> float:
        return self.count / self.turan_reference if self.turan_reference else float("inf")

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "dim": self.dim,
            "k": self.k,
            "mode": self.mode,
            "length_or_eps": self.length_or_eps,
            "count": self.count,
            "anchors": list(self.anchors),
            "turan_reference": self.turan_reference,
            "bound_name": self.bound_name,
            "ratio_count_over_bound": self.ratio_count_over_bound,
            "histogram": [
                {"anchor": w.anchor, "upper": w.upper, "count": w.count}
                for w in self.histogram
            ],
        }


def _turan_reference(dim: int, n: int, k: int, bound: str) -> int:
    if bound == "turan_m":
        if dim < 2:
            raise UnsupportedError("the two-distance bound needs ambient dimension >= 2")
        md = md_table(dim - 1)
        if md.value is None:
            raise UnsupportedError(
                f"m_{dim - 1} is unknown; the two-distance bound stops at dimension 9"
            )
        return turan_number(n, md.value + 1)
    if bound == "turan_dk":
        return turan_number(n, (dim + 1) ** k + 1)
    raise InputError(f"bound must be turan_m or turan_dk, got {bound!r}")


def spectrum_report(
    ps: PointSet,
    k: int,
    length: float | None = None,
    eps: float | None = None,
    bound: str = "turan_dk",
    rel_tol: float = DEFAULT_REL_TOL,
) -> SpectrumReport:
    """Coverage statistics for k windows over the distance multiset.

    Additive mode (``length`` given) optimizes the window placement with
    the DP above.  Multiplicative mode (``eps`` given) runs the exact
    greedy cover of the whole multiset and reports the k most populated
    windows; the histogram then lists every greedy window, so the full
    spectrum clustering is visible.
    """
    if (length is None) == (eps is None):
        raise InputError("give exactly one of length (additive) or eps (multiplicative)")
    if k < 1:
        raise InputError("k must be at least 1")
    dm = distance_multiset(ps)
    n = len(ps)

    if length is not None:
        count, family = best_windows_over_values(dm.values, k, length, rel_tol)
        histogram = tuple(
            CoverWindow(
                a,
                family.upper(a),
                int(
                    _membership_mask(dm.values, [(a, family.upper(a))], rel_tol).sum()
                ),
            )
            for a in family.anchors
        )
        mode, measure, anchors = "additive", float(length), family.anchors
    else:
        windows = minimal_window_cover(dm.values, eps, rel_tol)
        top = sorted(windows, key=lambda w: (-w.count, w.anchor))[:k]
        top.sort(key=lambda w: w.anchor)
        count = sum(w.count for w in top)
        histogram = tuple(windows)
        mode, measure, anchors = "multiplicative", float(eps), tuple(w.anchor for w in top)

    return SpectrumReport(
        n=n,
        dim=ps.dim,
        k=k,
        mode=mode,
        length_or_eps=measure,
        count=int(count),
        anchors=anchors,
        turan_reference=_turan_reference(ps.dim, n, k, bound),
        bound_name=bound,
        histogram=histogram,
    )
