"""Checkers and certificates for few-distance structure.

Covers four related questions about a finite point set:

- does its distance multiset split into at most k narrow clusters
  (k-distance sets, up to a relative tolerance)?
- how few multiplicative windows [t, t(1+eps)] cover all distances
  (weakly (eps, k)-distance sets)?  The greedy sweep used here is exact
  for one-dimensional covering.
- does the max/min distance ratio of d+2 points in R^d reach Schuette's
  sharp lower bound?
- can the set be certified to have at most (d+1)^k points by recursively
  splitting its distances into "small" and "large" scales?

Also the stored table of maximal two-distance set sizes m_d for d <= 8,
with the binomial bounds C(d+1,2) <= m_d <= C(d+2,2).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, sqrt
from typing import NamedTuple, Sequence

import numpy as np

from .errors import CertificateError, InputError
from .geometry import DEFAULT_REL_TOL, PointSet, distance_multiset


# ---------------------------------------------------------------------------
# distance clustering / k-distance sets


class Cluster(NamedTuple):
    lo: float
    hi: float
    count: int

    @property
    def rel_width(self) -> float:
        return (self.hi - self.lo) / self.lo if self.lo > 0 else float("inf")


@dataclass(frozen=True)
class DistanceClusters:
    """Disjoint, ordered clusters covering a distance multiset."""

    clusters: tuple[Cluster, ...]

    def __len__(self) -> int:
        return len(self.clusters)

    @property
    def total(self) -> int:
        return sum(c.count for c in self.clusters)

    @property
    def anchors(self) -> tuple[float, ...]:
        return tuple(c.lo for c in self.clusters)

    def as_dict(self) -> dict:
        return {
            "clusters": [
                {"lo": c.lo, "hi": c.hi, "count": c.count, "rel_width": c.rel_width}
                for c in self.clusters
            ]
        }


def cluster_distances(values: Sequence[float], rel_tol: float) -> DistanceClusters:
    """Greedy left-to-right clustering: a new cluster opens when the next
    value exceeds (cluster minimum) * (1 + rel_tol)."""
    vals = np.sort(np.asarray(values, dtype=float))
    if vals.size == 0:
        return DistanceClusters(())
    if rel_tol < 0:
        raise InputError("rel_tol must be non-negative")
    clusters = []
    lo = hi = float(vals[0])
    count = 1
    for v in vals[1:]:
        v = float(v)
        if lo > 0 and v <= lo * (1.0 + rel_tol):
            hi = v
            count += 1
        elif lo == 0 and v == 0:
            count += 1
        else:
            clusters.append(Cluster(lo, hi, count))
            lo = hi = v
            count = 1
    clusters.append(Cluster(lo, hi, count))
    return DistanceClusters(tuple(clusters))


class KDistanceResult(NamedTuple):
    ok: bool
    clusters: DistanceClusters


def verify_k_distance_set(
    ps: PointSet, k: int, rel_tol: float = DEFAULT_REL_TOL
) -> KDistanceResult:
    """Does the distance multiset split into <= k clusters of relative
    width <= rel_tol?"""
    if k < 1:
        raise InputError("k must be at least 1")
    dm = distance_multiset(ps)
    clusters = cluster_distances(dm.values, rel_tol)
    ok = len(clusters) <= k and all(c.lo > 0 for c in clusters.clusters)
    return KDistanceResult(ok, clusters)


# ---------------------------------------------------------------------------
# multiplicative window covers / weakly (eps, k)-distance sets


class CoverWindow(NamedTuple):
    anchor: float
    upper: float
    count: int


def minimal_window_cover(
    values: Sequence[float], eps: float, rel_tol: float = DEFAULT_REL_TOL
) -> list[CoverWindow]:
    """The minimum family of windows [t, t(1+eps)] covering all values.

    Greedy sweep: anchor at the smallest uncovered value, absorb
    everything within the window, repeat.  For covering points on a line
    by fixed-ratio windows this greedy is exactly minimal.
    """
    if eps <= 0:
        raise InputError("eps must be positive")
    vals = np.sort(np.asarray(values, dtype=float))
    if vals.size == 0:
        return []
    if not vals[0] > 0:
        raise InputError("a zero distance cannot be covered by a multiplicative window")
    windows = []
    i = 0
    n = vals.size
    while i < n:
        anchor = float(vals[i])
        upper = anchor * (1.0 + eps)
        cutoff = upper * (1.0 + rel_tol)
        j = int(np.searchsorted(vals, cutoff, side="right"))
        windows.append(CoverWindow(anchor, upper, j - i))
        i = j
    return windows


class WeakCover(NamedTuple):
    window_count: int
    anchors: tuple[float, ...]


def verify_weak_eps_k(
    ps: PointSet, eps: float, rel_tol: float = DEFAULT_REL_TOL
) -> WeakCover:
    """Minimum number of multiplicative windows covering all pairwise
    distances of ``ps``, with their anchors."""
    dm = distance_multiset(ps)
    if not dm.min > 0:
        i, j = (int(x) for x in dm.pairs[0])
        raise InputError(f"points {i} and {j} coincide: zero distance is uncoverable")
    windows = minimal_window_cover(dm.values, eps, rel_tol)
    return WeakCover(len(windows), tuple(w.anchor for w in windows))


# ---------------------------------------------------------------------------
# Schuette's ratio bound for d+2 points in R^d


def schuette_bound(d: int) -> float:
    """Sharp lower bound on (max distance)/(min distance) for any d+2
    points in R^d: sqrt(1 + 2/d) for even d, sqrt(1 + 2(d+2)/(d(d+2)-1))
    for odd d."""
    if d < 1:
        raise InputError("d must be at least 1")
    if d % 2 == 0:
        return sqrt(1.0 + 2.0 / d)
    return sqrt(1.0 + 2.0 * (d + 2) / (d * (d + 2) - 1.0))


def check_schuette(ps: PointSet) -> bool:
    """True iff the d+2 points of ``ps`` satisfy the ratio bound."""
    from .geometry import max_min_ratio

    if len(ps) != ps.dim + 2:
        raise InputError(
            f"Schuette check needs exactly dim+2 = {ps.dim + 2} points, got {len(ps)}"
        )
    return max_min_ratio(ps) >= schuette_bound(ps.dim) - 1e-9


# ---------------------------------------------------------------------------
# the m_d table


M_D_VALUES = {1: 3, 2: 5, 3: 6, 4: 10, 5: 16, 6: 27, 7: 29, 8: 45}

# who established each stored value
M_D_SOURCES = {
    1: "elementary",
    2: "Erdos-Kelly 1947",
    3: "Croft 1962",
    4: "Lisonek 1997",
    5: "Lisonek 1997",
    6: "Lisonek 1997",
    7: "Lisonek 1997",
    8: "Lisonek 1997",
}


class MdBounds(NamedTuple):
    value: int | None
    lower: int
    upper: int


def md_table(d: int) -> MdBounds:
    """Maximal two-distance set size in R^d with its binomial bounds.

    Exact values are stored for d <= 8; beyond that only the bounds
    C(d+1, 2) <= m_d <= C(d+2, 2) are returned and ``value`` is None.
    """
    if d < 1:
        raise InputError("d must be at least 1")
    lower = comb(d + 1, 2)
    upper = comb(d + 2, 2)
    value = M_D_VALUES.get(d)
    if value is not None and not lower <= value <= upper:
        raise AssertionError(f"stored m_{d} = {value} violates its bounds")
    return MdBounds(value, lower, upper)


# ---------------------------------------------------------------------------
# decomposition certificate


@dataclass(frozen=True)
class DecompositionNode:
    """One node of the recursive small/large-distance certificate.

    A leaf certifies its members directly (their window anchors span a
    ratio at most D), bounding the cardinality by (d+1)^j for j realized
    windows.  A split partitions the members into equivalence classes
    under "small" distances (window index <= ell) and recurses on each
    class and on one representative per class; its bound is
    class_bound * representatives.bound.  ``failure`` marks any node
    whose cardinality exceeds its bound.
    """

    kind: str  # "leaf" | "split"
    members: tuple[int, ...]
    cardinality: int
    bound: int
    window_anchors: tuple[float, ...]
    failure: bool
    ratio_bounded: bool = False
    ell: int | None = None
    class_bound: int | None = None
    classes: tuple["DecompositionNode", ...] = ()
    representatives: "DecompositionNode | None" = None

    def has_failure(self) -> bool:
        if self.failure:
            return True
        if any(c.has_failure() for c in self.classes):
            return True
        if self.representatives is not None and self.representatives.has_failure():
            return True
        return False

    def as_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "members": list(self.members),
            "cardinality": self.cardinality,
            "bound": self.bound,
            "window_anchors": list(self.window_anchors),
            "failure": self.failure,
        }
        if self.kind == "leaf":
            out["ratio_bounded"] = self.ratio_bounded
        else:
            out["ell"] = self.ell
            out["class_bound"] = self.class_bound
            out["classes"] = [c.as_dict() for c in self.classes]
            out["representatives"] = self.representatives.as_dict()
        return out


def _components(adj: np.ndarray) -> list[list[int]]:
    n = adj.shape[0]
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in np.flatnonzero(adj[v]):
                if not seen[w]:
                    seen[w] = True
                    stack.append(int(w))
        comps.append(sorted(comp))
    return comps


def _transitivity_witness(adj: np.ndarray, comp: list[int]) -> tuple[int, int, int] | None:
    """A triple (a, b, c) with a~b, b~c but not a~c, if one exists."""
    for b in comp:
        nbrs = [v for v in comp if v != b and adj[b, v]]
        for x in range(len(nbrs)):
            for y in range(x + 1, len(nbrs)):
                a, c = nbrs[x], nbrs[y]
                if not adj[a, c]:
                    return a, b, c
    return None


def certify_decomposition(
    ps: PointSet,
    d: int,
    k: int,
    eps: float,
    D: float = 10.0,
    rel_tol: float = DEFAULT_REL_TOL,
) -> DecompositionNode:
    """Build the recursive certificate that ``ps`` has at most (d+1)^k points.

    The set must be weakly (eps, k): its distances must fit in at most k
    multiplicative windows.  At each node the distances are re-clustered;
    if the anchors span a ratio <= D the node is a ratio-bounded leaf,
    otherwise the windows are cut at the first quotient above
    D^(1/(j-1)) and the small-distance equivalence classes are recursed.
    Transitivity of the small-distance relation is checked at runtime
    (it can genuinely fail when eps or the window layout is too loose
    for D); a violation raises CertificateError with the witnessing
    index triple.
    """
    if d != ps.dim:
        raise InputError(f"d = {d} must match the ambient dimension {ps.dim}")
    if k < 1:
        raise InputError("k must be at least 1")
    if not 0 < eps <= 1:
        raise InputError("eps must lie in (0, 1]")
    if not D > 2:
        raise InputError("D must exceed 2")
    if len(ps) < 1:
        raise InputError("need at least one point")
    if len(ps) >= 2:
        cover = verify_weak_eps_k(ps, eps, rel_tol)
        if cover.window_count > k:
            raise InputError(
                f"distances need {cover.window_count} windows, over the budget k={k}"
            )
    return _certify(ps, tuple(range(len(ps))), d, eps, D, rel_tol)


def _certify(
    ps: PointSet,
    members: tuple[int, ...],
    d: int,
    eps: float,
    D: float,
    rel_tol: float,
) -> DecompositionNode:
    m = len(members)
    if m == 1:
        return DecompositionNode(
            kind="leaf",
            members=members,
            cardinality=1,
            bound=1,
            window_anchors=(),
            failure=False,
            ratio_bounded=True,
        )

    sub = ps.subset(members)
    dm = distance_multiset(sub)
    windows = minimal_window_cover(dm.values, eps, rel_tol)
    anchors = tuple(w.anchor for w in windows)
    j = len(windows)

    if anchors[-1] / anchors[0] <= D:
        bound = (d + 1) ** j
        return DecompositionNode(
            kind="leaf",
            members=members,
            cardinality=m,
            bound=bound,
            window_anchors=anchors,
            failure=m > bound,
            ratio_bounded=True,
        )

    threshold = D ** (1.0 / (j - 1))
    ell = next(
        (l for l in range(1, j) if anchors[l] / anchors[l - 1] > threshold), None
    )
    if ell is None:  # impossible: the quotients multiply to anchors[-1]/anchors[0] > D
        raise CertificateError("no window quotient exceeds the split threshold")

    small_hi = windows[ell - 1].upper * (1.0 + rel_tol)
    diff = sub.points[:, None, :] - sub.points[None, :, :]
    dist = np.sqrt(np.einsum("ijc,ijc->ij", diff, diff))
    small = dist <= small_hi
    np.fill_diagonal(small, True)

    comps = _components(small)
    for comp in comps:
        block = small[np.ix_(comp, comp)]
        if not block.all():
            local = _transitivity_witness(small, comp)
            a, b, c = (members[v] for v in local)
            raise CertificateError(
                f"small-distance relation is not transitive on points "
                f"({a}, {b}, {c}); eps/D are too loose for this set",
                witness=(a, b, c),
            )

    comps.sort(key=lambda comp: comp[0])
    classes = tuple(
        _certify(ps, tuple(members[v] for v in comp), d, eps, D, rel_tol)
        for comp in comps
    )
    rep_members = tuple(members[comp[0]] for comp in comps)
    representatives = _certify(ps, rep_members, d, eps, D, rel_tol)

    class_bound = (d + 1) ** ell
    bound = class_bound * representatives.bound
    return DecompositionNode(
        kind="split",
        members=members,
        cardinality=m,
        bound=bound,
        window_anchors=anchors,
        failure=m > bound,
        ell=ell,
        class_bound=class_bound,
        classes=classes,
        representatives=representatives,
    )
