"""Point sets in R^d and their pairwise distance multisets.

Everything here is a pure function of immutable inputs, so callers may
fan work out over threads freely.  The ``NEARDIST_THREADS`` environment
variable caps the workers used for pair enumeration on large sets; the
sorted multiset is bit-identical to the sequential result either way
(ties are broken by the (i, j) pair index).

Coordinates are double-precision floats.  Geometric comparisons take an
explicit relative tolerance (default 1e-9): the constructions in this
package have scale ratios up to 1e8, and a relative tolerance survives
scaling where an absolute one would not.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError

DEFAULT_REL_TOL = 1e-9

# Below this size the thread pool costs more than it saves.
_PARALLEL_MIN_POINTS = 512


def worker_count() -> int:
    """Worker cap from NEARDIST_THREADS (default 1, i.e. sequential)."""
    raw = os.environ.get("NEARDIST_THREADS", "1")
    try:
        workers = int(raw)
    except ValueError:
        workers = 1
    return max(1, workers)


@dataclass(frozen=True, eq=False)
class PointSet:
    """An ordered set of n points in R^dim; a point's identity is its index."""

    dim: int
    points: np.ndarray

    def __post_init__(self):
        if not isinstance(self.dim, (int, np.integer)) or self.dim < 1:
            raise InputError(f"dim must be a positive integer, got {self.dim!r}")
        pts = np.array(self.points, dtype=float)
        if pts.ndim == 1 and pts.size == 0:
            pts = pts.reshape(0, self.dim)
        if pts.ndim != 2 or pts.shape[1] != self.dim:
            raise InputError(
                f"points must form an (n, {self.dim}) array, got shape {pts.shape}"
            )
        if pts.size and not np.all(np.isfinite(pts)):
            raise InputError("points must have finite coordinates")
        pts.flags.writeable = False
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[float]], dim: int | None = None) -> "PointSet":
        try:
            pts = np.array([np.asarray(r, dtype=float).ravel() for r in rows], dtype=float)
        except ValueError as exc:
            raise InputError(f"rows do not form a rectangular array: {exc}")
        if dim is None:
            if pts.size == 0:
                raise InputError("dim is required for an empty point set")
            dim = pts.shape[1]
        return cls(int(dim), pts)

    def __len__(self) -> int:
        return self.points.shape[0]

    def __iter__(self):
        return iter(self.points)

    def subset(self, indices: Sequence[int]) -> "PointSet":
        return PointSet(self.dim, self.points[list(indices)])


@dataclass(frozen=True, eq=False)
class DistanceMultiset:
    """All n(n-1)/2 pairwise distances, ascending, with pair provenance.

    ``pairs[r]`` is the (i, j) index pair (i < j) that produced
    ``values[r]``; equal values keep (i, j)-lexicographic order.
    """

    values: np.ndarray
    pairs: np.ndarray

    def __post_init__(self):
        for name in ("values", "pairs"):
            arr = getattr(self, name)
            arr.flags.writeable = False

    def __len__(self) -> int:
        return int(self.values.shape[0])

    @property
    def min(self) -> float:
        return float(self.values[0])

    @property
    def max(self) -> float:
        return float(self.values[-1])


def distance(a: Sequence[float], b: Sequence[float]) -> float:
    """Euclidean distance between two coordinate vectors."""
    va = np.asarray(a, dtype=float)
    vb = np.asarray(b, dtype=float)
    if va.ndim != 1 or vb.ndim != 1 or va.shape != vb.shape:
        raise InputError(
            f"dimension mismatch: got vectors of shape {va.shape} and {vb.shape}"
        )
    if not (np.all(np.isfinite(va)) and np.all(np.isfinite(vb))):
        raise InputError("coordinates must be finite")
    return float(np.linalg.norm(va - vb))


def _pair_distance_block(pts: np.ndarray, start: int, stop: int) -> np.ndarray:
    """Distances for all pairs (i, j), start <= i < stop, j > i, in lex order."""
    chunks = []
    for i in range(start, stop):
        diff = pts[i + 1 :] - pts[i]
        chunks.append(np.sqrt(np.einsum("rc,rc->r", diff, diff)))
    if not chunks:
        return np.empty(0, dtype=float)
    return np.concatenate(chunks)


def distance_multiset(ps: PointSet) -> DistanceMultiset:
    """All C(n, 2) pairwise distances of ``ps``, sorted ascending."""
    n = len(ps)
    if n < 2:
        raise InputError(f"distance multiset needs at least 2 points, got {n}")
    workers = worker_count()
    if workers > 1 and n >= _PARALLEL_MIN_POINTS:
        # Contiguous i-ranges keep the concatenation in (i, j) lex order,
        # so the result is bit-identical to the sequential path.
        edges = np.linspace(0, n - 1, workers + 1).astype(int)
        spans = [(int(a), int(b)) for a, b in zip(edges, edges[1:]) if a < b]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda s: _pair_distance_block(ps.points, *s), spans))
        lex_values = np.concatenate(parts)
    else:
        lex_values = _pair_distance_block(ps.points, 0, n - 1)
    ii, jj = np.triu_indices(n, k=1)
    order = np.argsort(lex_values, kind="stable")
    values = lex_values[order]
    pairs = np.stack([ii[order], jj[order]], axis=1)
    return DistanceMultiset(values, pairs)


def duplicate_pairs(ps: PointSet) -> list[tuple[int, int]]:
    """Index pairs of exactly coincident points (flagged, never an error)."""
    if len(ps) < 2:
        return []
    dm = distance_multiset(ps)
    zero = dm.values == 0.0
    return [tuple(map(int, p)) for p in dm.pairs[zero]]


def min_separation(ps: PointSet) -> float:
    """Smallest pairwise distance; 0 signals duplicate points."""
    return distance_multiset(ps).min


def is_separated(ps: PointSet, threshold: float = 1.0, rel_tol: float = DEFAULT_REL_TOL) -> bool:
    """True when every pairwise distance is at least ``threshold``."""
    if threshold <= 0:
        raise InputError("threshold must be positive")
    return min_separation(ps) >= threshold * (1.0 - rel_tol)


def max_min_ratio(ps: PointSet) -> float:
    """(max pairwise distance) / (min pairwise distance)."""
    dm = distance_multiset(ps)
    if not dm.min > 0.0:
        i, j = (int(x) for x in dm.pairs[0])
        raise InputError(
            f"points {i} and {j} coincide: min distance is 0, ratio undefined"
        )
    return dm.max / dm.min


def embed_hyperplane(
    ps: PointSet, normal: Sequence[float], rel_tol: float = DEFAULT_REL_TOL
) -> PointSet:
    """Isometrically re-coordinatize a set lying in a hyperplane of R^m into R^(m-1).

    The hyperplane is <x, normal> = c, with c estimated from the points
    themselves; every point must satisfy it within ``rel_tol`` (relative
    to the data scale).  The output basis comes from a deterministic
    Gram-Schmidt pass over the standard basis vectors projected onto the
    hyperplane, skipping near-degenerate ones in fixed index order, so
    coordinates are reproducible across runs and platforms.
    """
    m = ps.dim
    if m < 2:
        raise InputError("embedding needs ambient dimension >= 2")
    u = np.asarray(normal, dtype=float)
    if u.shape != (m,):
        raise InputError(f"normal must have {m} entries, got shape {u.shape}")
    norm_u = np.linalg.norm(u)
    if not norm_u > 0:
        raise InputError("normal must be nonzero")
    u = u / norm_u

    offsets = ps.points @ u
    c = float(np.mean(offsets)) if len(ps) else 0.0
    scale = max(1.0, abs(c))
    if len(ps):
        scale = max(scale, float(np.max(np.linalg.norm(ps.points, axis=1))))
        worst = int(np.argmax(np.abs(offsets - c)))
        if abs(offsets[worst] - c) > rel_tol * scale:
            raise InputError(
                f"point {worst} lies off the hyperplane by {abs(offsets[worst] - c):.3g}"
            )

    basis = []
    for idx in range(m):
        v = np.zeros(m)
        v[idx] = 1.0
        for _ in range(2):  # two Gram-Schmidt sweeps for numerical stability
            v -= np.dot(v, u) * u
            for b in basis:
                v -= np.dot(v, b) * b
        nrm = np.linalg.norm(v)
        if nrm > 1e-8:
            basis.append(v / nrm)
        if len(basis) == m - 1:
            break
    if len(basis) != m - 1:
        raise InputError("could not assemble a hyperplane basis from the normal")

    origin = c * u
    frame = np.stack(basis, axis=1)  # (m, m-1)
    new_pts = (ps.points - origin) @ frame
    return PointSet(m - 1, new_pts)
