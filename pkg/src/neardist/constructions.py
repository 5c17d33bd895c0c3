"""Generators for extremal point configurations with few nearly-equal
distances, and the product-set cardinality maximization m(d, k).

The product construction lives in R^(d-1): it crosses "binomial" simplex
factors (all points of R^(e_i+1) with p_i coordinates equal to
lambda_i/sqrt(2), re-embedded in R^(e_i), realizing the p_i distances
lambda_i * sqrt(1..p_i)) with arithmetic progressions, under a cascade
of scales lambda_1 >> ... >> mu_f >= 1.  Every pairwise distance of the
product then falls near one of at most p + q <= k values.  m(d, k) is
the largest cardinality such a product can reach; ``maximize_m``
enumerates the full constraint set.

Stacking a base set over integer heights (``stacked_set``) turns any
few-distance base in R^(d-1) into a separated set in R^d whose
cross-column pair count matches a Turán number.  ``simplex_sum_set`` and
``clustered_turan_set`` do the analogue for multiplicative windows by
summing k regular simplices with sharply decreasing edges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, cos, pi, prod, sin, sqrt
from typing import Iterator, NamedTuple

import numpy as np

from .errors import BudgetError, InputError, UnsupportedError
from .geometry import PointSet, distance_multiset, embed_hyperplane, min_separation
from .spectrum import turan_number
from .verification import cluster_distances, md_table

# Enumeration budget for maximize_m; beyond this the search space and the
# float scales both stop being trustworthy.
_MDK_BUDGET = 12


# ---------------------------------------------------------------------------
# the m(d, k) parameter space


@dataclass(frozen=True)
class MdkWitness:
    """One admissible parameter choice of the product construction.

    d-1 = e + f splits the ambient dimension of the base between ell
    simplex factors (e = sum e_i, each carrying p_i distances, p_i <=
    (e_i+1)/2) and f progression factors (q_j + 1 terms each, the q_j
    balanced).  The total distance budget is sum(p) + sum(q) <= k, and
    the cardinality reached is prod C(e_i+1, p_i) * prod (q_j+1).
    """

    d: int
    k: int
    e_parts: tuple[int, ...]
    p_parts: tuple[int, ...]
    q_parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "e_parts", tuple(int(x) for x in self.e_parts))
        object.__setattr__(self, "p_parts", tuple(int(x) for x in self.p_parts))
        object.__setattr__(self, "q_parts", tuple(int(x) for x in self.q_parts))
        if self.d < 2:
            raise InputError("d must be at least 2")
        if self.k < 1:
            raise InputError("k must be at least 1")
        if len(self.e_parts) != len(self.p_parts):
            raise InputError("e_parts and p_parts must have equal length")
        if any(e_i < 1 for e_i in self.e_parts):
            raise InputError("every e_i must be a positive integer")
        if self.e + self.f != self.d - 1:
            raise InputError(
                f"e + f = {self.e} + {self.f} must equal d - 1 = {self.d - 1}"
            )
        for e_i, p_i in zip(self.e_parts, self.p_parts):
            if p_i < 1 or 2 * p_i > e_i + 1:
                raise InputError(
                    f"p_i must satisfy 1 <= p_i <= (e_i+1)/2, got p={p_i} for e={e_i}"
                )
        if any(q_j < 0 for q_j in self.q_parts):
            raise InputError("every q_j must be non-negative")
        if self.p_total + self.q_total > self.k:
            raise InputError(
                f"distance budget exceeded: p + q = {self.p_total + self.q_total} > k = {self.k}"
            )
        if self.f > 0:
            lo, hi = self.q_total // self.f, -(-self.q_total // self.f)
            if any(q_j not in (lo, hi) for q_j in self.q_parts):
                raise InputError("q_parts must be balanced (each floor(q/f) or ceil(q/f))")

    @property
    def e(self) -> int:
        return sum(self.e_parts)

    @property
    def f(self) -> int:
        return len(self.q_parts)

    @property
    def ell(self) -> int:
        return len(self.e_parts)

    @property
    def p_total(self) -> int:
        return sum(self.p_parts)

    @property
    def q_total(self) -> int:
        return sum(self.q_parts)

    @property
    def value(self) -> int:
        simplices = prod(comb(e_i + 1, p_i) for e_i, p_i in zip(self.e_parts, self.p_parts))
        progressions = prod(q_j + 1 for q_j in self.q_parts)
        return simplices * progressions

    @classmethod
    def balanced(
        cls, d: int, k: int, e_parts: tuple[int, ...], p_parts: tuple[int, ...], q_total: int
    ) -> "MdkWitness":
        """Canonical witness: the first (q mod f) progressions get the ceiling."""
        f = d - 1 - sum(e_parts)
        if f == 0:
            if q_total != 0:
                raise InputError("q must be 0 when f = 0")
            q_parts = ()
        else:
            base, extra = divmod(q_total, f)
            q_parts = (base + 1,) * extra + (base,) * (f - extra)
        return cls(d, k, tuple(e_parts), tuple(p_parts), q_parts)

    def as_dict(self) -> dict:
        return {
            "d": self.d,
            "k": self.k,
            "e": self.e,
            "f": self.f,
            "ell": self.ell,
            "e_parts": list(self.e_parts),
            "p_parts": list(self.p_parts),
            "q_total": self.q_total,
            "q_parts": list(self.q_parts),
            "value": self.value,
        }


def _compositions(total: int) -> Iterator[tuple[int, ...]]:
    """Ordered compositions of ``total`` into positive parts; () for 0."""
    if total == 0:
        yield ()
        return
    for r in range(total):
        for cuts in itertools.combinations(range(1, total), r):
            bounds = (0,) + cuts + (total,)
            yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def iter_witnesses(d: int, k: int) -> Iterator[MdkWitness]:
    """Every admissible witness for the given (d, k)."""
    if d < 2:
        raise InputError("d must be at least 2")
    if k < 1:
        raise InputError("k must be at least 1")
    for e in range(d):
        f = d - 1 - e
        for e_parts in _compositions(e):
            p_ranges = [range(1, (e_i + 1) // 2 + 1) for e_i in e_parts]
            for p_parts in itertools.product(*p_ranges):
                p = sum(p_parts)
                if p > k:
                    continue
                if f == 0:
                    yield MdkWitness(d, k, e_parts, p_parts, ())
                else:
                    for q in range(k - p + 1):
                        yield MdkWitness.balanced(d, k, e_parts, p_parts, q)


class MdkResult(NamedTuple):
    value: int
    witness: MdkWitness


def maximize_m(d: int, k: int) -> MdkResult:
    """The maximum cardinality m(d, k) of the product construction,
    with a witness attaining it.

    Ties are broken toward the lexicographically smallest
    (e, ell, e_parts, p_parts, q_parts).
    """
    if d > _MDK_BUDGET or k > _MDK_BUDGET:
        raise BudgetError(
            f"maximize_m enumerates only d, k <= {_MDK_BUDGET}, got d={d}, k={k}"
        )
    best_value = -1
    best_key = None
    best_witness = None
    for w in iter_witnesses(d, k):
        key = (w.e, w.ell, w.e_parts, w.p_parts, w.q_parts)
        v = w.value
        if v > best_value or (v == best_value and key < best_key):
            best_value, best_key, best_witness = v, key, w
    return MdkResult(best_value, best_witness)


# ---------------------------------------------------------------------------
# elementary generators


def binomial_simplex_set(e: int, p: int, lam: float) -> PointSet:
    """C(e+1, p) points of R^e whose distinct distances are exactly
    lam*sqrt(1), ..., lam*sqrt(p).

    Built as the points of R^(e+1) with p coordinates equal to
    lam/sqrt(2) and the rest 0; they all lie in the hyperplane
    x_1 + ... + x_(e+1) = p*lam/sqrt(2) and are re-embedded in R^e.
    """
    if e < 1:
        raise InputError("e must be at least 1")
    if p < 1 or 2 * p > e + 1:
        raise InputError(f"p must satisfy 1 <= p <= (e+1)/2, got p={p} for e={e}")
    if not lam > 0:
        raise InputError("lambda must be positive")
    coord = lam / sqrt(2.0)
    supports = list(itertools.combinations(range(e + 1), p))
    rows = np.zeros((len(supports), e + 1))
    for r, support in enumerate(supports):
        rows[r, list(support)] = coord
    ambient = PointSet(e + 1, rows)
    return embed_hyperplane(ambient, np.ones(e + 1))


def regular_simplex(d: int, edge: float) -> PointSet:
    """d+1 points of R^d with all pairwise distances equal to ``edge``."""
    if d < 1:
        raise InputError("d must be at least 1")
    if not edge > 0:
        raise InputError("edge must be positive")
    return binomial_simplex_set(d, 1, edge)


def arithmetic_progression(q: int, mu: float) -> PointSet:
    """q+1 collinear points 0, mu, ..., q*mu in R^1."""
    if q < 0:
        raise InputError("q must be non-negative")
    if not mu > 0:
        raise InputError("mu must be positive")
    return PointSet(1, (np.arange(q + 1, dtype=float) * mu).reshape(-1, 1))


# ---------------------------------------------------------------------------
# the product construction


@dataclass(frozen=True)
class ScaleCascade:
    """Geometric ladder of factor scales; ``base`` is the smallest.

    The default ratio 1e4 keeps windows from different factors apart at
    the tolerances used here while staying within double precision for
    d up to 12.
    """

    ratio: float = 1e4
    base: float = 1.0

    def __post_init__(self):
        if not self.ratio > 1:
            raise InputError("cascade ratio must exceed 1")
        if not self.base >= 1:
            raise InputError("cascade base must be at least 1")

    def scales(self, slots: int) -> list[float]:
        """Descending scales for ``slots`` factors, ending at ``base``."""
        return [self.base * self.ratio ** (slots - 1 - s) for s in range(slots)]


def product_set(witness: MdkWitness, cascade: ScaleCascade | None = None) -> PointSet:
    """The Cartesian product of the witness's simplex factors and
    progressions, scales assigned simplices-first in descending order.

    The result has witness.value points in R^(d-1) and every pairwise
    distance near one of at most p + q values.
    """
    cascade = cascade or ScaleCascade()
    slots = witness.ell + witness.f
    scales = cascade.scales(slots)
    factors = []
    for i, (e_i, p_i) in enumerate(zip(witness.e_parts, witness.p_parts)):
        factors.append(binomial_simplex_set(e_i, p_i, scales[i]))
    for j, q_j in enumerate(witness.q_parts):
        factors.append(arithmetic_progression(q_j, scales[witness.ell + j]))
    rows = [
        np.concatenate(combo)
        for combo in itertools.product(*[list(f.points) for f in factors])
    ]
    return PointSet(witness.d - 1, np.array(rows))


def product_window_anchors(
    witness: MdkWitness, cascade: ScaleCascade | None = None
) -> tuple[list[float], float]:
    """Predicted distance clusters of ``product_set`` and the smallest
    multiplicative eps whose windows at those anchors capture all pairs.

    A pair first differing at factor s sits at sqrt(a^2 + t) where a is
    one of the factor's exact distance values and t is at most the sum
    of the squared diameters of the later factors.
    """
    cascade = cascade or ScaleCascade()
    slots = witness.ell + witness.f
    scales = cascade.scales(slots)
    diameters = []
    anchor_groups = []
    for i, (e_i, p_i) in enumerate(zip(witness.e_parts, witness.p_parts)):
        anchor_groups.append([scales[i] * sqrt(j) for j in range(1, p_i + 1)])
        diameters.append(scales[i] * sqrt(p_i))
    for j, q_j in enumerate(witness.q_parts):
        anchor_groups.append([scales[witness.ell + j] * r for r in range(1, q_j + 1)])
        diameters.append(scales[witness.ell + j] * q_j)

    anchors = []
    eps_required = 0.0
    for s, group in enumerate(anchor_groups):
        tail_sq = sum(dm * dm for dm in diameters[s + 1 :])
        for a in group:
            anchors.append(a)
            eps_required = max(eps_required, sqrt(1.0 + tail_sq / (a * a)) - 1.0)
    return sorted(anchors), eps_required


# ---------------------------------------------------------------------------
# stacked sets over a few-distance base


def _balanced_sizes(n: int, m: int) -> list[int]:
    """n split into m classes, each floor(n/m) or ceil(n/m), larger first."""
    base, extra = divmod(n, m)
    return [base + 1] * extra + [base] * (m - extra)


def stacked_set(base: PointSet, n: int, scale: float) -> PointSet:
    """n points of R^d obtained by erecting integer-height columns over
    the scaled base set in R^(d-1).

    Column i holds floor(n/m) or ceil(n/m) points (larger columns at
    lower indices) at heights 0, 1, 2, ...; cross-column pair counts
    then realize the balanced Turán numbers.
    """
    if len(base) == 0:
        raise InputError("base must be nonempty")
    if n < 1:
        raise InputError("n must be at least 1")
    if not scale > 0:
        raise InputError("scale must be positive")
    if len(base) >= 2 and not min_separation(base) > 0:
        raise InputError("base has duplicate points")
    sizes = _balanced_sizes(n, len(base))
    rows = []
    for x, size in zip(base.points, sizes):
        for h in range(size):
            rows.append(np.concatenate([scale * x, [float(h)]]))
    return PointSet(base.dim + 1, np.array(rows))


# ---------------------------------------------------------------------------
# simplex sums and clustered Turán sets (multiplicative windows)


def simplex_edges(k: int, eps1: float) -> list[float]:
    """Edge lengths 1, eps1, ..., eps1^(k-1) of the k summed simplices."""
    return [eps1**p for p in range(k)]


def simplex_sum_windows(k: int, eps1: float, slack: float = 0.0) -> list[tuple[float, float]]:
    """Per-level distance windows of a simplex sum, largest first.

    A pair whose first differing simplex has edge s_p lies within
    [s_p - T_p - slack, s_p + T_p + slack] where T_p is the sum of the
    later edges; ``slack`` accommodates cluster radii around the anchors.
    """
    edges = simplex_edges(k, eps1)
    windows = []
    for p in range(k):
        tail = sum(edges[p + 1 :])
        windows.append((edges[p] - tail - slack, edges[p] + tail + slack))
    return windows


def default_eps1(eps: float) -> float:
    """An eps1 provably small enough that every simplex-sum window has
    ratio at most 1 + eps: the geometric tail gives the closed-form
    condition eps1/(1 - eps1) <= eps/(2 + eps)."""
    if not eps > 0:
        raise InputError("eps must be positive")
    return min(0.01, eps / 4.0)


def eps1_max(eps: float) -> float:
    """Largest eps1 satisfying the window-ratio condition for ``eps``."""
    if not eps > 0:
        raise InputError("eps must be positive")
    return eps / (2.0 + 2.0 * eps)


def simplex_sum_set(d: int, k: int, eps1: float = 0.01) -> PointSet:
    """(d+1)^k points of R^d: all sums of one vertex from each of k
    regular simplices with edges 1, eps1, ..., eps1^(k-1).

    Every pairwise distance lands in one of k sharply separated windows,
    so the set is weakly (eps, k) for any eps above the window ratios.
    """
    if d < 1:
        raise InputError("d must be at least 1")
    if k < 1:
        raise InputError("k must be at least 1")
    if not 0 < eps1 < 1.0 / 3.0:
        raise InputError("eps1 must lie in (0, 1/3) so the windows stay positive")
    vertex_sets = [regular_simplex(d, edge).points for edge in simplex_edges(k, eps1)]
    rows = [
        sum(vertex_sets[p][combo[p]] for p in range(k))
        for combo in itertools.product(range(d + 1), repeat=k)
    ]
    return PointSet(d, np.array(rows))


def clustered_turan_set(d: int, k: int, eps1: float, n: int) -> PointSet:
    """n points in (d+1)^k balanced clusters around the simplex-sum
    points; cross-cluster pairs realize T(n, (d+1)^k + 1).

    Cluster member j sits at offset (j * eps1^k / n) along the first
    axis from its anchor, staying inside the eps1^k-neighbourhood, so
    all cross-cluster distances remain inside the k windows.
    """
    if n < 1:
        raise InputError("n must be at least 1")
    anchors = simplex_sum_set(d, k, eps1)
    sizes = _balanced_sizes(n, len(anchors))
    step = eps1**k / n
    rows = []
    for anchor, size in zip(anchors.points, sizes):
        for j in range(size):
            row = anchor.copy()
            row[0] += j * step
            rows.append(row)
    return PointSet(d, np.array(rows))


def columns_set(t1: float, t2: float, n: int) -> PointSet:
    """n points in three vertical unit-spaced columns at abscissas 0, t1
    and t1+t2, giving T(n, 4) >= floor(n^2/3) cross pairs whose
    distances sit near t1, t2 and t1+t2."""
    if not (t1 > 0 and t2 > 0):
        raise InputError("t1 and t2 must be positive")
    if n < 3:
        raise InputError("n must be at least 3")
    xs = [0.0, float(t1), float(t1) + float(t2)]
    sizes = _balanced_sizes(n, 3)
    rows = []
    for x, size in zip(xs, sizes):
        for h in range(size):
            rows.append([x, float(h)])
    return PointSet(2, np.array(rows))


def known_two_distance_set(d: int) -> PointSet:
    """A maximum two-distance set of size m_d, exact for d <= 4:
    three collinear points, the regular pentagon, the regular octahedron,
    and the 10-point binomial set in R^4.  Minimum distance 1."""
    if d == 1:
        return PointSet.from_rows([[0.0], [1.0], [2.0]])
    if d == 2:
        radius = 0.5 / sin(pi / 5.0)
        rows = [
            [radius * cos(2.0 * pi * i / 5.0), radius * sin(2.0 * pi * i / 5.0)]
            for i in range(5)
        ]
        return PointSet(2, np.array(rows))
    if d in (3, 4):
        return binomial_simplex_set(d, 2, 1.0)
    raise UnsupportedError(
        f"maximal two-distance sets are stored exactly only for d <= 4, got d={d}"
    )


# ---------------------------------------------------------------------------
# one front door for generation + metadata sidecars


def _distinct_distances(ps: PointSet, rel_tol: float = 1e-9) -> list[float]:
    dm = distance_multiset(ps)
    return [c.lo for c in cluster_distances(dm.values, rel_tol).clusters]


def generate_construction(construction: str, **params) -> tuple[PointSet, dict]:
    """Build a named construction and its metadata sidecar.

    The sidecar records the construction name, its parameters, the
    expected cardinality and, where the construction predicts them, the
    window anchors and the cross-class pair count those windows must
    reproduce.  Warnings flag parameter choices that break the window
    guarantees without invalidating the emitted points.
    """
    meta: dict = {"construction": construction, "parameters": dict(params)}

    if construction == "regular_simplex":
        d, edge = int(params["d"]), float(params.get("edge", 1.0))
        ps = regular_simplex(d, edge)
        meta.update(
            expected_cardinality=d + 1,
            expected_window_anchors=[edge],
            window_mode="multiplicative",
            window_eps=1e-9,
            expected_cross_pairs=comb(d + 1, 2),
        )
    elif construction == "binomial_simplex":
        e, p, lam = int(params["e"]), int(params["p"]), float(params.get("lam", 1.0))
        ps = binomial_simplex_set(e, p, lam)
        meta.update(
            expected_cardinality=comb(e + 1, p),
            expected_window_anchors=[lam * sqrt(j) for j in range(1, p + 1)],
            window_mode="multiplicative",
            window_eps=1e-9,
            expected_cross_pairs=comb(comb(e + 1, p), 2),
        )
    elif construction == "progression":
        q, mu = int(params["q"]), float(params.get("mu", 1.0))
        ps = arithmetic_progression(q, mu)
        meta.update(
            expected_cardinality=q + 1,
            expected_window_anchors=[mu * r for r in range(1, q + 1)],
            window_mode="multiplicative",
            window_eps=1e-9,
            expected_cross_pairs=comb(q + 1, 2),
        )
    elif construction == "product":
        witness = params["witness"]
        cascade = params.get("cascade") or ScaleCascade(
            ratio=float(params.get("ratio", 1e4)), base=float(params.get("base", 1.0))
        )
        ps = product_set(witness, cascade)
        anchors, eps_req = product_window_anchors(witness, cascade)
        meta["parameters"] = {
            "witness": witness.as_dict(),
            "ratio": cascade.ratio,
            "base": cascade.base,
        }
        meta.update(
            expected_cardinality=witness.value,
            expected_window_anchors=anchors,
            window_mode="multiplicative",
            window_eps=max(eps_req, 1e-12),
            expected_cross_pairs=comb(witness.value, 2),
        )
    elif construction == "stacked":
        base = params["base"]
        n, scale = int(params["n"]), float(params["scale"])
        ps = stacked_set(base, n, scale)
        sizes = _balanced_sizes(n, len(base))
        cross = comb(n, 2) - sum(comb(s, 2) for s in sizes)
        anchors = [scale * delta for delta in _distinct_distances(base)] if len(base) > 1 else []
        meta["parameters"] = {"n": n, "scale": scale, "base_size": len(base), "base_dim": base.dim}
        meta.update(
            expected_cardinality=n,
            expected_window_anchors=anchors,
            window_mode="additive",
            window_length=1.0,
            expected_cross_pairs=cross,
        )
        if len(base) > 1:
            min_cross = scale * min(_distinct_distances(base))
            if (n - 1) ** 2 > 2.0 * min_cross:
                meta.setdefault("warnings", []).append(
                    "scale is too small for unit windows to hold all cross-column pairs"
                )
    elif construction == "simplex_sum":
        d, k = int(params["d"]), int(params["k"])
        eps1 = float(params.get("eps1", 0.01))
        ps = simplex_sum_set(d, k, eps1)
        windows = simplex_sum_windows(k, eps1)
        eps_req = max(hi / lo - 1.0 for lo, hi in windows)
        meta.update(
            expected_cardinality=(d + 1) ** k,
            expected_window_anchors=sorted(lo for lo, _ in windows),
            window_mode="multiplicative",
            window_eps=max(eps_req, 1e-12),
            expected_cross_pairs=comb((d + 1) ** k, 2),
        )
    elif construction == "clustered_turan":
        d, k, n = int(params["d"]), int(params["k"]), int(params["n"])
        eps1 = float(params.get("eps1", 0.01))
        ps = clustered_turan_set(d, k, eps1, n)
        windows = simplex_sum_windows(k, eps1, slack=eps1**k)
        eps_req = max(hi / lo - 1.0 for lo, hi in windows)
        meta.update(
            expected_cardinality=n,
            expected_window_anchors=sorted(lo for lo, _ in windows),
            window_mode="multiplicative",
            window_eps=eps_req,
            expected_cross_pairs=turan_number(n, (d + 1) ** k + 1),
        )
    elif construction == "columns":
        n = int(params["n"])
        t1 = float(params.get("t1", n * n))
        t2 = float(params.get("t2", n * n))
        ps = columns_set(t1, t2, n)
        sizes = _balanced_sizes(n, 3)
        meta["parameters"] = {"n": n, "t1": t1, "t2": t2}
        meta.update(
            expected_cardinality=n,
            expected_window_anchors=sorted({t1, t2, t1 + t2}),
            window_mode="additive",
            window_length=1.0,
            expected_cross_pairs=comb(n, 2) - sum(comb(s, 2) for s in sizes),
        )
        warnings = []
        if t1 < n * n:
            warnings.append("t1 < n^2: cross-column distances may leave the unit windows")
        if t2 < n * n:
            warnings.append("t2 < n^2: cross-column distances may leave the unit windows")
        if warnings:
            meta["warnings"] = warnings
    elif construction == "two_distance":
        d = int(params["d"])
        ps = known_two_distance_set(d)
        meta.update(
            expected_cardinality=md_table(d).value,
            expected_window_anchors=_distinct_distances(ps),
            window_mode="multiplicative",
            window_eps=1e-9,
            expected_cross_pairs=comb(len(ps), 2),
        )
    else:
        raise InputError(f"unknown construction {construction!r}")

    return ps, meta
