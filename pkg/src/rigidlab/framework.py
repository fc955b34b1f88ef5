"""General bar-joint frameworks: edge function, rigidity matrix, trivial
motions, the infinitesimal-rigidity decision, and equivalence/congruence
tests.

A framework is a graph together with a realization of its vertices in
``R^d``.  The rigidity matrix is the Jacobian of the squared-edge-length
map; its kernel holds the infinitesimal motions, and the framework is
infinitesimally rigid exactly when that kernel is spanned by the trivial
motions induced by rigid motions of the ambient space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from rigidlab.linalg import (
    DEFAULT_POLICY,
    Matrix,
    RankPolicy,
    Scalar,
    kernel_basis,
    rank,
)

Point = tuple


@dataclass(frozen=True)
class Graph:
    """Vertices ``0..vertex_count-1`` plus an ordered sequence of edges.

    The edge order is part of the data: it fixes the coordinate order of the
    edge function and of the rigidity-matrix rows.
    """

    vertex_count: int
    edges: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        seen = set()
        for e in self.edges:
            if len(e) != 2:
                raise ValueError(f"edge {e} is not a pair")
            i, j = e
            if i == j:
                raise ValueError(f"loop edge {e}")
            if not (0 <= i < self.vertex_count and 0 <= j < self.vertex_count):
                raise ValueError(f"edge {e} out of range")
            key = frozenset(e)
            if key in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(key)


def complete_bipartite(m: int, n: int) -> Graph:
    """K_{m,n} with parts ``0..m-1`` and ``m..m+n-1``; edges (i, m+j) in
    lexicographic order, matching the m-by-n stress-table layout."""
    edges = tuple((i, m + j) for i in range(m) for j in range(n))
    return Graph(m + n, edges)


@dataclass(frozen=True)
class Realization:
    """Points in ``R^dim``, one per vertex of the companion graph."""

    dim: int
    points: tuple

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")
        object.__setattr__(self, "points", tuple(tuple(p) for p in self.points))
        for p in self.points:
            if len(p) != self.dim:
                raise ValueError(f"point {p} is not {self.dim}-dimensional")


@dataclass(frozen=True)
class Framework:
    graph: Graph
    realization: Realization

    def __post_init__(self) -> None:
        if len(self.realization.points) != self.graph.vertex_count:
            raise ValueError("realization length does not match vertex count")

    @property
    def dim(self) -> int:
        return self.realization.dim


@dataclass(frozen=True)
class RigidityReport:
    kernel_dim: int
    trivial_dim: int
    affine_span_dim: int
    is_infinitesimally_rigid: bool
    policy: RankPolicy

    def __post_init__(self) -> None:
        if self.is_infinitesimally_rigid != (self.kernel_dim == self.trivial_dim):
            raise ValueError("rigidity flag inconsistent with dimensions")


@dataclass(frozen=True)
class RegularityProbe:
    """One-sided randomized regularity test: can refute, never prove."""

    rank_at_p: int
    max_rank_seen: int
    is_regular_estimate: bool


def _sq_dist(p: Point, q: Point) -> Scalar:
    return sum((a - b) * (a - b) for a, b in zip(p, q))


def edge_function(f: Framework) -> list:
    """Squared edge lengths in the graph's fixed edge order."""
    pts = f.realization.points
    return [_sq_dist(pts[i], pts[j]) for i, j in f.graph.edges]


def rigidity_matrix(f: Framework) -> Matrix:
    """Jacobian of the edge function: |E| rows, d|V| columns.

    The row for edge {i,j} carries the block 2(p_i - p_j) in the vertex-i
    columns and 2(p_j - p_i) in the vertex-j columns.
    """
    d = f.dim
    pts = f.realization.points
    rows = []
    for i, j in f.graph.edges:
        row = [0] * (d * f.graph.vertex_count)
        for t in range(d):
            diff = pts[i][t] - pts[j][t]
            row[d * i + t] = 2 * diff
            row[d * j + t] = -2 * diff
        rows.append(row)
    return Matrix.from_rows(rows, cols=d * f.graph.vertex_count)


def affine_span_dim_points(points: Sequence[Point], policy: RankPolicy | None = None) -> int:
    """Dimension of the affine span: rank of the differences to the first point."""
    points = list(points)
    if not points:
        raise ValueError("need at least one point")
    base = points[0]
    d = len(base)
    rows = [[p[t] - base[t] for t in range(d)] for p in points[1:]]
    return rank(Matrix.from_rows(rows, cols=d), policy)


def trivial_motion_space(
    r: Realization, policy: RankPolicy | None = None
) -> tuple[list, int]:
    """Spanning set of the trivial motions at ``r`` and its dimension.

    The set contains d translation fields and d(d-1)/2 rotation fields
    (vertex i receives S @ p_i for each elementary skew generator S).  The
    dimension is the rank of that spanning set; for affinely spanning point
    sets it equals d(d+1)/2, and degenerate realizations come out smaller
    without special-casing.
    """
    d = r.dim
    nv = len(r.points)
    if nv == 0:
        raise ValueError("need at least one point")
    fields = []
    for t in range(d):
        v = [0] * (d * nv)
        for i in range(nv):
            v[d * i + t] = 1
        fields.append(v)
    for s, t in itertools.combinations(range(d), 2):
        # elementary skew generator: e_s -> e_t, e_t -> -e_s
        v = [0] * (d * nv)
        for i, p in enumerate(r.points):
            v[d * i + s] = -p[t]
            v[d * i + t] = p[s]
        fields.append(v)
    dim = rank(Matrix.from_rows(fields, cols=d * nv), policy)
    return fields, dim


def infinitesimal_rigidity(f: Framework, policy: RankPolicy | None = None) -> RigidityReport:
    """Kernel vs trivial-motion comparison; rigid iff the two dimensions agree."""
    policy = policy or DEFAULT_POLICY
    r = rigidity_matrix(f)
    kernel_dim = f.dim * f.graph.vertex_count - rank(r, policy)
    _, trivial_dim = trivial_motion_space(f.realization, policy)
    return RigidityReport(
        kernel_dim=kernel_dim,
        trivial_dim=trivial_dim,
        affine_span_dim=affine_span_dim_points(f.realization.points, policy),
        is_infinitesimally_rigid=kernel_dim == trivial_dim,
        policy=policy,
    )


def are_equivalent(f1: Framework, f2: Framework, tol: float = 1e-9) -> bool:
    """Same squared length on every graph edge, within ``tol`` (use tol=0 for
    exact rational comparison)."""
    if f1.graph != f2.graph:
        raise ValueError("equivalence requires the same graph")
    return all(abs(a - b) <= tol for a, b in zip(edge_function(f1), edge_function(f2)))


def are_congruent(f1: Framework, f2: Framework, tol: float = 1e-9) -> bool:
    """Same squared distance on every vertex pair, edges or not."""
    r1, r2 = f1.realization, f2.realization
    if len(r1.points) != len(r2.points) or r1.dim != r2.dim:
        raise ValueError("congruence requires matching vertex count and dimension")
    for i, j in itertools.combinations(range(len(r1.points)), 2):
        if abs(_sq_dist(r1.points[i], r1.points[j]) - _sq_dist(r2.points[i], r2.points[j])) > tol:
            return False
    return True


def _perturbed_points(points, magnitude: float, rng, exact: bool):
    out = []
    denom = 1 << 30
    for p in points:
        if exact:
            mag = Fraction(magnitude)
            q = tuple(
                x + mag * Fraction(int(rng.integers(-denom, denom + 1)), denom) for x in p
            )
        else:
            q = tuple(float(x) + magnitude * float(rng.uniform(-1.0, 1.0)) for x in p)
        out.append(q)
    return tuple(out)


def regularity_probe(
    f: Framework,
    trials: int = 20,
    perturbation: float = 1e-3,
    policy: RankPolicy | None = None,
) -> RegularityProbe:
    """Compare rank at p against the max rank over seeded random perturbations.

    ``is_regular_estimate`` is one-sided: a strictly larger perturbed rank
    refutes regularity, equality proves nothing.  In exact mode the
    perturbations are rational so the probe ranks stay exact.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    policy = policy or DEFAULT_POLICY
    rank_at_p = rank(rigidity_matrix(f), policy)
    rng = np.random.default_rng(policy.seed)
    exact = policy.mode == "exact"
    max_rank = rank_at_p
    for _ in range(trials):
        pts = _perturbed_points(f.realization.points, perturbation, rng, exact)
        g = Framework(f.graph, Realization(f.dim, pts))
        max_rank = max(max_rank, rank(rigidity_matrix(g), policy))
    return RegularityProbe(
        rank_at_p=rank_at_p,
        max_rank_seen=max_rank,
        is_regular_estimate=rank_at_p == max_rank,
    )


def kernel_dim_of(f: Framework, policy: RankPolicy | None = None) -> int:
    return f.dim * f.graph.vertex_count - rank(rigidity_matrix(f), policy)


def rigidity_kernel(f: Framework, policy: RankPolicy | None = None) -> list:
    """Basis of the infinitesimal motions (kernel of the rigidity matrix)."""
    return kernel_basis(rigidity_matrix(f), policy)
