"""Complete-bipartite frameworks: affine dependencies, the boundary set C,
quadric vanishing spaces, and the stress space computed two ways.

For a realization (A, B) of K_{m,n} the stress space Omega(A,B) is the left
kernel of the rigidity matrix.  Independently, when the boundary set
C = (A in hull(B), B in hull(A)) affinely spans R^d, its dimension is given
by the Bolker-Roth count

    dim Omega = dim D(A) * dim D(B) + dim Q(C) + k - d(d+3)/2 - 1,

with D the affine-dependency space and Q(C) the space of quadratic
polynomials vanishing on C.  Both routes are kept and cross-checked; the
classifier reduces infinitesimal rigidity of spanning realizations to
``dim Q(C) == 0`` (vertices on no common quadric surface).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from rigidlab.framework import (
    Framework,
    Point,
    Realization,
    affine_span_dim_points,
    complete_bipartite,
    rigidity_matrix,
    trivial_motion_space,
)
from rigidlab.linalg import (
    DEFAULT_POLICY,
    Matrix,
    RankPolicy,
    kernel_basis,
    left_kernel_basis,
)


class CNotSpanningError(ValueError):
    """The boundary set C does not affinely span R^d, so the dimension
    formula's hypothesis fails.  Carries the partial report when available."""

    def __init__(self, message: str, report: "BolkerRothReport | None" = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class BipartiteRealization:
    """An (A, B) realization of K_{m,n} in R^dim."""

    dim: int
    A: tuple
    B: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "A", tuple(tuple(p) for p in self.A))
        object.__setattr__(self, "B", tuple(tuple(p) for p in self.B))
        if not self.A or not self.B:
            raise ValueError("both sides need at least one point")
        for p in self.A + self.B:
            if len(p) != self.dim:
                raise ValueError(f"point {p} is not {self.dim}-dimensional")

    @property
    def m(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.B)

    def all_points(self) -> tuple:
        return self.A + self.B

    def to_framework(self) -> Framework:
        return Framework(
            complete_bipartite(self.m, self.n),
            Realization(self.dim, self.all_points()),
        )


@dataclass(frozen=True)
class BolkerRothReport:
    dimDA: int
    dimDB: int
    C_points: tuple
    k: int
    dimQC: int
    dim_omega_formula: Optional[int]
    dim_omega_direct: int
    kernel_dim_via_stress: int
    classification: str

    def __post_init__(self) -> None:
        if self.k != len(self.C_points):
            raise ValueError("k must equal the number of boundary points")
        if self.classification not in (
            "infinitesimally_rigid",
            "vertices_on_quadric",
            "C_not_spanning",
        ):
            raise ValueError(f"unknown classification {self.classification!r}")


def affine_span_dim(points: Sequence[Point], policy: RankPolicy | None = None) -> int:
    return affine_span_dim_points(points, policy)


def affine_dependency_space(
    points: Sequence[Point], policy: RankPolicy | None = None
) -> tuple[list, int]:
    """Basis and dimension of D(A): weights with zero sum annihilating the
    points, i.e. the kernel of the coordinates stacked over a row of ones.
    Satisfies dim D(A) + dim span(A) = k - 1 exactly."""
    points = list(points)
    if not points:
        raise ValueError("need at least one point")
    d = len(points[0])
    rows = [[p[t] for p in points] for t in range(d)]
    rows.append([1] * len(points))
    basis = kernel_basis(Matrix.from_rows(rows, cols=len(points)), policy)
    return basis, len(basis)


def _in_affine_hull(point: Point, hull_points: Sequence[Point], policy: RankPolicy) -> bool:
    # membership = appending the point does not raise the span rank
    base = affine_span_dim_points(hull_points, policy)
    return affine_span_dim_points(list(hull_points) + [point], policy) == base


def boundary_set(br: BipartiteRealization, policy: RankPolicy | None = None) -> list:
    """C = (points of A inside hull(B), points of B inside hull(A)),
    A-part first, each part in input order."""
    policy = policy or DEFAULT_POLICY
    out = [a for a in br.A if _in_affine_hull(a, br.B, policy)]
    out += [b for b in br.B if _in_affine_hull(b, br.A, policy)]
    return out


def quadric_coefficient_count(d: int) -> int:
    return d * (d + 3) // 2 + 1


def quadric_monomials(point: Point) -> list:
    """Row of quadric monomials at a point: x_i x_j (i <= j, lexicographic),
    then x_i, then 1.  This order is fixed package-wide."""
    d = len(point)
    row = [point[i] * point[j] for i in range(d) for j in range(i, d)]
    row += list(point)
    row.append(1)
    return row


def quadric_eval(coeffs, point: Point):
    row = quadric_monomials(point)
    return sum(c * x for c, x in zip(coeffs, row))


def quadric_space(
    points: Sequence[Point], dim: int, policy: RankPolicy | None = None
) -> tuple[list, int]:
    """Basis and dimension of Q(points): coefficient vectors of quadratic
    polynomials vanishing at every point.  The empty set leaves the full
    coefficient space of dimension d(d+3)/2 + 1."""
    rows = [quadric_monomials(p) for p in points]
    basis = kernel_basis(Matrix.from_rows(rows, cols=quadric_coefficient_count(dim)), policy)
    return basis, len(basis)


def _reshape_stress(vec, m: int, n: int):
    if isinstance(vec, np.ndarray):
        return vec.reshape(m, n)
    return tuple(tuple(vec[i * n + j] for j in range(n)) for i in range(m))


def stress_space_direct(
    br: BipartiteRealization, policy: RankPolicy | None = None
) -> tuple[list, int]:
    """Stress space as the left kernel of the K_{m,n} rigidity matrix,
    reshaped to m-by-n tables (row i = weights on edges a_i b_j)."""
    basis = left_kernel_basis(rigidity_matrix(br.to_framework()), policy)
    tables = [_reshape_stress(v, br.m, br.n) for v in basis]
    return tables, len(tables)


def stress_balance_residual(br: BipartiteRealization, table) -> float:
    """Max norm of the two balance equations: sum_j w_ij (a_i - b_j) = 0 for
    every i and sum_i w_ij (b_j - a_i) = 0 for every j."""
    A = np.array([[float(x) for x in p] for p in br.A])
    B = np.array([[float(x) for x in p] for p in br.B])
    w = np.array([[float(x) for x in row] for row in table]) if not isinstance(table, np.ndarray) else table
    worst = 0.0
    for i in range(br.m):
        r = np.zeros(br.dim)
        for j in range(br.n):
            r += w[i, j] * (A[i] - B[j])
        worst = max(worst, float(np.linalg.norm(r)))
    for j in range(br.n):
        r = np.zeros(br.dim)
        for i in range(br.m):
            r += w[i, j] * (B[j] - A[i])
        worst = max(worst, float(np.linalg.norm(r)))
    return worst


def stress_space_dim_bolker_roth(
    br: BipartiteRealization, policy: RankPolicy | None = None
) -> int:
    """Stress dimension by the Bolker-Roth count; requires hull(C) = R^d."""
    policy = policy or DEFAULT_POLICY
    C = boundary_set(br, policy)
    if not C or affine_span_dim_points(C, policy) < br.dim:
        raise CNotSpanningError(
            "the boundary set C does not affinely span R^d; the dimension formula does not apply"
        )
    _, dimDA = affine_dependency_space(br.A, policy)
    _, dimDB = affine_dependency_space(br.B, policy)
    _, dimQC = quadric_space(C, br.dim, policy)
    k = len(C)
    return dimDA * dimDB + dimQC + k - quadric_coefficient_count(br.dim)


def kernel_dim_via_stress(br: BipartiteRealization, policy: RankPolicy | None = None) -> int:
    """Kernel dimension of the rigidity matrix through the stress identity
    dim ker = dim Omega + (m+n)d - mn."""
    _, dim_omega = stress_space_direct(br, policy)
    return dim_omega + (br.m + br.n) * br.dim - br.m * br.n


def classify(br: BipartiteRealization, policy: RankPolicy | None = None) -> BolkerRothReport:
    """Full report with the formula-vs-direct cross-check and the quadric
    dichotomy: a spanning realization is infinitesimally rigid unless its
    m+n vertices lie on a common quadric surface (dim Q(C) > 0).

    Raises :class:`CNotSpanningError` (carrying the partial report) when a
    side fails to affinely span R^d, which is exactly when C fails to.
    """
    policy = policy or DEFAULT_POLICY
    _, dimDA = affine_dependency_space(br.A, policy)
    _, dimDB = affine_dependency_space(br.B, policy)
    C = tuple(boundary_set(br, policy))
    k = len(C)
    _, dimQC = quadric_space(C, br.dim, policy)
    _, dim_omega_direct = stress_space_direct(br, policy)
    kernel_dim = dim_omega_direct + (br.m + br.n) * br.dim - br.m * br.n

    spanning = bool(C) and affine_span_dim_points(C, policy) == br.dim
    if not spanning:
        report = BolkerRothReport(
            dimDA=dimDA,
            dimDB=dimDB,
            C_points=C,
            k=k,
            dimQC=dimQC,
            dim_omega_formula=None,
            dim_omega_direct=dim_omega_direct,
            kernel_dim_via_stress=kernel_dim,
            classification="C_not_spanning",
        )
        sides = []
        if affine_span_dim_points(br.A, policy) < br.dim:
            sides.append("A")
        if affine_span_dim_points(br.B, policy) < br.dim:
            sides.append("B")
        detail = f" (side {' and '.join(sides)} not spanning)" if sides else ""
        raise CNotSpanningError(
            f"realization violates the spanning hypothesis{detail}", report
        )

    dim_omega_formula = dimDA * dimDB + dimQC + k - quadric_coefficient_count(br.dim)
    return BolkerRothReport(
        dimDA=dimDA,
        dimDB=dimDB,
        C_points=C,
        k=k,
        dimQC=dimQC,
        dim_omega_formula=dim_omega_formula,
        dim_omega_direct=dim_omega_direct,
        kernel_dim_via_stress=kernel_dim,
        classification="infinitesimally_rigid" if dimQC == 0 else "vertices_on_quadric",
    )


def trivial_dim_of(br: BipartiteRealization, policy: RankPolicy | None = None) -> int:
    _, dim = trivial_motion_space(Realization(br.dim, br.all_points()), policy)
    return dim
