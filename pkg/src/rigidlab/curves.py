"""Parametric curve families: block-rotation helices, polynomial curves,
derivative-norm profiling, quadric/hyperplane containment, and the sliding
families that produce equivalent bipartite realizations.

A helix here is the closed form

    gamma(t) = (rho_1 cos(lambda_1 t + theta_1), rho_1 sin(lambda_1 t + theta_1),
                ..., t * w) + offset,

whose j-th derivative has constant norm for every j >= 1 (and j = 0 too
when the linear part and offset vanish).  Such curves admit a
translation-invariant bipartite distance law |c1(x) - c2(y)| = h(x - y),
which is what makes sliding families equivalent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from rigidlab.bipartite import (
    BipartiteRealization,
    quadric_coefficient_count,
    quadric_monomials,
    quadric_space,
)
from rigidlab.framework import affine_span_dim_points, are_congruent
from rigidlab.linalg import DEFAULT_POLICY, Matrix, RankPolicy, kernel_basis, vector_as_floats


class DomainError(ValueError):
    """Curve parameter outside the handle's domain."""


@dataclass(frozen=True)
class HelixSpec:
    """Parameters of the block-rotation helix form.

    Each block contributes a rotating plane (radius rho, angular speed
    lambda, phase theta); ``w`` drives the remaining d - 2*|blocks| linear
    coordinates, and ``offset`` is a plain translation.
    """

    dim: int
    blocks: tuple
    w: tuple = ()
    offset: tuple | None = None

    def __post_init__(self) -> None:
        blocks = tuple(
            (float(r), float(l), float(t) % (2.0 * math.pi)) for r, l, t in self.blocks
        )
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "w", tuple(float(x) for x in self.w))
        if 2 * len(blocks) > self.dim:
            raise ValueError("too many rotation blocks for the dimension")
        if len(self.w) != self.dim - 2 * len(blocks):
            raise ValueError("linear part has the wrong length")
        for rho, lam, _ in blocks:
            if rho == 0.0 or lam == 0.0:
                raise ValueError("rho and lambda must be nonzero")
        offset = (0.0,) * self.dim if self.offset is None else tuple(float(x) for x in self.offset)
        if len(offset) != self.dim:
            raise ValueError("offset has the wrong length")
        object.__setattr__(self, "offset", offset)

    def point(self, t: float) -> tuple:
        out = []
        for rho, lam, theta in self.blocks:
            u = lam * t + theta
            out.append(rho * math.cos(u))
            out.append(rho * math.sin(u))
        out.extend(wi * t for wi in self.w)
        return tuple(x + o for x, o in zip(out, self.offset))

    def derivative(self, t: float, order: int) -> tuple:
        # each block rotates by order*pi/2 and scales by lambda^order
        out = []
        for rho, lam, theta in self.blocks:
            u = lam * t + theta + order * math.pi / 2.0
            scale = rho * lam**order
            out.append(scale * math.cos(u))
            out.append(scale * math.sin(u))
        linear = self.w if order == 1 else (0.0,) * len(self.w)
        out.extend(linear)
        return tuple(out)

    def derivative_norm(self, order: int) -> float:
        """Closed-form constant norm of the order-th derivative (order >= 1)."""
        s = sum((rho * lam**order) ** 2 for rho, lam, _ in self.blocks)
        if order == 1:
            s += sum(wi * wi for wi in self.w)
        return math.sqrt(s)


def _poly_eval(coeffs: Sequence, t):
    # Horner, ascending coefficients; preserves exact arithmetic for
    # rational coefficients and parameters
    acc = 0
    for c in reversed(list(coeffs)):
        acc = acc * t + c
    return acc


def _poly_derivative(coeffs: Sequence, order: int) -> list:
    cur = list(coeffs)
    for _ in range(order):
        cur = [k * c for k, c in enumerate(cur)][1:]
        if not cur:
            return [0]
    return cur


@dataclass(frozen=True)
class CurveHandle:
    """One parametric curve: a helix spec, per-coordinate polynomials, or a
    table of (t, point) samples.  Exactly one kind is populated."""

    kind: str
    domain: tuple
    helix_spec: Optional[HelixSpec] = None
    coefficients: Optional[tuple] = None
    samples: Optional[tuple] = None

    def __post_init__(self) -> None:
        if self.kind not in ("helix", "polynomial", "tabulated"):
            raise ValueError(f"unknown curve kind {self.kind!r}")
        lo, hi = self.domain
        if not lo < hi:
            raise ValueError("domain must satisfy t_lo < t_hi")
        object.__setattr__(self, "domain", (lo, hi))
        populated = [
            x is not None for x in (self.helix_spec, self.coefficients, self.samples)
        ]
        if sum(populated) != 1:
            raise ValueError("exactly one curve representation must be populated")
        if self.kind == "helix" and self.helix_spec is None:
            raise ValueError("helix kind requires a helix spec")
        if self.kind == "polynomial":
            if self.coefficients is None:
                raise ValueError("polynomial kind requires coefficients")
            object.__setattr__(
                self, "coefficients", tuple(tuple(c) for c in self.coefficients)
            )
        if self.kind == "tabulated":
            if self.samples is None:
                raise ValueError("tabulated kind requires samples")
            samples = tuple((t, tuple(p)) for t, p in self.samples)
            if len(samples) < 2 or any(
                samples[i][0] >= samples[i + 1][0] for i in range(len(samples) - 1)
            ):
                raise ValueError("tabulated samples must be sorted with distinct parameters")
            object.__setattr__(self, "samples", samples)

    @classmethod
    def helix(cls, spec: HelixSpec, domain) -> "CurveHandle":
        return cls(kind="helix", domain=tuple(domain), helix_spec=spec)

    @classmethod
    def polynomial(cls, coefficients, domain) -> "CurveHandle":
        return cls(kind="polynomial", domain=tuple(domain), coefficients=tuple(tuple(c) for c in coefficients))

    @classmethod
    def tabulated(cls, samples, domain=None) -> "CurveHandle":
        samples = tuple((t, tuple(p)) for t, p in samples)
        if domain is None:
            domain = (samples[0][0], samples[-1][0])
        return cls(kind="tabulated", domain=tuple(domain), samples=samples)

    @property
    def dim(self) -> int:
        if self.kind == "helix":
            return self.helix_spec.dim
        if self.kind == "polynomial":
            return len(self.coefficients)
        return len(self.samples[0][1])

    def _check_domain(self, t) -> None:
        lo, hi = self.domain
        if not (lo <= t <= hi):
            raise DomainError(f"parameter {t} outside domain [{lo}, {hi}]")


def curve_point(c: CurveHandle, t) -> tuple:
    c._check_domain(t)
    if c.kind == "helix":
        return c.helix_spec.point(float(t))
    if c.kind == "polynomial":
        return tuple(_poly_eval(coeffs, t) for coeffs in c.coefficients)
    # tabulated: piecewise-linear interpolation between bracketing samples
    ts = [s[0] for s in c.samples]
    idx = max(0, min(len(ts) - 2, int(np.searchsorted(ts, t)) - 1))
    t0, p0 = c.samples[idx]
    t1, p1 = c.samples[idx + 1]
    lam = (t - t0) / (t1 - t0)
    return tuple(a + lam * (b - a) for a, b in zip(p0, p1))


def curve_derivative(c: CurveHandle, t, order: int) -> tuple:
    if order < 1:
        raise ValueError("derivative order must be >= 1")
    c._check_domain(t)
    if c.kind == "helix":
        return c.helix_spec.derivative(float(t), order)
    if c.kind == "polynomial":
        return tuple(_poly_eval(_poly_derivative(coeffs, order), t) for coeffs in c.coefficients)
    raise ValueError("derivatives are undefined for tabulated curves")


def curve_samples(c: CurveHandle, count: int, *, lo=None, hi=None) -> list:
    """Equispaced sample points on the curve (endpoints included)."""
    a, b = c.domain
    a = a if lo is None else lo
    b = b if hi is None else hi
    ts = np.linspace(a, b, count)
    return [curve_point(c, float(t)) for t in ts]


@dataclass(frozen=True)
class DerivativeRecord:
    order: int
    min_norm: float
    max_norm: float
    spread: float


@dataclass(frozen=True)
class DerivativeProfile:
    records: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(self.records))
        orders = [r.order for r in self.records]
        if orders != sorted(orders):
            raise ValueError("profile records must be sorted by order")
        for r in self.records:
            if r.spread < 0:
                raise ValueError("spread must be nonnegative")


@dataclass(frozen=True)
class QkResult:
    is_member_estimate: bool
    profile: DerivativeProfile


def qk_membership(c: CurveHandle, k: int, grid_size: int = 64, tol: float = 1e-9) -> QkResult:
    """Sampled test of the constant-derivative-norm classes: membership in
    class k requires constant |D^j gamma| for all j >= k; orders k..k+3 are
    profiled on an equispaced grid.  One-sided: can refute, not prove.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    lo, hi = c.domain
    ts = np.linspace(lo, hi, grid_size)
    records = []
    ok = True
    for order in range(k, k + 4):
        norms = []
        for t in ts:
            vec = curve_point(c, float(t)) if order == 0 else curve_derivative(c, float(t), order)
            norms.append(math.sqrt(sum(float(x) ** 2 for x in vec)))
        mn, mx = min(norms), max(norms)
        records.append(DerivativeRecord(order=order, min_norm=mn, max_norm=mx, spread=mx - mn))
        if mx - mn > tol * mx:
            ok = False
    return QkResult(is_member_estimate=ok, profile=DerivativeProfile(tuple(records)))


def quadric_fit_residual(coeffs, points) -> float:
    """Relative residual of a quadric at sample points:
    max |q(p)| / (|coeffs| * |monomials(p)|)."""
    v = vector_as_floats(coeffs)
    nv = float(np.linalg.norm(v))
    worst = 0.0
    for p in points:
        row = np.array([float(x) for x in quadric_monomials(p)])
        worst = max(worst, abs(float(row @ v)) / (nv * float(np.linalg.norm(row))))
    return worst


def _sampled_quadric_space(point_sets, dim: int, policy: RankPolicy):
    points = [p for pts in point_sets for p in pts]
    return quadric_space(points, dim, policy)


def quadric_containment(
    c: CurveHandle,
    sample_count: int,
    policy: RankPolicy | None = None,
    validation_tol: float = 1e-9,
):
    """A quadric vanishing on the curve, or None.

    Fits the quadric vanishing space on ``sample_count`` equispaced samples
    and validates the returned coefficient vector on 3x fresh (offset)
    samples; containment in a quadric does not by itself certify constant
    derivative norms.
    """
    policy = policy or DEFAULT_POLICY
    d = c.dim
    if sample_count <= quadric_coefficient_count(d):
        raise ValueError(
            f"sample_count must exceed the coefficient count {quadric_coefficient_count(d)}"
        )
    pts = curve_samples(c, sample_count)
    basis, dim_q = quadric_space(pts, d, policy)
    if dim_q == 0:
        return None
    coeffs = basis[0]
    fresh = _fresh_samples(c, 3 * sample_count)
    res = quadric_fit_residual(coeffs, fresh)
    if res > validation_tol:
        raise ValueError(
            f"fitted quadric fails fresh-sample validation (residual {res:.3e}); "
            "increase sample_count"
        )
    return coeffs


def common_quadric_containment(
    curves: Sequence[CurveHandle],
    sample_count: int,
    policy: RankPolicy | None = None,
    validation_tol: float = 1e-9,
):
    """A single quadric vanishing on every curve in the list, or None."""
    policy = policy or DEFAULT_POLICY
    dims = {c.dim for c in curves}
    if len(dims) != 1:
        raise ValueError("curves must share the ambient dimension")
    d = dims.pop()
    if sample_count <= quadric_coefficient_count(d):
        raise ValueError("sample_count must exceed the coefficient count")
    basis, dim_q = _sampled_quadric_space(
        [curve_samples(c, sample_count) for c in curves], d, policy
    )
    if dim_q == 0:
        return None
    coeffs = basis[0]
    fresh = [p for c in curves for p in _fresh_samples(c, 3 * sample_count)]
    if quadric_fit_residual(coeffs, fresh) > validation_tol:
        return None
    return coeffs


def _fresh_samples(c: CurveHandle, count: int) -> list:
    # offset interior grid, disjoint from the equispaced fit samples
    lo, hi = c.domain
    span = hi - lo
    ts = np.linspace(lo + 0.37 * span / count, hi - 0.41 * span / count, count)
    return [curve_point(c, float(t)) for t in ts]


def hyperplane_containment(
    c: CurveHandle, sample_count: int, policy: RankPolicy | None = None
):
    """(normal, offset) of a hyperplane containing the curve samples, or None."""
    policy = policy or DEFAULT_POLICY
    d = c.dim
    if sample_count < d + 2:
        raise ValueError("sample_count must be at least d + 2")
    pts = curve_samples(c, sample_count)
    rows = [list(p) + [1] for p in pts]
    basis = kernel_basis(Matrix.from_rows(rows, cols=d + 1), policy)
    if not basis:
        return None
    vec = vector_as_floats(basis[0])
    return tuple(vec[:d]), float(vec[d])


@dataclass(frozen=True, eq=False)
class TranslationInvarianceResult:
    holds: bool
    table: dict


def translation_invariance_check(
    c1: CurveHandle, c2: CurveHandle, grid: int = 64, tol: float = 1e-9
) -> TranslationInvarianceResult:
    """Sampled test of the translation-invariant distance law
    |c1(x) - c2(y)| = h(x - y): bins (x, y) grid pairs by x - y and checks
    that each bin's distance spread stays within tol."""
    lo = max(c1.domain[0], c2.domain[0])
    hi = min(c1.domain[1], c2.domain[1])
    if not lo < hi:
        raise ValueError("curves share no parameter interval")
    ts = np.linspace(lo, hi, grid)
    res = (hi - lo) / (grid - 1)
    p1 = [curve_point(c1, float(t)) for t in ts]
    p2 = [curve_point(c2, float(t)) for t in ts]
    bins: dict[int, list[float]] = {}
    for i in range(grid):
        for j in range(grid):
            dist = math.sqrt(sum((a - b) ** 2 for a, b in zip(p1[i], p2[j])))
            bins.setdefault(i - j, []).append(dist)
    table = {k * res: max(v) - min(v) for k, v in sorted(bins.items())}
    holds = all(spread <= tol for spread in table.values())
    return TranslationInvarianceResult(holds=holds, table=table)


def sliding_family(
    c1: CurveHandle,
    c2: CurveHandle,
    x0: Sequence[float],
    y0: Sequence[float],
    deltas: Sequence[float],
) -> list[BipartiteRealization]:
    """Realizations (A_delta, B_delta) with a_i = c1(x0_i + delta) and
    b_j = c2(y0_j + delta).  When the two curves obey a translation-invariant
    distance law the members are pairwise equivalent frameworks."""
    if c1.dim != c2.dim:
        raise ValueError("curves must share the ambient dimension")
    d = c1.dim
    m, n = len(x0), len(y0)
    if m < d + 1 or n < d + 1:
        raise ValueError(f"need at least d+1 = {d + 1} parameters on each side")
    out = []
    for delta in deltas:
        A = [curve_point(c1, x + delta) for x in x0]
        B = [curve_point(c2, y + delta) for y in y0]
        out.append(BipartiteRealization(d, A, B))
    return out


def family_equivalence(realizations: Sequence[BipartiteRealization], tol: float = 1e-9):
    """(all pairwise equivalent, max squared-edge-length discrepancy)."""
    from rigidlab.framework import edge_function

    vectors = [edge_function(br.to_framework()) for br in realizations]
    worst = 0.0
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            for a, b in zip(vectors[i], vectors[j]):
                worst = max(worst, abs(float(a) - float(b)))
    return worst <= tol, worst


@dataclass(frozen=True)
class Isometry:
    matrix: np.ndarray
    translation: np.ndarray

    def apply(self, point) -> np.ndarray:
        return self.matrix @ np.asarray(point, dtype=float) + self.translation


class CannotDetermineError(ValueError):
    """Witness recovery needs an affinely spanning source realization."""


def isometry_witness(
    br1: BipartiteRealization,
    br2: BipartiteRealization,
    policy: RankPolicy | None = None,
    tol: float = 1e-9,
) -> Optional[Isometry]:
    """Orthogonal map + translation carrying br1 onto br2, or None when the
    realizations are not congruent.  Reflections are allowed."""
    policy = policy or DEFAULT_POLICY
    if (br1.m, br1.n, br1.dim) != (br2.m, br2.n, br2.dim):
        raise ValueError("realizations must share m, n, and dimension")
    if affine_span_dim_points(br1.all_points(), policy) < br1.dim:
        raise CannotDetermineError("source points do not affinely span R^d")
    f1 = br1.to_framework()
    f2 = br2.to_framework()
    if not are_congruent(f1, f2, tol):
        return None
    P = np.array([[float(x) for x in p] for p in br1.all_points()])
    Q = np.array([[float(x) for x in p] for p in br2.all_points()])
    pc, qc = P.mean(axis=0), Q.mean(axis=0)
    H = (P - pc).T @ (Q - qc)
    U, _, Vt = np.linalg.svd(H)
    R = Vt.T @ U.T
    t = qc - R @ pc
    worst = max(float(np.linalg.norm(R @ p + t - q)) for p, q in zip(P, Q))
    if worst > tol:
        return None
    return Isometry(matrix=R, translation=t)
