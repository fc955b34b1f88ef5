"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines as they complete.  Every tolerance is pinned here, not configurable.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from rigidlab.bipartite import (
    BipartiteRealization,
    CNotSpanningError,
    classify,
    affine_dependency_space,
    affine_span_dim,
    kernel_dim_via_stress,
    quadric_monomials,
    quadric_space,
    stress_space_dim_bolker_roth,
    stress_space_direct,
    trivial_dim_of,
)
from rigidlab.census import distinct_distances, growth_fit, projected_triple_count, run_census
from rigidlab.curves import (
    CurveHandle,
    HelixSpec,
    common_quadric_containment,
    curve_samples,
    family_equivalence,
    hyperplane_containment,
    qk_membership,
    quadric_containment,
    quadric_fit_residual,
    sliding_family,
)
from rigidlab.framework import (
    are_congruent,
    are_equivalent,
    complete_bipartite,
    Framework,
    Realization,
    rigidity_matrix,
    trivial_motion_space,
)
from rigidlab.linalg import RankPolicy, rank, vector_as_floats
from rigidlab.sampling import (
    random_bipartite,
    random_framework,
    random_helix_spec,
    random_rational_point,
    rng_from,
)

EXACT = RankPolicy.exact()
FLOAT = RankPolicy.floating(rel_tol=1e-9)

TWO_PI = 2 * math.pi


class criterion:
    """Context manager printing the per-criterion pass/fail line."""

    def __init__(self, num: int, label: str):
        self.num = num
        self.label = label
        self.detail = ""

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        verdict = "PASS" if exc_type is None else "FAIL"
        elapsed = time.perf_counter() - self.start
        suffix = f" ({self.detail})" if self.detail else ""
        print(f"[criterion {self.num:2d}] {verdict}  {self.label}{suffix}  [{elapsed:.1f}s]")
        return False


def _bipartite_sweep(exact: bool, minimum: int = 210):
    """Seeded configurations with d in {2,3,4}, m,n <= d+4, mixing generic,
    on-quadric, and coplanar-side draws; yields only those where C spans."""
    kinds = ("generic", "sphere", "generic", "ellipsoid", "cylinder", "coplanar_A")
    policy = EXACT if exact else FLOAT
    kept = 0
    trial = 0
    while kept < minimum:
        rng = rng_from(20_000 + (1 if exact else 0), trial)
        d = 2 + (trial % 3)
        m = int(rng.integers(d + 1, d + 5))
        n = int(rng.integers(d + 1, d + 5))
        kind = kinds[trial % len(kinds)]
        trial += 1
        br = random_bipartite(rng, d, m, n, kind=kind, exact=exact)
        try:
            formula = stress_space_dim_bolker_roth(br, policy)
        except CNotSpanningError:
            continue
        kept += 1
        yield br, policy, formula


def test_criterion_1_and_2_bolker_roth_and_kernel_identity():
    with criterion(1, "stress-dimension formula matches the direct left kernel") as c1:
        start = time.perf_counter()
        records = []
        for exact in (True, False):
            for br, policy, formula in _bipartite_sweep(exact):
                _, direct = stress_space_direct(br, policy)
                assert formula == direct, (
                    f"formula {formula} != direct {direct} "
                    f"(exact={exact}, d={br.dim}, m={br.m}, n={br.n})"
                )
                records.append((br, policy, direct))
        elapsed = time.perf_counter() - start
        assert elapsed < 30.0, f"sweep took {elapsed:.1f}s"
        c1.detail = f"{len(records)} configurations, 0 mismatches"

    with criterion(2, "kernel dimension identity dim ker = dim stress + (m+n)d - mn") as c2:
        for br, policy, direct in records:
            via_stress = direct + (br.m + br.n) * br.dim - br.m * br.n
            R = rigidity_matrix(br.to_framework())
            assert via_stress == R.cols - rank(R, policy)
            assert kernel_dim_via_stress(br, policy) == via_stress
        c2.detail = f"{len(records)} configurations, exact equality"


def _generic_rigid_size(d: int):
    # m + n must reach the quadric coefficient count so that generic
    # vertices lie on no common quadric
    need = d * (d + 3) // 2 + 1
    m = max(d + 1, (need + 1) // 2)
    n = max(d + 1, need - m)
    return m, n


def test_criterion_3_quadric_dichotomy():
    with criterion(3, "quadric dichotomy: generic rigid, on-quadric flexible") as c:
        rigid = flexible = 0
        for i in range(50):
            rng = rng_from(30_000, i)
            d = 2 + (i % 3)
            m, n = _generic_rigid_size(d)
            br = random_bipartite(rng, d, m, n, kind="generic", exact=True)
            rep = classify(br, EXACT)
            assert rep.classification == "infinitesimally_rigid", (
                f"generic config {i} misclassified as {rep.classification}"
            )
            rigid += 1
        for i in range(50):
            rng = rng_from(31_000, i)
            d = 2 + (i % 3)
            kind = ("sphere", "ellipsoid", "cylinder")[i % 3] if d >= 3 else "sphere"
            br = random_bipartite(rng, d, d + 2, d + 2, kind=kind, exact=True)
            rep = classify(br, EXACT)
            assert rep.classification == "vertices_on_quadric", (
                f"on-quadric config {i} misclassified as {rep.classification}"
            )
            excess = rep.kernel_dim_via_stress - trivial_dim_of(br, EXACT)
            assert excess == rep.dimQC, f"kernel excess {excess} != dimQC {rep.dimQC}"
            flexible += 1
        c.detail = f"{rigid} rigid + {flexible} on-quadric, 0 misclassifications"


def test_criterion_4_trivial_motions_in_kernel():
    with criterion(4, "trivial motions lie in the rigidity kernel") as c:
        for i in range(100):
            exact = i % 2 == 0
            rng = rng_from(40_000, i)
            d = int(rng.integers(1, 5))
            nv = int(rng.integers(1, 8))
            f = random_framework(rng, d, nv, exact=exact)
            R = rigidity_matrix(f)
            fields, _ = trivial_motion_space(f.realization, EXACT if exact else FLOAT)
            if exact:
                for v in fields:
                    for r in range(R.rows):
                        assert sum(a * b for a, b in zip(R.row(r), v)) == 0
            else:
                A = R.to_numpy()
                scale = np.linalg.norm(A) if A.size else 0.0
                for v in fields:
                    v = np.asarray(v, float)
                    assert np.linalg.norm(A @ v) <= 1e-9 * max(scale * np.linalg.norm(v), 1e-30)
        c.detail = "100 frameworks (50 exact, 50 floating)"


def test_criterion_5_affine_identity():
    with criterion(5, "dim D(A) + dim span(A) = k - 1") as c:
        for i in range(1000):
            rng = rng_from(50_000, i)
            d = int(rng.integers(1, 5))
            k = int(rng.integers(1, 9))
            pts = [random_rational_point(rng, d) for _ in range(k)]
            style = i % 4
            if style == 1 and d >= 2:
                pts = [p[:-1] + (Fraction(0),) for p in pts]  # flat
            elif style == 2 and d >= 2:
                pts = [(p[0],) + (Fraction(0),) * (d - 1) for p in pts]  # collinear
            elif style == 3 and k >= 2:
                pts[-1] = pts[0]  # repeated point
            _, dep = affine_dependency_space(pts, EXACT)
            assert dep + affine_span_dim(pts, EXACT) == k - 1
        c.detail = "1000 point sets with collinear/coplanar degeneracies"


def _shifted_cylinder_coeffs(spec: HelixSpec) -> np.ndarray:
    """Coefficient vector of (x1 - o1)^2 + (x2 - o2)^2 - rho1^2 in the fixed
    monomial order."""
    d = spec.dim
    rho = spec.blocks[0][0]
    o1, o2 = spec.offset[0], spec.offset[1]
    n_sq = d * (d + 1) // 2
    coeffs = np.zeros(n_sq + d + 1)
    sq_index = {}
    pos = 0
    for i in range(d):
        for j in range(i, d):
            sq_index[(i, j)] = pos
            pos += 1
    coeffs[sq_index[(0, 0)]] = 1.0
    coeffs[sq_index[(1, 1)]] = 1.0
    coeffs[n_sq + 0] = -2.0 * o1
    coeffs[n_sq + 1] = -2.0 * o2
    coeffs[-1] = o1 * o1 + o2 * o2 - rho * rho
    return coeffs


def test_criterion_6_helix_properties():
    with criterion(6, "helix derivative norms constant; block-1 cylinder recovered") as c:
        for i in range(50):
            rng = rng_from(60_000, i)
            d = 3 + (i % 3)
            spec = random_helix_spec(rng, d)
            handle = CurveHandle.helix(spec, (0.0, 24.0))
            result = qk_membership(handle, 1, grid_size=64, tol=1e-9)
            assert result.is_member_estimate, f"spec {i}: derivative norm spread too large"
            for rec in result.profile.records:
                assert rec.spread <= 1e-9 * max(rec.max_norm, 1e-12)

            sample_count = 120
            coeffs = quadric_containment(handle, sample_count, FLOAT, validation_tol=1e-9)
            assert coeffs is not None, f"spec {i}: no quadric found"
            fresh = curve_samples(handle, 3 * sample_count, lo=0.03, hi=23.9)
            assert quadric_fit_residual(coeffs, fresh) <= 1e-9

            # the shifted block-1 cylinder must lie in the sampled vanishing space
            basis, _ = quadric_space(curve_samples(handle, sample_count), d, FLOAT)
            B = np.array([vector_as_floats(b) for b in basis]).T
            target = _shifted_cylinder_coeffs(spec)
            sol, *_ = np.linalg.lstsq(B, target, rcond=None)
            residual = np.linalg.norm(B @ sol - target) / np.linalg.norm(target)
            assert residual <= 1e-9, f"spec {i}: cylinder not recovered (residual {residual:.2e})"
        c.detail = "50 helix specs in d=3,4,5"


def test_criterion_7_sliding_families():
    with criterion(7, "sliding families pairwise equivalent; square/rhombus control") as c:
        # concentric circles, d=2, m=n=4
        c1 = CurveHandle.helix(HelixSpec(2, ((1.0, 1.0, 0.0),)), (0.0, TWO_PI))
        c2 = CurveHandle.helix(HelixSpec(2, ((2.0, 1.0, 0.0),)), (0.0, TWO_PI))
        deltas = [0.05 * i for i in range(10)]
        x0 = [0.0, 0.9, 1.8, 2.7]
        y0 = [0.2, 1.1, 2.0, 2.9]
        fam = sliding_family(c1, c2, x0, y0, deltas)
        ok, worst = family_equivalence(fam, tol=1e-10)
        assert ok, f"circle family discrepancy {worst:.2e}"

        # matched-frequency helix pair, d=3, m=n=5
        h1 = CurveHandle.helix(HelixSpec(3, ((1.0, 1.4, 0.2),), w=(0.8,)), (0.0, 9.0))
        h2 = CurveHandle.helix(
            HelixSpec(3, ((1.7, 1.4, 1.0),), w=(0.8,), offset=(0.0, 0.0, 0.6)), (0.0, 9.0)
        )
        x0 = [0.1, 1.1, 2.1, 3.1, 4.1]
        y0 = [0.3, 1.3, 2.3, 3.3, 4.3]
        fam_h = sliding_family(h1, h2, x0, y0, deltas)
        ok_h, worst_h = family_equivalence(fam_h, tol=1e-10)
        assert ok_h, f"helix family discrepancy {worst_h:.2e}"

        # control: equivalent but not congruent is detected
        k22 = complete_bipartite(2, 2)
        square = Framework(k22, Realization(2, ((0, 0), (1, 1), (1, 0), (0, 1))))
        rhombus = Framework(
            k22,
            Realization(
                2,
                (
                    (0, 0),
                    (Fraction(8, 5), Fraction(4, 5)),
                    (1, 0),
                    (Fraction(3, 5), Fraction(4, 5)),
                ),
            ),
        )
        assert are_equivalent(square, rhombus, tol=0)
        assert not are_congruent(square, rhombus)
        c.detail = f"max discrepancies {worst:.1e} (circles), {worst_h:.1e} (helices)"


def test_criterion_8_triple_lower_bound():
    with criterion(8, "triple count >= |A||B| on every census run") as c:
        runs = 0
        for i in range(20):
            rng = rng_from(80_000, i)
            pts1 = [tuple(float(x) for x in rng.uniform(-2, 2, 2)) for _ in range(12)]
            pts2 = [tuple(float(x) for x in rng.uniform(-2, 2, 2)) for _ in range(12)]
            t = projected_triple_count(pts1, pts2, tol=1e-9)
            assert t.triple_count >= t.sizeA * t.sizeB
            runs += 1
        # structured configurations with heavy first-coordinate collisions
        P1 = [(1, 0), (0, 1), (-1, 0), (0, -1)]
        P2 = [(2, 0), (0, 2), (-2, 0), (0, -2)]
        t = projected_triple_count(P1, P2)
        assert t.triple_count >= t.sizeA * t.sizeB
        runs += 1
        # the bound is a hard structural assertion of the result type
        from rigidlab.census import TripleCount

        with pytest.raises(ValueError):
            TripleCount(sizeA=3, sizeB=3, sizeC=1, triple_count=8)
        c.detail = f"{runs} runs plus structural enforcement"


def test_criterion_9_distance_growth_contrast():
    with criterion(9, "slope ~1 on special pairs, slope >= 1.5 on generic cubics") as c:
        start = time.perf_counter()
        schedule = [64, 128, 256, 512]

        circles = (
            CurveHandle.helix(HelixSpec(2, ((1.0, 1.0, 0.0),)), (0.0, TWO_PI)),
            CurveHandle.helix(HelixSpec(2, ((2.0, 1.0, 0.0),)), (0.0, TWO_PI)),
        )
        fit_circ = growth_fit(*circles, schedule, sampler="equispaced", tol=1e-9)
        assert abs(fit_circ.slope - 1.0) <= 0.15, f"circle slope {fit_circ.slope:.3f}"

        lines = (
            CurveHandle.polynomial([[0, 1], [0]], (0.0, 1.0)),
            CurveHandle.polynomial([[0, 1], [1]], (0.0, 1.0)),
        )
        fit_lines = growth_fit(*lines, schedule, sampler="equispaced", tol=1e-9)
        assert abs(fit_lines.slope - 1.0) <= 0.15, f"line slope {fit_lines.slope:.3f}"

        # random cubic pair; a pair is rejected and resampled when the two
        # curves share a quadric or either lies in a hyperplane
        attempt = 0
        while True:
            rng = rng_from(90_000, attempt)
            attempt += 1
            pair = [
                CurveHandle.polynomial(
                    [[float(x) for x in rng.uniform(-1, 1, 4)] for _ in range(3)],
                    (-1.0, 1.0),
                )
                for _ in range(2)
            ]
            if any(hyperplane_containment(cu, 24, FLOAT) is not None for cu in pair):
                continue
            if common_quadric_containment(pair, 24, FLOAT) is not None:
                continue
            break
        report = run_census(pair[0], pair[1], schedule, sampler="uniform", tol=1e-9, seed=90)
        assert report.fit.slope >= 1.5, f"cubic slope {report.fit.slope:.3f}"
        for row in report.rows:
            assert row.triple_count >= row.sizeA * row.sizeB

        elapsed = time.perf_counter() - start
        assert elapsed < 120.0, f"growth experiments took {elapsed:.1f}s"
        c.detail = (
            f"slopes: circles {fit_circ.slope:.2f}, lines {fit_lines.slope:.2f}, "
            f"cubics {report.fit.slope:.2f}; {attempt} candidate pair(s)"
        )


def test_criterion_10_exact_small_counts():
    with criterion(10, "brute-force censuses reproduce exactly in exact-squared mode") as c:
        census_circles = distinct_distances(
            [(1, 0), (0, 1), (-1, 0), (0, -1)],
            [(2, 0), (0, 2), (-2, 0), (0, -2)],
            mode="exact-squared",
        )
        assert census_circles.distinct_count == 3
        assert census_circles.distances == (1, 5, 9)

        census_lines = distinct_distances(
            [(0, 0), (1, 0), (2, 0)],
            [(0, 1), (1, 1), (2, 1)],
            mode="exact-squared",
        )
        assert census_lines.distinct_count == 3
        assert census_lines.distances == (1, 2, 5)

        single = distinct_distances([(0, 0)], [(0, 0)], mode="exact-squared")
        assert single.distinct_count == 1 and single.distances == (0,)
        c.detail = "3-count circle and line censuses reproduced"
