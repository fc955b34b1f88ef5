"""Built-in invariant suite: a condensed, seeded sweep over the package's
mathematical identities.  Each check returns one pass/fail record; the CLI
``selfcheck`` verb prints them and exits nonzero on any failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from rigidlab import bipartite, census, curves, framework, sampling
from rigidlab.linalg import Matrix, RankPolicy, kernel_basis, rank


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def _check(name, fn) -> CheckResult:
    try:
        detail = fn()
        return CheckResult(name=name, passed=True, detail=detail or "")
    except AssertionError as exc:
        return CheckResult(name=name, passed=False, detail=str(exc))


def _rank_nullity(seed: int) -> str:
    for trial in range(12):
        rng = sampling.rng_from(seed, 100, trial)
        rows = int(rng.integers(1, 6))
        cols = int(rng.integers(1, 6))
        m = Matrix.from_rows(
            [[sampling.random_fraction(rng, 9) for _ in range(cols)] for _ in range(rows)]
        )
        for policy in (RankPolicy.exact(), RankPolicy.floating()):
            r = rank(m, policy)
            k = len(kernel_basis(m, policy))
            assert r + k == cols, f"rank {r} + nullity {k} != cols {cols}"
            assert rank(m.transpose(), policy) == r, "rank != rank of transpose"
    return "12 seeded matrices, both modes"


def _trivial_motions_in_kernel(seed: int) -> str:
    for trial in range(10):
        rng = sampling.rng_from(seed, 101, trial)
        d = int(rng.integers(2, 4))
        f = sampling.random_framework(rng, d, int(rng.integers(3, 7)), exact=False)
        R = framework.rigidity_matrix(f).to_numpy()
        fields, _ = framework.trivial_motion_space(f.realization)
        scale = np.linalg.norm(R) if R.size else 0.0
        for v in fields:
            v = np.array(v, dtype=float)
            assert np.linalg.norm(R @ v) <= 1e-9 * max(scale * np.linalg.norm(v), 1e-30), (
                "trivial motion escapes the rigidity kernel"
            )
    return "10 random frameworks"


def _jacobian_matches(seed: int) -> str:
    rng = sampling.rng_from(seed, 102)
    f = sampling.random_framework(rng, 2, 5, exact=False, edge_prob=0.8)
    R = framework.rigidity_matrix(f).to_numpy()
    pts = [list(map(float, p)) for p in f.realization.points]
    h = 1e-5
    for col in range(2 * len(pts)):
        i, t = divmod(col, 2)
        hi = [p[:] for p in pts]
        lo = [p[:] for p in pts]
        hi[i][t] += h
        lo[i][t] -= h
        fhi = framework.edge_function(
            framework.Framework(f.graph, framework.Realization(2, tuple(map(tuple, hi))))
        )
        flo = framework.edge_function(
            framework.Framework(f.graph, framework.Realization(2, tuple(map(tuple, lo))))
        )
        fd = (np.array(fhi, dtype=float) - np.array(flo, dtype=float)) / (2 * h)
        assert np.allclose(fd, R[:, col], atol=1e-6), "finite differences disagree with the rigidity matrix"
    return "central differences at step 1e-5"


def _affine_identity(seed: int) -> str:
    for trial in range(40):
        rng = sampling.rng_from(seed, 103, trial)
        d = int(rng.integers(1, 5))
        k = int(rng.integers(1, 8))
        pts = [sampling.random_rational_point(rng, d) for _ in range(k)]
        if trial % 3 == 0 and d > 1:
            pts = [p[:-1] + (Fraction(0),) for p in pts]
        _, dim_dep = bipartite.affine_dependency_space(pts, RankPolicy.exact())
        span = bipartite.affine_span_dim(pts, RankPolicy.exact())
        assert dim_dep + span == k - 1, f"dependency {dim_dep} + span {span} != {k - 1}"
    return "40 rational point sets with degeneracies"


def _bolker_roth_crosscheck(seed: int) -> str:
    checked = 0
    trial = 0
    while checked < 25:
        rng = sampling.rng_from(seed, 104, trial)
        trial += 1
        d = int(rng.integers(2, 4))
        m = int(rng.integers(d + 1, d + 4))
        n = int(rng.integers(d + 1, d + 4))
        kind = ("generic", "sphere", "cylinder")[trial % 3]
        br = sampling.random_bipartite(rng, d, m, n, kind=kind, exact=True)
        try:
            formula = bipartite.stress_space_dim_bolker_roth(br, RankPolicy.exact())
        except bipartite.CNotSpanningError:
            continue
        _, direct = bipartite.stress_space_direct(br, RankPolicy.exact())
        assert formula == direct, f"formula {formula} != direct {direct}"
        kd = bipartite.kernel_dim_via_stress(br, RankPolicy.exact())
        R = framework.rigidity_matrix(br.to_framework())
        assert kd == R.cols - rank(R, RankPolicy.exact()), "stress identity violated"
        checked += 1
    return f"{checked} exact configurations"


def _quadric_dichotomy(seed: int) -> str:
    rng = sampling.rng_from(seed, 105)
    generic = sampling.random_bipartite(rng, 2, 3, 3, kind="generic", exact=True)
    rep = bipartite.classify(generic, RankPolicy.exact())
    assert rep.classification == "infinitesimally_rigid", rep.classification
    sphere = sampling.random_bipartite(rng, 3, 5, 5, kind="sphere", exact=True)
    rep2 = bipartite.classify(sphere, RankPolicy.exact())
    assert rep2.classification == "vertices_on_quadric", rep2.classification
    excess = rep2.kernel_dim_via_stress - bipartite.trivial_dim_of(sphere, RankPolicy.exact())
    assert excess == rep2.dimQC, f"kernel excess {excess} != dimQC {rep2.dimQC}"
    return "generic rigid; sphere flexible with excess = dimQC"


def _helix_checks(seed: int) -> str:
    for trial in range(5):
        rng = sampling.rng_from(seed, 106, trial)
        d = int(rng.integers(3, 6))
        spec = sampling.random_helix_spec(rng, d)
        handle = curves.CurveHandle.helix(spec, (0.0, 24.0))
        result = curves.qk_membership(handle, 1, grid_size=48, tol=1e-9)
        assert result.is_member_estimate, "helix failed constant-derivative-norm test"
        q = curves.quadric_containment(handle, 120)
        assert q is not None, "helix quadric not found"
    return "5 random helix specs"


def _sliding_family(seed: int) -> str:
    c1 = curves.CurveHandle.helix(curves.HelixSpec(2, ((1.0, 1.0, 0.0),)), (0.0, 7.0))
    c2 = curves.CurveHandle.helix(curves.HelixSpec(2, ((2.0, 1.0, 0.0),)), (0.0, 7.0))
    fam = curves.sliding_family(c1, c2, [0.0, 0.5, 1.0, 1.5], [0.1, 0.7, 1.3, 1.9], [0.0, 0.2, 0.4])
    ok, worst = curves.family_equivalence(fam, tol=1e-10)
    assert ok, f"family discrepancy {worst:.2e}"
    return f"max discrepancy {worst:.1e}"


def _census_counts(seed: int) -> str:
    P1 = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    P2 = [(2, 0), (0, 2), (-2, 0), (0, -2)]
    c = census.distinct_distances(P1, P2, mode="exact-squared")
    assert c.distinct_count == 3 and c.distances == (1, 5, 9), c.distances
    t = census.projected_triple_count(P1, P2)
    assert t.triple_count >= t.sizeA * t.sizeB, "triple lower bound violated"
    return "exact circle census reproduced"


def run_selfcheck(seed: int = 0) -> list[CheckResult]:
    checks = [
        ("rank-nullity and transpose symmetry", _rank_nullity),
        ("trivial motions lie in the rigidity kernel", _trivial_motions_in_kernel),
        ("rigidity matrix equals the edge-function Jacobian", _jacobian_matches),
        ("affine dependency + span = k - 1", _affine_identity),
        ("stress dimension: formula vs direct left kernel", _bolker_roth_crosscheck),
        ("quadric dichotomy classification", _quadric_dichotomy),
        ("helix derivative norms and quadric containment", _helix_checks),
        ("sliding families are equivalent", _sliding_family),
        ("census exact counts and triple bound", _census_counts),
    ]
    return [_check(name, lambda fn=fn: fn(seed)) for name, fn in checks]
