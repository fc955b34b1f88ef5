"""Command-line surface.

Verbs: ``analyze`` (framework rigidity report), ``bipartite`` (stress-space
classification), ``curve`` (derivative profile + quadric containment),
``family`` (sliding families), ``census`` (distance censuses + growth fit),
``selfcheck`` (built-in invariant suite).

Reports are canonical JSON (17-significant-digit floats) and embed the full
resolved configuration, so identical command lines with identical seeds
produce byte-identical files.  RIGIDLAB_SEED overrides the default seed.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from rigidlab import bipartite, census, curves, fileio, framework, selfcheck
from rigidlab.linalg import ArithmeticModeError, RankPolicy

DEFAULTS = {"mode": "floating", "tol": 1e-9, "seed": 0, "grid": 64, "trials": 20}


def _default_seed() -> int:
    env = os.environ.get("RIGIDLAB_SEED")
    return int(env) if env else DEFAULTS["seed"]


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=["exact", "floating"], default=DEFAULTS["mode"],
                   help="arithmetic mode for rank decisions")
    p.add_argument("--tol", type=float, default=DEFAULTS["tol"],
                   help="relative singular-value cutoff and comparison tolerance")
    p.add_argument("--seed", type=int, default=None,
                   help="seed for randomized probes (default: RIGIDLAB_SEED or 0)")
    p.add_argument("--grid", type=int, default=DEFAULTS["grid"],
                   help="grid size for sampled curve checks")
    p.add_argument("--trials", type=int, default=DEFAULTS["trials"],
                   help="trial count for the regularity probe")
    p.add_argument("--output", default=None, help="report path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rigidlab",
        description="rigidity, bipartite stress spaces, helix curves, and distance censuses",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("analyze", help="rigidity report for a framework file")
    p.add_argument("input")
    p.add_argument("--perturbation", type=float, default=1e-3)
    _add_common(p)

    p = sub.add_parser("bipartite", help="stress-space classification for a bipartite file")
    p.add_argument("input")
    _add_common(p)

    p = sub.add_parser("curve", help="derivative profile and quadric containment for a curve file")
    p.add_argument("input")
    p.add_argument("--k", type=int, default=1, help="derivative-norm class to test")
    p.add_argument("--samples", type=int, default=None,
                   help="sample count for quadric fitting (default: grid)")
    _add_common(p)

    p = sub.add_parser("family", help="sliding family from two curve files")
    p.add_argument("curve1")
    p.add_argument("curve2")
    p.add_argument("--m", type=int, default=None, help="parameters on the first curve (default d+2)")
    p.add_argument("--n", type=int, default=None, help="parameters on the second curve (default d+2)")
    p.add_argument("--deltas", default=None, help="comma-separated shifts (default: 10 small shifts)")
    p.add_argument("--out-dir", default=None, help="directory for the realization files")
    _add_common(p)

    p = sub.add_parser("census", help="distance census and growth fit for two curve files")
    p.add_argument("curve1")
    p.add_argument("curve2")
    p.add_argument("--schedule", default="64,128,256,512", help="comma-separated sizes")
    p.add_argument("--sampler", choices=list(census.SAMPLERS), default="equispaced")
    p.add_argument("--csv", default=None, help="per-size CSV output path")
    _add_common(p)

    p = sub.add_parser("selfcheck", help="run the built-in invariant suite")
    _add_common(p)

    return parser


def _policy(args) -> RankPolicy:
    return RankPolicy(mode=args.mode, rel_tol=args.tol, seed=args.seed)


def _config(args, extra: dict | None = None) -> dict:
    cfg = {
        "command": args.verb,
        "mode": args.mode,
        "tol": args.tol,
        "seed": args.seed,
        "grid": args.grid,
        "trials": args.trials,
    }
    cfg.update(extra or {})
    return cfg


def _emit(report: dict, output: str | None) -> None:
    text = fileio.dumps_canonical(report)
    if output:
        fileio.atomic_write_text(output, text)
    else:
        sys.stdout.write(text)


def _vec(v) -> list:
    if isinstance(v, np.ndarray):
        return [float(x) for x in v]
    return list(v)


def _run_analyze(args) -> tuple[dict, int]:
    f = fileio.read_framework(args.input)
    policy = _policy(args)
    report = framework.infinitesimal_rigidity(f, policy)
    probe = framework.regularity_probe(f, trials=args.trials, perturbation=args.perturbation, policy=policy)
    return {
        "config": _config(args, {"input": args.input, "perturbation": args.perturbation}),
        "kernel_dim": report.kernel_dim,
        "trivial_dim": report.trivial_dim,
        "affine_span_dim": report.affine_span_dim,
        "is_infinitesimally_rigid": report.is_infinitesimally_rigid,
        "regularity": {
            "rank_at_p": probe.rank_at_p,
            "max_rank_seen": probe.max_rank_seen,
            "is_regular_estimate": probe.is_regular_estimate,
        },
    }, 0


def _bipartite_report_dict(rep: bipartite.BolkerRothReport) -> dict:
    return {
        "dimDA": rep.dimDA,
        "dimDB": rep.dimDB,
        "k": rep.k,
        "C_points": [_vec(p) for p in rep.C_points],
        "dimQC": rep.dimQC,
        "dim_omega_formula": rep.dim_omega_formula,
        "dim_omega_direct": rep.dim_omega_direct,
        "kernel_dim_via_stress": rep.kernel_dim_via_stress,
        "classification": rep.classification,
        "formula_matches_direct": (
            rep.dim_omega_formula == rep.dim_omega_direct
            if rep.dim_omega_formula is not None
            else None
        ),
    }


def _run_bipartite(args) -> tuple[dict, int]:
    br = fileio.read_bipartite(args.input)
    policy = _policy(args)
    base = {"config": _config(args, {"input": args.input})}
    try:
        rep = bipartite.classify(br, policy)
    except bipartite.CNotSpanningError as exc:
        base["error"] = {"code": "C_not_spanning", "message": str(exc)}
        if exc.report is not None:
            base.update(_bipartite_report_dict(exc.report))
        return base, 1
    base.update(_bipartite_report_dict(rep))
    return base, 0


def _run_curve(args) -> tuple[dict, int]:
    c = fileio.read_curve(args.input)
    policy = _policy(args)
    result = curves.qk_membership(c, args.k, grid_size=args.grid, tol=args.tol)
    samples = args.samples or max(args.grid, bipartite.quadric_coefficient_count(c.dim) + 2)
    report = {
        "config": _config(args, {"input": args.input, "k": args.k, "samples": samples}),
        "kind": c.kind,
        "dimension": c.dim,
        "qk": {
            "k": args.k,
            "is_member_estimate": result.is_member_estimate,
            "profile": [
                {"order": r.order, "min_norm": r.min_norm, "max_norm": r.max_norm, "spread": r.spread}
                for r in result.profile.records
            ],
        },
    }
    try:
        q = curves.quadric_containment(c, samples, policy)
        report["quadric"] = {"found": q is not None, "coefficients": _vec(q) if q is not None else None}
    except ValueError as exc:
        report["quadric"] = {"found": False, "coefficients": None, "note": str(exc)}
    h = curves.hyperplane_containment(c, max(samples, c.dim + 2), policy)
    report["hyperplane"] = (
        {"found": h is not None}
        if h is None
        else {"found": True, "normal": _vec(h[0]), "offset": h[1]}
    )
    return report, 0


def _run_family(args) -> tuple[dict, int]:
    c1 = fileio.read_curve(args.curve1)
    c2 = fileio.read_curve(args.curve2)
    if c1.dim != c2.dim:
        return {"error": {"code": "dimension_mismatch", "message": "curves differ in dimension"}}, 1
    d = c1.dim
    m = args.m or d + 2
    n = args.n or d + 2
    lo = max(c1.domain[0], c2.domain[0])
    hi = min(c1.domain[1], c2.domain[1])
    span = hi - lo
    if args.deltas:
        deltas = [float(x) for x in args.deltas.split(",")]
    else:
        deltas = [float(x) for x in np.linspace(0.0, 0.1 * span, 10)]
    x0 = [float(x) for x in np.linspace(lo, lo + 0.5 * span, m)]
    y0 = [float(y) for y in np.linspace(lo + 0.02 * span, lo + 0.55 * span, n)]
    fam = curves.sliding_family(c1, c2, x0, y0, deltas)
    invariance = curves.translation_invariance_check(c1, c2, grid=args.grid, tol=args.tol)
    equivalent, worst = curves.family_equivalence(fam, tol=max(args.tol, 1e-10))
    paths = []
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        for idx, br in enumerate(fam):
            path = os.path.join(args.out_dir, f"family_{idx:03d}.json")
            fileio.write_json(path, fileio.bipartite_to_dict(br))
            paths.append(path)
    report = {
        "config": _config(args, {
            "curve1": args.curve1, "curve2": args.curve2,
            "m": m, "n": n, "deltas": deltas,
        }),
        "x0": x0,
        "y0": y0,
        "translation_invariance_holds": invariance.holds,
        "pairwise_equivalent": equivalent,
        "max_edge_discrepancy": worst,
        "realization_files": paths,
    }
    return report, 0


def _run_census(args) -> tuple[dict, int]:
    c1 = fileio.read_curve(args.curve1)
    c2 = fileio.read_curve(args.curve2)
    schedule = [int(x) for x in args.schedule.split(",")]
    report = census.run_census(c1, c2, schedule, sampler=args.sampler, tol=args.tol, seed=args.seed)
    if args.csv:
        fileio.write_csv(
            args.csv,
            ["n", "distinct_count", "sizeA", "sizeB", "sizeC", "triple_count", "seconds"],
            [
                [r.n, r.distinct_count, r.sizeA, r.sizeB, r.sizeC, r.triple_count, f"{r.seconds:.6f}"]
                for r in report.rows
            ],
        )
    return {
        "config": _config(args, {
            "curve1": args.curve1, "curve2": args.curve2,
            "schedule": schedule, "sampler": args.sampler, "csv": args.csv,
        }),
        "counts": list(report.fit.counts),
        "triple_counts": [r.triple_count for r in report.rows],
        "fit": {
            "slope": report.fit.slope,
            "intercept": report.fit.intercept,
            "residual": report.fit.residual,
        },
    }, 0


def _run_selfcheck(args) -> tuple[dict, int]:
    results = selfcheck.run_selfcheck(seed=args.seed)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}" + (f"  ({r.detail})" if r.detail else ""))
    failed = [r.name for r in results if not r.passed]
    report = {
        "config": _config(args),
        "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
        "all_passed": not failed,
    }
    return report, (1 if failed else 0)


RUNNERS = {
    "analyze": _run_analyze,
    "bipartite": _run_bipartite,
    "curve": _run_curve,
    "family": _run_family,
    "census": _run_census,
    "selfcheck": _run_selfcheck,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed is None:
        args.seed = _default_seed()
    try:
        report, status = RUNNERS[args.verb](args)
    except (OSError, ValueError, KeyError, ArithmeticModeError) as exc:
        report = {
            "config": {"command": args.verb},
            "error": {"code": type(exc).__name__, "message": str(exc)},
        }
        status = 1
    _emit(report, args.output)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
