"""Distinct-distance counting for bipartite point sets, first-coordinate
triple counts, and growth-exponent fits over a size schedule.

Special curve pairs (concentric circles, parallel lines) keep the distinct
count linear in n; generic curve pairs push it toward n^2.  The census
machinery measures that contrast at desk scale with a log-log least-squares
slope.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from rigidlab.curves import CurveHandle, curve_point
from rigidlab.linalg import ArithmeticModeError


@dataclass(frozen=True)
class DistanceCensus:
    n1: int
    n2: int
    distinct_count: int
    distances: tuple
    tol: float
    mode: str

    def __post_init__(self) -> None:
        if self.distinct_count != len(self.distances):
            raise ValueError("distinct_count must match the representative list")


@dataclass(frozen=True)
class TripleCount:
    sizeA: int
    sizeB: int
    sizeC: int
    triple_count: int

    def __post_init__(self) -> None:
        # lower bound: every (a, b) pair realizes at least one distance
        if self.triple_count < self.sizeA * self.sizeB:
            raise ValueError("triple count below the |A||B| lower bound")
        if self.triple_count > self.sizeA * self.sizeB * self.sizeC:
            raise ValueError("triple count above |A||B||C|")


@dataclass(frozen=True)
class GrowthFit:
    schedule: tuple
    counts: tuple
    slope: float
    intercept: float
    residual: float

    def __post_init__(self) -> None:
        if list(self.schedule) != sorted(set(self.schedule)):
            raise ValueError("schedule must be strictly increasing")
        if any(c <= 0 for c in self.counts):
            raise ValueError("counts must be positive")


@dataclass(frozen=True)
class CensusRow:
    n: int
    distinct_count: int
    sizeA: int
    sizeB: int
    sizeC: int
    triple_count: int
    seconds: float


@dataclass(frozen=True)
class CensusReport:
    rows: tuple
    fit: GrowthFit


def _is_rational_point(p) -> bool:
    return all(isinstance(x, (int, Fraction)) and not isinstance(x, bool) for x in p)


def _sq_dist(p, q):
    return sum((a - b) * (a - b) for a, b in zip(p, q))


def _bucket(values: Sequence, tol) -> tuple[list, list[int]]:
    """Sort-and-merge bucketing: runs separated by gaps > tol, representative
    = run minimum.  Returns (representatives, bucket index per input)."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    reps: list = []
    assignment = [0] * len(values)
    prev = None
    for idx in order:
        v = values[idx]
        if prev is None or v - prev > tol:
            reps.append(v)
        assignment[idx] = len(reps) - 1
        prev = v
    return reps, assignment


def distinct_distances(P1, P2, tol: float = 1e-9, mode: str = "bucketed") -> DistanceCensus:
    """Census of distances spanned by P1 x P2.

    "exact-squared" deduplicates exact squared distances and requires
    rational coordinates; "bucketed" sorts the n1*n2 Euclidean distances and
    merges runs with gaps <= tol.
    """
    P1, P2 = list(P1), list(P2)
    if not P1 or not P2:
        raise ValueError("point sets must be nonempty")
    if mode == "exact-squared":
        if not all(_is_rational_point(p) for p in P1 + P2):
            raise ArithmeticModeError("exact-squared mode requires rational coordinates")
        values = sorted({_sq_dist(p, q) for p in P1 for q in P2})
        return DistanceCensus(
            n1=len(P1), n2=len(P2), distinct_count=len(values),
            distances=tuple(values), tol=0.0, mode=mode,
        )
    if mode != "bucketed":
        raise ValueError(f"unknown census mode {mode!r}")
    dists = [math.sqrt(float(_sq_dist(p, q))) for p in P1 for q in P2]
    reps, _ = _bucket(dists, tol)
    return DistanceCensus(
        n1=len(P1), n2=len(P2), distinct_count=len(reps),
        distances=tuple(reps), tol=tol, mode=mode,
    )


def projected_triple_count(P1, P2, tol: float = 1e-9) -> TripleCount:
    """Count of (a, b, c) triples with a, b first coordinates of P1, P2 and c
    a realized distance between points over those coordinates.

    Rational inputs are deduplicated exactly (squared distances as the
    distance key); float inputs are bucketed with tol.  The |A||B| lower
    bound is asserted structurally by :class:`TripleCount`.
    """
    P1, P2 = list(P1), list(P2)
    if not P1 or not P2:
        raise ValueError("point sets must be nonempty")
    exact = all(_is_rational_point(p) for p in P1 + P2)
    if exact:
        xs1 = [p[0] for p in P1]
        xs2 = [p[0] for p in P2]
        _, a_idx = _bucket(xs1, 0)
        _, b_idx = _bucket(xs2, 0)
        sizeA = len(set(a_idx))
        sizeB = len(set(b_idx))
        dist_keys = {}
        triples = set()
        for i, p in enumerate(P1):
            for j, q in enumerate(P2):
                key = _sq_dist(p, q)
                c = dist_keys.setdefault(key, len(dist_keys))
                triples.add((a_idx[i], b_idx[j], c))
        sizeC = len(dist_keys)
    else:
        _, a_idx = _bucket([float(p[0]) for p in P1], tol)
        _, b_idx = _bucket([float(p[0]) for p in P2], tol)
        sizeA = len(set(a_idx))
        sizeB = len(set(b_idx))
        dists = [math.sqrt(float(_sq_dist(p, q))) for p in P1 for q in P2]
        _, c_idx = _bucket(dists, tol)
        sizeC = len(set(c_idx))
        triples = {
            (a_idx[i], b_idx[j], c_idx[i * len(P2) + j])
            for i in range(len(P1))
            for j in range(len(P2))
        }
    return TripleCount(sizeA=sizeA, sizeB=sizeB, sizeC=sizeC, triple_count=len(triples))


SAMPLERS = ("equispaced", "uniform")


def sample_parameters(curve: CurveHandle, n: int, sampler: str, seed: int) -> list[float]:
    """n curve parameters: "equispaced" spans the domain (endpoints included,
    the arithmetic-progression case); "uniform" draws seeded uniforms."""
    lo, hi = curve.domain
    if sampler == "equispaced":
        return [float(t) for t in np.linspace(lo, hi, n)]
    if sampler == "uniform":
        rng = np.random.default_rng([seed, n])
        return [float(t) for t in rng.uniform(lo, hi, n)]
    raise ValueError(f"unknown sampler {sampler!r}")


def fit_loglog(schedule: Sequence[int], counts: Sequence[int]) -> tuple[float, float, float]:
    """Least-squares slope/intercept of log(count) against log(n), plus the
    RMS residual in log space."""
    xs = np.log(np.asarray(schedule, dtype=float))
    ys = np.log(np.asarray(counts, dtype=float))
    slope, intercept = np.polyfit(xs, ys, 1)
    resid = ys - (slope * xs + intercept)
    return float(slope), float(intercept), float(np.sqrt(np.mean(resid**2)))


def run_census(
    curve1: CurveHandle,
    curve2: CurveHandle,
    schedule: Sequence[int],
    sampler: str = "equispaced",
    tol: float = 1e-9,
    seed: int = 0,
) -> CensusReport:
    """Per-size distance censuses and triple counts for a curve pair, with
    the growth fit.  Deterministic given (seed, schedule, sampler)."""
    schedule = [int(n) for n in schedule]
    if len(schedule) < 3:
        raise ValueError("schedule needs at least 3 sizes")
    if list(schedule) != sorted(set(schedule)):
        raise ValueError("schedule must be strictly increasing")
    rows = []
    counts = []
    for n in schedule:
        start = time.perf_counter()
        p1 = [curve_point(curve1, t) for t in sample_parameters(curve1, n, sampler, seed)]
        p2 = [curve_point(curve2, t) for t in sample_parameters(curve2, n, sampler, seed + 1)]
        census = distinct_distances(p1, p2, tol=tol, mode="bucketed")
        if census.distinct_count == 0:
            raise ValueError(f"degenerate zero count at n={n}; aborting fit")
        triple = projected_triple_count(p1, p2, tol=tol)
        # first-coordinate projection must have bounded fibers for the triple
        # count to say anything; a curve inside x1 = const collapses a side
        for label, size, count in (("first", triple.sizeA, n), ("second", triple.sizeB, n)):
            if count > 1 and size == 1:
                warnings.warn(
                    f"{label} curve has a constant first coordinate at n={n}: "
                    "projection fibers are unbounded",
                    stacklevel=2,
                )
        rows.append(
            CensusRow(
                n=n,
                distinct_count=census.distinct_count,
                sizeA=triple.sizeA,
                sizeB=triple.sizeB,
                sizeC=triple.sizeC,
                triple_count=triple.triple_count,
                seconds=time.perf_counter() - start,
            )
        )
        counts.append(census.distinct_count)
    slope, intercept, residual = fit_loglog(schedule, counts)
    fit = GrowthFit(
        schedule=tuple(schedule), counts=tuple(counts),
        slope=slope, intercept=intercept, residual=residual,
    )
    return CensusReport(rows=tuple(rows), fit=fit)


def growth_fit(
    curve1: CurveHandle,
    curve2: CurveHandle,
    schedule: Sequence[int],
    sampler: str = "equispaced",
    tol: float = 1e-9,
    seed: int = 0,
) -> GrowthFit:
    """Growth fit only; see :func:`run_census` for the full report."""
    return run_census(curve1, curve2, schedule, sampler=sampler, tol=tol, seed=seed).fit
