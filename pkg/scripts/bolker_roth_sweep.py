#!/usr/bin/env python3
"""Seeded sweep comparing the bipartite stress-dimension formula against the
directly computed left kernel, over generic / on-quadric / degenerate
configurations in d = 2..4.  Prints per-kind tallies and any mismatches."""

import argparse
import collections
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from rigidlab.bipartite import (
    CNotSpanningError,
    kernel_dim_via_stress,
    stress_space_dim_bolker_roth,
    stress_space_direct,
)
from rigidlab.framework import rigidity_matrix
from rigidlab.linalg import RankPolicy, rank
from rigidlab.sampling import random_bipartite, rng_from

KINDS = ("generic", "sphere", "ellipsoid", "cylinder", "coplanar_A")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=200, help="configurations to check")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--mode", choices=["exact", "floating"], default="exact")
    args = parser.parse_args()
    policy = RankPolicy.exact(args.seed) if args.mode == "exact" else RankPolicy.floating(seed=args.seed)

    tally = collections.Counter()
    mismatches = []
    start = time.perf_counter()
    trial = 0
    checked = 0
    while checked < args.count:
        rng = rng_from(args.seed, trial)
        d = 2 + (trial % 3)
        m = int(rng.integers(d + 1, d + 5))
        n = int(rng.integers(d + 1, d + 5))
        kind = KINDS[trial % len(KINDS)]
        trial += 1
        br = random_bipartite(rng, d, m, n, kind=kind, exact=(args.mode == "exact"))
        try:
            formula = stress_space_dim_bolker_roth(br, policy)
        except CNotSpanningError:
            tally["skipped (C not spanning)"] += 1
            continue
        _, direct = stress_space_direct(br, policy)
        R = rigidity_matrix(br.to_framework())
        kernel_direct = R.cols - rank(R, policy)
        kernel_stress = kernel_dim_via_stress(br, policy)
        if formula != direct or kernel_stress != kernel_direct:
            mismatches.append((kind, d, m, n, formula, direct, kernel_stress, kernel_direct))
        tally[kind] += 1
        checked += 1

    elapsed = time.perf_counter() - start
    for key, count in sorted(tally.items()):
        print(f"{key:28s} {count}")
    print(f"checked {checked} configurations in {elapsed:.1f}s ({args.mode} mode)")
    if mismatches:
        print(f"MISMATCHES: {len(mismatches)}")
        for row in mismatches:
            print("  ", row)
        return 1
    print("formula = direct and stress identity = direct kernel on every configuration")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
