"""Seeded generators for experiment configurations.

Everything here is deterministic given a numpy Generator.  The exact-mode
generators produce rational coordinates; points on spheres satisfy their
quadric equation exactly via the stereographic parameterization, so rank
decisions about them are proofs rather than estimates.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from rigidlab.bipartite import BipartiteRealization
from rigidlab.framework import Framework, Graph, Realization


def rng_from(seed: int, *stream: int) -> np.random.Generator:
    return np.random.default_rng([int(seed)] + [int(s) for s in stream])


def random_fraction(rng, max_num: int = 24, denominators: Sequence[int] = (1, 2, 3, 4, 5, 8)) -> Fraction:
    num = int(rng.integers(-max_num, max_num + 1))
    den = int(denominators[int(rng.integers(0, len(denominators)))])
    return Fraction(num, den)


def random_rational_point(rng, d: int) -> tuple:
    return tuple(random_fraction(rng) for _ in range(d))


def random_float_point(rng, d: int, scale: float = 2.0) -> tuple:
    return tuple(float(x) for x in rng.uniform(-scale, scale, d))


def sphere_point(rng, d: int, radius=1, center=None, exact: bool = False) -> tuple:
    """A point on the sphere of the given radius.  Exact mode uses the
    stereographic map u -> (2u, |u|^2 - 1) / (|u|^2 + 1), which lands on the
    unit sphere exactly for rational u."""
    if center is None:
        center = (0,) * d
    if exact:
        u = [random_fraction(rng, max_num=12, denominators=(1, 2, 3, 4)) for _ in range(d - 1)]
        s = sum(x * x for x in u)
        pt = tuple(2 * x / (s + 1) for x in u) + ((s - 1) / (s + 1),)
        r = Fraction(radius)
    else:
        g = rng.normal(size=d)
        g = g / np.linalg.norm(g)
        pt = tuple(float(x) for x in g)
        r = float(radius)
    return tuple(c + r * x for c, x in zip(center, pt))


def ellipsoid_point(rng, d: int, axes, exact: bool = False) -> tuple:
    pt = sphere_point(rng, d, radius=1, exact=exact)
    return tuple(a * x for a, x in zip(axes, pt))


def cylinder_point(rng, d: int, radius=1, exact: bool = False) -> tuple:
    """A point on the cylinder x1^2 + x2^2 = radius^2 (free remaining
    coordinates); for d = 2 this degenerates to the circle."""
    if exact:
        t = random_fraction(rng, max_num=10, denominators=(1, 2, 3))
        s = t * t
        r = Fraction(radius)
        first = (r * (1 - s) / (1 + s), r * 2 * t / (1 + s))
        rest = tuple(random_fraction(rng) for _ in range(d - 2))
    else:
        theta = float(rng.uniform(0.0, 2.0 * np.pi))
        r = float(radius)
        first = (r * np.cos(theta), r * np.sin(theta))
        rest = tuple(float(x) for x in rng.uniform(-2.0, 2.0, d - 2))
    return tuple(first) + rest


QUADRIC_KINDS = ("sphere", "ellipsoid", "cylinder")


def quadric_surface_point(rng, d: int, kind: str, params, exact: bool = False) -> tuple:
    if kind == "sphere":
        return sphere_point(rng, d, radius=params["radius"], center=params.get("center"), exact=exact)
    if kind == "ellipsoid":
        return ellipsoid_point(rng, d, params["axes"], exact=exact)
    if kind == "cylinder":
        return cylinder_point(rng, d, radius=params["radius"], exact=exact)
    raise ValueError(f"unknown quadric kind {kind!r}")


def random_quadric_params(rng, d: int, kind: str, exact: bool = False) -> dict:
    if kind == "sphere":
        radius = Fraction(int(rng.integers(1, 4))) if exact else float(rng.uniform(0.5, 2.5))
        return {"radius": radius}
    if kind == "ellipsoid":
        if exact:
            axes = tuple(Fraction(int(rng.integers(1, 5)), int(rng.integers(1, 3))) for _ in range(d))
        else:
            axes = tuple(float(x) for x in rng.uniform(0.5, 2.5, d))
        return {"axes": axes}
    if kind == "cylinder":
        radius = Fraction(int(rng.integers(1, 4))) if exact else float(rng.uniform(0.5, 2.5))
        return {"radius": radius}
    raise ValueError(f"unknown quadric kind {kind!r}")


def random_bipartite(
    rng,
    d: int,
    m: int,
    n: int,
    kind: str = "generic",
    exact: bool = False,
) -> BipartiteRealization:
    """A seeded (A, B) realization of K_{m,n} in R^d.

    kind "generic" draws unstructured points; the quadric kinds place all
    m+n vertices on one common surface; "coplanar_A" flattens side A into
    the hyperplane x_d = 0 (a spanning-hypothesis violation).
    """
    if kind == "generic":
        draw = (lambda: random_rational_point(rng, d)) if exact else (lambda: random_float_point(rng, d))
    elif kind in QUADRIC_KINDS:
        params = random_quadric_params(rng, d, kind, exact)
        draw = lambda: quadric_surface_point(rng, d, kind, params, exact)
    elif kind == "coplanar_A":
        base = (lambda: random_rational_point(rng, d - 1)) if exact else (lambda: random_float_point(rng, d - 1))
        A = [base() + ((Fraction(0) if exact else 0.0),) for _ in range(m)]
        draw = (lambda: random_rational_point(rng, d)) if exact else (lambda: random_float_point(rng, d))
        return BipartiteRealization(d, A, [draw() for _ in range(n)])
    else:
        raise ValueError(f"unknown configuration kind {kind!r}")
    return BipartiteRealization(d, [draw() for _ in range(m)], [draw() for _ in range(n)])


def random_graph(rng, vertex_count: int, edge_prob: float = 0.6) -> Graph:
    edges = [
        (i, j)
        for i in range(vertex_count)
        for j in range(i + 1, vertex_count)
        if rng.uniform() < edge_prob
    ]
    return Graph(vertex_count, tuple(edges))


def random_framework(rng, d: int, vertex_count: int, exact: bool = False, edge_prob: float = 0.6) -> Framework:
    g = random_graph(rng, vertex_count, edge_prob)
    draw = (lambda: random_rational_point(rng, d)) if exact else (lambda: random_float_point(rng, d))
    return Framework(g, Realization(d, tuple(draw() for _ in range(vertex_count))))


# frequency pool with no ratio-2/ratio-3 coincidences, so random helix
# blocks never share derived trig frequencies
HELIX_FREQUENCIES = (1.0, 1.4, 2.6, 3.7)


def random_helix_spec(rng, d: int, max_blocks: int | None = None, with_offset: bool = True):
    from rigidlab.curves import HelixSpec

    limit = d // 2 if max_blocks is None else min(max_blocks, d // 2)
    n_blocks = int(rng.integers(1, limit + 1))
    freqs = rng.choice(len(HELIX_FREQUENCIES), size=n_blocks, replace=False)
    blocks = []
    for idx in freqs:
        rho = float(rng.uniform(0.5, 2.0))
        lam = float(HELIX_FREQUENCIES[int(idx)]) * float(rng.choice([1.0, -1.0]))
        theta = float(rng.uniform(0.0, 2.0 * np.pi))
        blocks.append((rho, lam, theta))
    w = tuple(float(x) for x in rng.uniform(-1.5, 1.5, d - 2 * n_blocks))
    offset = tuple(float(x) for x in rng.uniform(-1.0, 1.0, d)) if with_offset else None
    return HelixSpec(dim=d, blocks=tuple(blocks), w=w, offset=offset)


def random_cubic_curve(rng, d: int = 3, scale: float = 1.0):
    """A random degree-3 parametric curve handle on the domain [-1, 1]."""
    from rigidlab.curves import CurveHandle

    coeffs = [[float(x) for x in rng.uniform(-scale, scale, 4)] for _ in range(d)]
    return CurveHandle.polynomial(coeffs, domain=(-1.0, 1.0))
