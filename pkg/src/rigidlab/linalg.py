"""Rank, kernel, and left-kernel computation with a dual arithmetic backend.

Every dimension decision in the package (rigidity, stress spaces, quadric
spaces, affine spans) funnels through :func:`rank` / :func:`kernel_basis`.
Two backends are provided:

* ``exact``: Gaussian elimination over the rationals.  Only applicable when
  all entries are rational (``int`` / ``Fraction``); the returned rank is a
  theorem, not an estimate.
* ``floating``: SVD with a relative singular-value cutoff.  The cutoff is
  ``rel_tol`` times the largest singular value, so a zero matrix has rank 0.

Basis vectors are unnormalized tuples of ``Fraction`` in exact mode and
unit-norm numpy arrays in floating mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

Scalar = Union[int, Fraction, float]

DEFAULT_REL_TOL = 1e-9


class ArithmeticModeError(ValueError):
    """Exact-rational arithmetic requested for non-rational entries."""


@dataclass(frozen=True)
class RankPolicy:
    """Arithmetic mode and tolerance governing every dimension decision.

    ``rel_tol`` is the singular-value cutoff relative to the largest
    singular value; it is only consulted in floating mode.  ``seed`` feeds
    randomized probes elsewhere in the package (the rank computation itself
    is deterministic).
    """

    mode: str = "floating"
    rel_tol: float = DEFAULT_REL_TOL
    seed: int = 0

    def __post_init__(self) -> None:
        if self.mode not in ("exact", "floating"):
            raise ValueError(f"unknown arithmetic mode: {self.mode!r}")
        if self.mode == "floating" and not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive in floating mode")

    @classmethod
    def exact(cls, seed: int = 0) -> "RankPolicy":
        return cls(mode="exact", seed=seed)

    @classmethod
    def floating(cls, rel_tol: float = DEFAULT_REL_TOL, seed: int = 0) -> "RankPolicy":
        return cls(mode="floating", rel_tol=rel_tol, seed=seed)


DEFAULT_POLICY = RankPolicy()


def _is_rational(x: Scalar) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


@dataclass(frozen=True)
class Matrix:
    """Dense row-major matrix over rational or real scalars."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entry count {len(self.entries)} != rows*cols = {self.rows * self.cols}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[Scalar]], cols: int | None = None) -> "Matrix":
        rows = [tuple(r) for r in rows]
        if rows:
            cols = len(rows[0])
            if any(len(r) != cols for r in rows):
                raise ValueError("ragged rows")
        elif cols is None:
            raise ValueError("cols must be given for an empty matrix")
        flat = tuple(x for r in rows for x in r)
        return cls(len(rows), cols, flat)

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_lists(self) -> list[list[Scalar]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        flat = tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows))
        return Matrix(self.cols, self.rows, flat)

    def to_numpy(self) -> np.ndarray:
        return np.array(
            [[float(x) for x in self.row(i)] for i in range(self.rows)], dtype=float
        ).reshape(self.rows, self.cols)

    @property
    def is_rational(self) -> bool:
        return all(_is_rational(x) for x in self.entries)


def _require_rational(m: Matrix) -> None:
    if not m.is_rational:
        raise ArithmeticModeError(
            "exact mode requires rational entries (int or Fraction); got a float"
        )


def _clear_denominators(row: Sequence[Scalar]) -> list[int]:
    """Scale a rational row to coprime integers (kernel-preserving)."""
    fracs = [Fraction(x) for x in row]
    scale = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * scale) for f in fracs]
    g = math.gcd(*ints) if any(ints) else 1
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def _int_echelon(rows: list[list[int]], cols: int) -> tuple[list[int], list[list[int]]]:
    """Fraction-free forward elimination with per-row gcd normalization.

    Returns (pivot column indices, echelon rows).  Row scaling never changes
    the kernel, so downstream back-substitution stays exact.
    """
    pivot_cols: list[int] = []
    echelon: list[list[int]] = []
    work = [r for r in rows if any(r)]
    for c in range(cols):
        candidates = [r for r in work if r[c] != 0]
        if not candidates:
            continue
        # smallest pivot magnitude keeps intermediate integers small
        pivot = min(candidates, key=lambda r: abs(r[c]))
        work.remove(pivot)
        p = pivot[c]
        reduced = []
        for r in work:
            if r[c] != 0:
                f = r[c]
                r = [p * a - f * b for a, b in zip(r, pivot)]
                g = math.gcd(*r) if any(r) else 1
                if g > 1:
                    r = [x // g for x in r]
            if any(r):
                reduced.append(r)
        work = reduced
        pivot_cols.append(c)
        echelon.append(pivot)
    return pivot_cols, echelon


def _exact_echelon(m: Matrix) -> tuple[list[int], list[list[int]]]:
    _require_rational(m)
    rows = [_clear_denominators(m.row(i)) for i in range(m.rows)]
    return _int_echelon(rows, m.cols)


def _exact_kernel(m: Matrix) -> list[tuple]:
    pivot_cols, echelon = _exact_echelon(m)
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        v: list[Fraction] = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        # echelon rows are ordered by pivot column; substitute bottom-up
        for pc, row in zip(reversed(pivot_cols), reversed(echelon)):
            s = sum((Fraction(row[c]) * v[c] for c in range(pc + 1, m.cols) if row[c]), Fraction(0))
            v[pc] = -s / row[pc]
        basis.append(tuple(v))
    return basis


def _floating_svd(m: Matrix) -> tuple[np.ndarray, np.ndarray]:
    a = m.to_numpy()
    if m.rows == 0 or m.cols == 0:
        return np.zeros(0), np.eye(m.cols)
    _, s, vt = np.linalg.svd(a, full_matrices=True)
    return s, vt


def _floating_rank(m: Matrix, rel_tol: float) -> int:
    s, _ = _floating_svd(m)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rel_tol * s[0]))


def rank(m: Matrix, policy: RankPolicy | None = None) -> int:
    """Rank of ``m`` under the policy's arithmetic mode."""
    policy = policy or DEFAULT_POLICY
    if policy.mode == "exact":
        pivot_cols, _ = _exact_echelon(m)
        return len(pivot_cols)
    return _floating_rank(m, policy.rel_tol)


def kernel_basis(m: Matrix, policy: RankPolicy | None = None) -> list:
    """Basis of the (right) kernel; ``cols - rank(m)`` vectors.

    Exact mode returns unnormalized tuples of ``Fraction`` with
    ``m @ v == 0`` exactly; floating mode returns unit-norm arrays with
    ``|m @ v| <= rel_tol * |m| * |v|``.
    """
    policy = policy or DEFAULT_POLICY
    if policy.mode == "exact":
        return _exact_kernel(m)
    if m.cols == 0:
        return []
    s, vt = _floating_svd(m)
    r = 0 if (s.size == 0 or s[0] == 0.0) else int(np.count_nonzero(s > policy.rel_tol * s[0]))
    return [vt[i].copy() for i in range(r, m.cols)]


def left_kernel_basis(m: Matrix, policy: RankPolicy | None = None) -> list:
    """Basis of the left kernel, i.e. the kernel of the transpose."""
    return kernel_basis(m.transpose(), policy)


def vector_as_floats(v) -> np.ndarray:
    """Uniform float view of a basis vector from either backend."""
    if isinstance(v, np.ndarray):
        return v
    return np.array([float(x) for x in v], dtype=float)
