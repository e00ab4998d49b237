"""Sets of d + 2 points through truncated simplicial cones.

With ``A = {0, v0, v1, ..., vd}`` and ``B = {v1..vd}`` independent,

    hA = union_{j=0..h} (j v0 + C_{h-j}),   C_k = {sum n_i v_i : n_i >= 0, sum n_i <= k}.

The slices ``A_{j,h} = j v0 + C_{h-j}`` only meet when ``j`` and ``j'`` are
congruent modulo the order ``N`` of ``v0`` in ``Z^d / span_Z B``, and
consecutive such slices overlap in a copy of ``C_{h-j-H}`` with
``H = vol * d!``.  Inclusion-exclusion then gives ``|hA|`` in closed form.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .cone import _compositions
from .errors import HypothesisError
from .lattice import rank, solve_rational
from .polynomials import binom
from .sumset import PointSet

Point = tuple


@dataclass(frozen=True)
class TruncatedConeData:
    base: PointSet
    basis: tuple[Point, ...]
    v0: Point
    N: int
    c: tuple[int, ...]
    w: Point
    H: int

    @property
    def dim(self) -> int:
        return self.base.dim


def _choose_basis(nonzero: Sequence[Point], d: int) -> tuple[Point, ...]:
    for combo in itertools.combinations(nonzero, d):
        if rank(list(combo)) == d:
            return combo
    raise HypothesisError("no d nonzero elements are linearly independent", "not_full_rank")


def order_of_v0(basis: Sequence[Point], v0: Point) -> tuple[int, tuple[int, ...]]:
    """``(N, c)``: least ``N >= 1`` with ``N v0`` in ``span_Z B``, and its coordinates."""
    coords = solve_rational(list(basis), v0)
    if coords is None:
        raise HypothesisError("v0 is not in the rational span of the basis", "not_full_rank")
    n = lcm(*(Fraction(x).denominator for x in coords))
    return n, tuple(int(n * Fraction(x)) for x in coords)


def compute_w(basis: Sequence[Point], c: Sequence[int]) -> Point:
    """Apex of ``Gamma ∩ (N v0 + Gamma)`` for ``Gamma = span_N B``."""
    d = len(basis[0])
    return tuple(sum(max(cj, 0) * v[i] for cj, v in zip(c, basis)) for i in range(d))


def truncated_cone_data(a: PointSet, basis: Sequence[Sequence[int]] | None = None) -> TruncatedConeData:
    """Set up the decomposition for a set of ``d + 2`` points.

    ``A`` is first translated so its lexicographically smallest point is 0.
    Without an explicit ``basis`` the first independent ``d``-subset of the
    remaining points (in sorted order) is used.
    """
    d = a.dim
    if len(a) != d + 2:
        raise HypothesisError(f"expected {d + 2} points, got {len(a)}", "size")
    origin = (0,) * d
    if origin not in a.points:
        a = a.translate(tuple(-x for x in min(a.points)))
    nonzero = [p for p in a.sorted() if p != origin]
    if basis is None:
        chosen = _choose_basis(nonzero, d)
    else:
        chosen = tuple(tuple(v) for v in basis)
        if len(chosen) != d or any(v not in nonzero for v in chosen) or rank(list(chosen)) != d:
            raise HypothesisError("basis must be d independent nonzero elements of A", "bad_basis")
    (v0,) = [p for p in nonzero if p not in chosen]
    n, c = order_of_v0(chosen, v0)
    if not a.hull.full_dimensional:
        raise HypothesisError("the point set is not full-dimensional", "not_full_rank")
    return TruncatedConeData(a, chosen, v0, n, c, compute_w(chosen, c), a.hull.normalized_volume)


def simplex_points(basis: Sequence[Point], k: int) -> frozenset:
    """``C_k``; empty for ``k < 0``."""
    d = len(basis[0])
    if k < 0:
        return frozenset()
    out = set()
    # sum n_i <= k  <=>  compositions of k into d + 1 parts with a slack part
    for ns in _compositions(k, d + 1):
        out.add(tuple(sum(n * v[i] for n, v in zip(ns, basis)) for i in range(d)))
    return frozenset(out)


def truncated_cone(tc: TruncatedConeData, j: int, h: int) -> frozenset:
    """``A_{j,h} = j v0 + C_{h-j}`` (empty when ``j > h``)."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    shift = tuple(j * x for x in tc.v0)
    return frozenset(tuple(a + b for a, b in zip(p, shift)) for p in simplex_points(tc.basis, h - j))


def union_of_slices(tc: TruncatedConeData, h: int) -> frozenset:
    out = set()
    for j in range(h + 1):
        out |= truncated_cone(tc, j, h)
    return frozenset(out)


def congruent_intersection_check(tc: TruncatedConeData, indices: Iterable[int], h: int) -> bool:
    """Intersection over congruent slices equals that of the extreme two."""
    idx = sorted(set(indices))
    if not idx:
        raise ValueError("need at least one index")
    if len({j % tc.N for j in idx}) > 1:
        warnings.warn("indices are not congruent modulo N; nothing to check", stacklevel=2)
        return True
    inter = truncated_cone(tc, idx[0], h)
    for j in idx[1:]:
        inter = inter & truncated_cone(tc, j, h)
    return inter == truncated_cone(tc, idx[0], h) & truncated_cone(tc, idx[-1], h)


def pair_intersection_check(tc: TruncatedConeData, j: int, a: int, h: int) -> bool:
    """``A_{j,h} ∩ A_{j+aN,h} = j v0 + a w + C_{h-j-aH}``."""
    left = truncated_cone(tc, j, h) & truncated_cone(tc, j + a * tc.N, h)
    shift = tuple(j * x + a * y for x, y in zip(tc.v0, tc.w))
    right = frozenset(
        tuple(p + s for p, s in zip(q, shift)) for q in simplex_points(tc.basis, h - j - a * tc.H)
    )
    return left == right


def H_value(tc: TruncatedConeData) -> int:
    return tc.H


def disjointness_threshold(tc: TruncatedConeData, h_limit: int | None = None) -> int | None:
    """Least h at which two slices ``A_{j,h}``, ``A_{j',h}`` meet, by enumeration.

    Returns ``None`` if they stay disjoint up to ``h_limit``.
    """
    if h_limit is None:
        h_limit = tc.H + 2
    for h in range(h_limit + 1):
        slices = [truncated_cone(tc, j, h) for j in range(h + 1)]
        seen: set = set()
        for s in slices:
            if seen & s:
                return h
            seen |= s
    return None


def inclusion_exclusion_cardinality(tc: TruncatedConeData, h: int) -> int:
    """``|hA|`` from singletons and consecutive congruent pairs only."""
    d = tc.dim
    total = sum(binom(h - j + d, d) for j in range(h + 1))
    for j in range(h + 1):
        # |A_{j,h} ∩ A_{j+N,h}| = |C_{h-j-H}|
        if j + tc.N <= h:
            total -= binom(h - j - tc.H + d, d)
    return total
