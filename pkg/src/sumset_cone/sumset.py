"""Finite point sets in ``Z^d`` and the brute-force sumset oracle.

The oracle (:func:`sumset_levels` and friends) is the ground truth every
closed form in this package is tested against, so it is deliberately
simple: level ``h`` is ``(h-1)A + A`` deduplicated.  Points are packed into
single int64 codes when the coordinate ranges allow it, which keeps levels
of a few hundred thousand points cheap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd, prod
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded, DimensionMismatch, HypothesisError
from .hull import HullInfo, analyze
from .lattice import smith_normal_form
from .polynomials import LaurentPoly

DEFAULT_BUDGET = 10**6

Point = tuple


def _as_point(p) -> Point:
    if isinstance(p, (int, np.integer)):
        return (int(p),)
    return tuple(int(a) for a in p)


@dataclass(frozen=True)
class PointSet:
    """A nonempty finite subset of ``Z^dim``; points are int tuples."""

    points: frozenset
    dim: int = field(default=-1)

    def __post_init__(self):
        pts = frozenset(_as_point(p) for p in self.points)
        if not pts:
            raise ValueError("a point set must be nonempty")
        dims = {len(p) for p in pts}
        if len(dims) != 1:
            raise DimensionMismatch("points of mixed dimension")
        (d,) = dims
        if self.dim not in (-1, d):
            raise DimensionMismatch(f"declared dim {self.dim} but points have dimension {d}")
        if d < 1:
            raise ValueError("dimension must be positive")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "dim", d)

    @classmethod
    def of(cls, points: Iterable, dim: int = -1) -> "PointSet":
        return cls(frozenset(_as_point(p) for p in points), dim)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.sorted())

    def __contains__(self, p) -> bool:
        return _as_point(p) in self.points

    def sorted(self) -> list[Point]:
        return sorted(self.points)

    @property
    def values(self) -> list[int]:
        """Sorted integers of a one-dimensional set."""
        if self.dim != 1:
            raise DimensionMismatch("values is only defined for d = 1")
        return [p[0] for p in self.sorted()]

    @cached_property
    def hull(self) -> HullInfo:
        return analyze(self.points)

    def translate(self, v: Sequence[int]) -> "PointSet":
        return PointSet(frozenset(tuple(a + b for a, b in zip(p, v)) for p in self.points))

    def scale(self, k: int) -> "PointSet":
        return PointSet(frozenset(tuple(k * a for a in p) for p in self.points))

    def __repr__(self):
        if self.dim == 1:
            return f"PointSet({self.values})"
        return f"PointSet({self.sorted()})"


def minkowski_sum(s: PointSet, t: PointSet) -> PointSet:
    if s.dim != t.dim:
        raise DimensionMismatch(f"cannot add sets of dimension {s.dim} and {t.dim}")
    return PointSet(frozenset(tuple(a + b for a, b in zip(p, q)) for p in s.points for q in t.points))


# -- oracle -----------------------------------------------------------------


def _lower_bound_size(n: int, h: int) -> int:
    # |hA| >= h(|A| - 1) + 1 for any finite A in a torsion-free group
    return h * (n - 1) + 1


class _Packer:
    """Packs points of ``hA`` (h <= h_max) into nonnegative int64 codes."""

    def __init__(self, a: PointSet, h_max: int):
        pts = a.sorted()
        d = a.dim
        self.mins = [min(p[i] for p in pts) for i in range(d)]
        spans = [max(p[i] for p in pts) - self.mins[i] for i in range(d)]
        self.bases = [h_max * s + 1 for s in spans]
        self.ok = prod(self.bases) < 2**62
        strides, acc = [], 1
        for b in self.bases:
            strides.append(acc)
            acc *= b
        self.strides = strides
        if not self.ok:
            return
        self.codes = np.array(
            sorted({sum((p[i] - self.mins[i]) * strides[i] for i in range(d)) for p in pts}),
            dtype=np.int64,
        )

    def unpack(self, codes: np.ndarray, h: int) -> frozenset:
        cols = []
        rest = codes
        for b, m in zip(self.bases, self.mins):
            cols.append((rest % b + h * m).tolist())
            rest = rest // b
        return frozenset(zip(*cols))


def _check_budget(a: PointSet, h: int, budget: int):
    if _lower_bound_size(len(a), h) > budget:
        raise BudgetExceeded(
            f"|{h}A| is at least {_lower_bound_size(len(a), h)}, above the oracle budget {budget}"
        )


def _packed_levels(a: PointSet, h_max: int, budget: int):
    """Yield level codes for h = 0..h_max, or ``None`` if packing overflows."""
    packer = _Packer(a, max(h_max, 1))
    if not packer.ok:
        return None, None
    out = [np.zeros(1, dtype=np.int64)]
    for h in range(1, h_max + 1):
        prev = out[-1]
        nxt = np.unique((prev[:, None] + packer.codes[None, :]).ravel())
        if len(nxt) > budget:
            raise BudgetExceeded(f"|{h}A| = {len(nxt)} exceeds the oracle budget {budget}")
        out.append(nxt)
    return packer, out


def _set_levels(a: PointSet, h_max: int, budget: int) -> list[frozenset]:
    origin = (0,) * a.dim
    levels = [frozenset([origin])]
    pts = a.sorted()
    for h in range(1, h_max + 1):
        nxt = frozenset(tuple(x + y for x, y in zip(p, q)) for p in levels[-1] for q in pts)
        if len(nxt) > budget:
            raise BudgetExceeded(f"|{h}A| = {len(nxt)} exceeds the oracle budget {budget}")
        levels.append(nxt)
    return levels


def sumset_levels(a: PointSet, h_max: int, budget: int = DEFAULT_BUDGET) -> list[frozenset]:
    """``[0A, 1A, ..., h_max A]`` as frozensets of int tuples.

    ``budget`` caps the number of points in any single level; requests that
    provably exceed it are refused before any work is done.
    """
    if h_max < 0:
        raise ValueError("h must be nonnegative")
    _check_budget(a, h_max, budget)
    packer, codes = _packed_levels(a, h_max, budget)
    if packer is None:
        return _set_levels(a, h_max, budget)
    return [packer.unpack(c, h) for h, c in enumerate(codes)]


def sumset_sizes(a: PointSet, h_max: int, budget: int = DEFAULT_BUDGET) -> list[int]:
    """``[|0A|, ..., |h_max A|]`` from the oracle."""
    if h_max < 0:
        raise ValueError("h must be nonnegative")
    _check_budget(a, h_max, budget)
    packer, codes = _packed_levels(a, h_max, budget)
    if packer is None:
        return [len(s) for s in _set_levels(a, h_max, budget)]
    return [len(c) for c in codes]


def iterated_sumset(a: PointSet, h: int, budget: int = DEFAULT_BUDGET) -> PointSet:
    """The h-fold sumset ``hA``; ``0A`` is the origin."""
    return PointSet(sumset_levels(a, h, budget)[h])


# -- normalization and lattice generation ------------------------------------


@dataclass(frozen=True)
class Transform:
    """``normalized = (original - shift) / scale``."""

    shift: Point
    scale: int = 1
    note: str = ""

    def forward(self, p: Sequence[int]) -> Point:
        return tuple((a - s) // self.scale for a, s in zip(p, self.shift))

    def back(self, p: Sequence[int], h: int = 1) -> Point:
        """Map a point of ``h * normalized`` back to ``h * original``."""
        return tuple(a * self.scale + h * s for a, s in zip(p, self.shift))


def normalize(a: PointSet) -> tuple[PointSet, Transform]:
    """Shift (and in d = 1 also dilate) ``A`` into standard position.

    In one dimension the result has minimum 0 and gcd 1.  In higher
    dimensions the lexicographically smallest point, always a hull vertex,
    is moved to the origin.
    """
    if a.dim == 1:
        vals = a.values
        lo = vals[0]
        if len(vals) == 1:
            return PointSet.of([0]), Transform((lo,), 1, "singleton set collapses to {0}")
        g = reduce(gcd, (v - lo for v in vals))
        out = PointSet.of([(v - lo) // g for v in vals])
        return out, Transform((lo,), g)
    v = min(a.points)
    return a.translate(tuple(-x for x in v)), Transform(v, 1)


def generates_full_lattice(a: PointSet) -> bool:
    """True iff the differences ``A - A`` span ``Z^d`` over the integers."""
    pts = a.sorted()
    p0 = pts[0]
    diffs = [tuple(x - y for x, y in zip(p, p0)) for p in pts[1:]]
    if len(diffs) < a.dim:
        return False
    # rows = coordinates, columns = difference vectors
    s = smith_normal_form([list(col) for col in zip(*diffs)])[1]
    return all(s[i][i] == 1 for i in range(a.dim))


def hull_analysis(a: PointSet) -> HullInfo:
    return a.hull


def sigma_weight(s: PointSet | Iterable) -> LaurentPoly:
    """Generating polynomial ``sum_{a in S} x^a`` of a finite set."""
    if isinstance(s, PointSet):
        return LaurentPoly.from_points(s.points, s.dim)
    pts = [p if type(p) is tuple else _as_point(p) for p in s]
    return LaurentPoly.from_points(pts, len(pts[0]))


# -- one-dimensional exceptional sets ----------------------------------------


def _require_normalized_1d(a: PointSet) -> list[int]:
    if a.dim != 1:
        raise HypothesisError("a one-dimensional set is required", "dimension")
    vals = a.values
    if vals[0] != 0:
        raise HypothesisError("the minimum element must be 0; normalize first", "not_normalized")
    if reduce(gcd, vals) != 1:
        raise HypothesisError("gcd of the elements must be 1", "gcd")
    return vals


def exceptional_set(a: PointSet) -> frozenset[int]:
    """The naturals that lie in no ``hA`` (normalized one-dimensional ``A``)."""
    vals = _require_normalized_1d(a)
    b = vals[-1]
    steps = [v for v in vals if v > 0]
    bound = b * b
    rep = bytearray(bound + 1)
    rep[0] = 1
    for n in range(1, bound + 1):
        rep[n] = any(n >= s and rep[n - s] for s in steps)
    # once n is representable, so is every n + kb: the scan is complete when
    # every residue mod b has been hit
    hit = {n % b for n in range(bound + 1) if rep[n]}
    if len(hit) != b:
        raise AssertionError("scan bound too small to certify the exceptional set")
    return frozenset(n for n in range(bound + 1) if not rep[n])


def reflect(a: PointSet) -> PointSet:
    """``max(A) - A`` for a one-dimensional set."""
    b = max(a.values)
    return PointSet.of([b - v for v in a.values])


def granville_walker_threshold(a: PointSet) -> int:
    return max(a.values) - len(a) + 2


def granville_walker_prediction(a: PointSet, h: int) -> frozenset[int]:
    b = max(_require_normalized_1d(a))
    e = exceptional_set(a)
    e_rev = exceptional_set(reflect(a))
    return frozenset(n for n in range(b * h + 1) if n not in e and (b * h - n) not in e_rev)


def granville_walker_check(a: PointSet, h: int, budget: int = DEFAULT_BUDGET) -> bool:
    """Does ``hA = {0..bh} minus (E(A) and bh - E(b - A))`` hold at this h?"""
    predicted = granville_walker_prediction(a, h)
    actual = frozenset(p[0] for p in sumset_levels(a, h, budget)[h])
    return predicted == actual


def random_subset_1d(rng, b: int) -> PointSet:
    """Random normalized set with maximum ``b`` (rejection on the gcd)."""
    while True:
        inner = [x for x in range(1, b) if rng.random() < 0.5]
        vals = [0, *inner, b]
        if reduce(gcd, vals) == 1:
            return PointSet.of(vals)


def all_normalized_1d(b: int):
    """Every normalized one-dimensional set with maximum exactly ``b``."""
    inner = list(range(1, b))
    for r in range(len(inner) + 1):
        for combo in itertools.combinations(inner, r):
            vals = (0, *combo, b)
            if reduce(gcd, vals) == 1:
                yield PointSet.of(vals)
