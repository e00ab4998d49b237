"""Seeded random point sets for sweeps and tests."""

from __future__ import annotations

import itertools
import random
from math import gcd

from .hull import in_simplex
from .lattice import det
from .sumset import PointSet, generates_full_lattice


def coprime_pairs(rng: random.Random, count: int, b_max: int) -> list[tuple[int, int]]:
    """Distinct pairs ``0 < a < b <= b_max`` with ``gcd(a, b) = 1``."""
    pool = [(a, b) for b in range(2, b_max + 1) for a in range(1, b) if gcd(a, b) == 1]
    return sorted(rng.sample(pool, count), key=lambda p: (p[1], p[0]))


def random_set_1d(rng: random.Random, b_max: int, b_min: int = 2) -> PointSet:
    """Normalized set ``{0, ..., b}`` with random interior elements and gcd 1."""
    while True:
        b = rng.randint(b_min, b_max)
        inner = [x for x in range(1, b) if rng.random() < 0.3]
        vals = [0, *inner, b]
        g = 0
        for v in vals:
            g = gcd(g, v)
        if g == 1:
            return PointSet.of(vals)


def _random_vector(rng: random.Random, d: int, r: int) -> tuple:
    return tuple(rng.randint(-r, r) for _ in range(d))


def random_simplex_vertices(rng: random.Random, d: int, max_nvol: int, radius: int = 5) -> list[tuple]:
    """``0`` and ``d`` random vectors spanning a simplex with ``1 <= |det| <= max_nvol``."""
    while True:
        vs = [_random_vector(rng, d, radius) for _ in range(d)]
        if 1 <= abs(det(tuple(vs))) <= max_nvol:
            return [(0,) * d, *vs]


def _simplex_points(vertices) -> list[tuple]:
    d = len(vertices[0])
    ranges = [range(min(v[i] for v in vertices), max(v[i] for v in vertices) + 1) for i in range(d)]
    return [x for x in itertools.product(*ranges) if in_simplex(x, vertices)]


def random_simplicial(rng: random.Random, d: int, max_nvol: int, extra: int = 3) -> PointSet:
    """Simplex vertices plus up to ``extra`` lattice points of the simplex; ``A - A`` generates ``Z^d``."""
    if d == 1:
        return random_set_1d(rng, max_nvol)
    while True:
        verts = random_simplex_vertices(rng, d, max_nvol)
        inside = [p for p in _simplex_points(verts) if p not in verts]
        k = rng.randint(0, min(extra, len(inside)))
        a = PointSet.of(verts + rng.sample(inside, k))
        if a.hull.is_simplex and generates_full_lattice(a):
            return a


def random_dplus2(rng: random.Random, d: int, max_nvol: int, radius: int = 4) -> PointSet:
    """``d + 2`` points, full-dimensional and generating, hull of any shape."""
    if d == 1:
        while True:
            b = rng.randint(2, max_nvol)
            a = rng.randint(1, b - 1)
            if gcd(a, b) == 1:
                return PointSet.of([0, a, b])
    while True:
        pts = {(0,) * d}
        while len(pts) < d + 2:
            pts.add(_random_vector(rng, d, radius))
        a = PointSet.of(pts)
        info = a.hull
        if info.full_dimensional and 1 <= info.normalized_volume <= max_nvol and generates_full_lattice(a):
            return a
