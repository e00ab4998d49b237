"""Exact convex hulls and normalized volumes of small point sets.

Everything runs on ints and Fractions.  The point sets handled here have a
few dozen points at most, so the facet search is a plain scan over
``d``-subsets rather than an incremental algorithm.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .lattice import det, rank, solve_rational

Point = tuple


@dataclass(frozen=True)
class HullInfo:
    vertices: tuple[Point, ...]
    is_simplex: bool
    normalized_volume: int
    full_dimensional: bool


def affine_rank(points: Sequence[Point]) -> int:
    pts = list(points)
    if len(pts) <= 1:
        return 0
    p0 = pts[0]
    return rank([tuple(a - b for a, b in zip(p, p0)) for p in pts[1:]])


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(points) -> list[Point]:
    """Andrew's monotone chain; collinear boundary points are dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _normal(base: Sequence[Point]):
    """Normal vector of the hyperplane through ``d`` points in ``R^d``."""
    p0 = base[0]
    rows = [[a - b for a, b in zip(p, p0)] for p in base[1:]]
    d = len(p0)
    normal = []
    for i in range(d):
        minor = [r[:i] + r[i + 1:] for r in rows]
        normal.append((-1) ** i * _det_any(minor))
    return normal


def _det_any(m):
    if not m:
        return 1
    if all(isinstance(x, int) for r in m for x in r):
        return det(tuple(tuple(r) for r in m))
    a = [[Fraction(x) for x in r] for r in m]
    n = len(a)
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            out = -out
        out *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return out


def facets(points: Sequence[Point]) -> list[tuple[tuple, frozenset]]:
    """Facets of a full-dimensional point set as ``(outer normal, index set)``.

    Each facet is returned once; the index set lists every point lying on it.
    """
    pts = list(points)
    d = len(pts[0])
    if d == 1:
        vals = [p[0] for p in pts]
        lo, hi = min(vals), max(vals)
        return [((-1,), frozenset(i for i, v in enumerate(vals) if v == lo)),
                ((1,), frozenset(i for i, v in enumerate(vals) if v == hi))]
    seen = {}
    for combo in itertools.combinations(range(len(pts)), d):
        base = [pts[i] for i in combo]
        n = _normal(base)
        if all(c == 0 for c in n):
            continue
        p0 = base[0]
        sides = [sum(c * (a - b) for c, a, b in zip(n, p, p0)) for p in pts]
        if all(s <= 0 for s in sides):
            pass
        elif all(s >= 0 for s in sides):
            n = [-c for c in n]
        else:
            continue
        on = frozenset(i for i, s in enumerate(sides) if s == 0)
        if on not in seen:
            seen[on] = tuple(n)
    return [(n, on) for on, n in seen.items()]


def _affine_coordinates(points: Sequence[Point]):
    """Express a point set in coordinates of its own affine hull."""
    pts = list(points)
    p0 = pts[0]
    diffs = [tuple(a - b for a, b in zip(p, p0)) for p in pts]
    basis = []
    for v in diffs:
        if rank(basis + [v]) > len(basis):
            basis.append(v)
    coords = [solve_rational(basis, v) for v in diffs]
    return coords, len(basis)


def _vertex_indices(coords) -> list[int]:
    k = len(coords[0])
    if k == 0:
        return [0]
    if k == 1:
        vals = [c[0] for c in coords]
        return sorted({vals.index(min(vals)), vals.index(max(vals))})
    if k == 2:
        order = {}
        for i, c in enumerate(coords):
            order.setdefault(tuple(c), i)
        return sorted(order[tuple(v)] for v in _hull_2d(order))
    fs = facets(coords)
    verts = []
    for i in range(len(coords)):
        normals = [n for n, on in fs if i in on]
        if rank(normals) == k:
            verts.append(i)
    return verts


def hull_vertices(points: Sequence[Point]) -> list[Point]:
    """Vertices of the convex hull, sorted lexicographically."""
    pts = sorted(set(points))
    if len(pts) == 1:
        return pts
    coords, _ = _affine_coordinates(pts)
    return sorted(pts[i] for i in _vertex_indices(coords))


def _triangulate(points: Sequence[Point]) -> list[tuple[Point, ...]]:
    """Pulling triangulation of ``conv(points)`` within its affine hull."""
    pts = sorted(set(points))
    coords, k = _affine_coordinates(pts)
    vidx = _vertex_indices(coords)
    verts = [pts[i] for i in vidx]
    if len(verts) == k + 1:
        return [tuple(verts)]
    vcoords = [coords[i] for i in vidx]
    apex = 0  # lexicographically smallest vertex
    out = []
    for _, on in facets(vcoords):
        if apex in on:
            continue
        for simplex in _triangulate([verts[i] for i in on]):
            out.append((verts[apex],) + simplex)
    return out


def normalized_volume(points: Sequence[Point]) -> int:
    """``vol(conv(points)) * d!`` as an exact integer (0 if not full-dimensional)."""
    pts = sorted(set(points))
    d = len(pts[0])
    if affine_rank(pts) < d:
        return 0
    if d == 1:
        return pts[-1][0] - pts[0][0]
    if d == 2:
        ring = _hull_2d(pts)
        twice = sum(ring[i][0] * ring[(i + 1) % len(ring)][1] - ring[(i + 1) % len(ring)][0] * ring[i][1]
                    for i in range(len(ring)))
        return abs(twice)
    total = 0
    for s in _triangulate(pts):
        total += abs(det(tuple(tuple(a - b for a, b in zip(p, s[0])) for p in s[1:])))
    return total


def triangulated_volume(points: Sequence[Point]) -> int:
    """Normalized volume by explicit triangulation, in every dimension."""
    pts = sorted(set(points))
    d = len(pts[0])
    if affine_rank(pts) < d:
        return 0
    return sum(
        abs(det(tuple(tuple(a - b for a, b in zip(p, s[0])) for p in s[1:])))
        for s in _triangulate(pts)
    )


def analyze(points: Sequence[Point]) -> HullInfo:
    pts = sorted(set(points))
    d = len(pts[0])
    verts = tuple(hull_vertices(pts))
    full = affine_rank(pts) == d
    if not full:
        return HullInfo(verts, False, 0, False)
    simplex = len(verts) == d + 1
    if simplex:
        v0 = verts[0]
        vol = abs(det(tuple(tuple(a - b for a, b in zip(v, v0)) for v in verts[1:])))
    else:
        vol = normalized_volume(pts)
    return HullInfo(verts, simplex, vol, True)


def in_simplex(x: Sequence[int], vertices: Sequence[Point]) -> bool:
    """Exact test for ``x`` in the closed simplex spanned by ``vertices``."""
    v0 = vertices[0]
    gens = [tuple(a - b for a, b in zip(v, v0)) for v in vertices[1:]]
    lam = solve_rational(gens, tuple(a - b for a, b in zip(x, v0)))
    if lam is None:
        return False
    return all(c >= 0 for c in lam) and sum(lam) <= 1
