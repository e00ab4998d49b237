"""The lifted cone over a simplicial point set.

A point ``a`` of ``hA`` lifts to ``(a, h)`` in ``Z^{d+1}``; the union of
all lifts is the cone.  The lifts of the hull vertices span a lattice whose
cosets split the cone into finitely many residue classes, and each class is
a finite union of translates of the vertex orthant (its minimal elements).
Minimal heights never exceed ``vol * d! - 1``, so scanning that many levels
of the oracle finds all of them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import HypothesisError
from .hull import facets
from .lattice import CosetLabel, Lattice, SimplicialBasis
from .sumset import DEFAULT_BUDGET, PointSet, generates_full_lattice, sumset_levels

Point = tuple


class LiftedPoint(NamedTuple):
    point: Point
    height: int

    @property
    def lifted(self) -> Point:
        return (*self.point, self.height)


@dataclass(frozen=True)
class MinimalElementSet:
    """Minimal elements of one residue class, with coordinates in the vertex basis.

    ``lambda_coords[i]`` are the integer coordinates of
    ``minimals[i] - minimals[0]`` in the basis of lifted hull vertices.
    """

    label: CosetLabel
    minimals: tuple[LiftedPoint, ...]
    lambda_coords: tuple[tuple[int, ...], ...]

    @property
    def reference(self) -> LiftedPoint:
        return self.minimals[0]

    @property
    def max_height(self) -> int:
        return max(m.height for m in self.minimals)


@dataclass
class ConeData:
    base: PointSet
    vertices: tuple[Point, ...]
    lattice: Lattice
    levels: list[frozenset]
    residue_classes: dict[CosetLabel, MinimalElementSet]
    height_bound: int
    _orthant: SimplicialBasis = field(repr=False, default=None)

    def __post_init__(self):
        if self._orthant is None:
            self._orthant = SimplicialBasis(self.lattice.generators)

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def h_max(self) -> int:
        return len(self.levels) - 1

    def label(self, p: LiftedPoint | Sequence[int], height: int | None = None) -> CosetLabel:
        lp = _lifted(p, height)
        return self.lattice.label(lp)

    def class_of(self, p, height: int | None = None) -> MinimalElementSet:
        return self.residue_classes[self.label(p, height)]

    def minimal_elements(self) -> list[MinimalElementSet]:
        return [self.residue_classes[k] for k in sorted(self.residue_classes)]

    def all_minimals(self) -> list[LiftedPoint]:
        return sorted(m for s in self.residue_classes.values() for m in s.minimals)

    def orthant_coordinates(self, diff: Sequence[int]):
        """Coordinates of a lifted difference vector in ``span_N`` of the vertex lifts."""
        return self._orthant.nonneg_coordinates(diff)

    def decompose(self, p, height: int | None = None):
        """``(minimal, coeffs)`` with ``p = minimal + sum coeffs_i * lift(v_i)``, or ``None``."""
        lp = _lifted(p, height)
        cls = self.residue_classes.get(self.lattice.label(lp))
        if cls is None:
            return None
        for m in cls.minimals:
            c = self.orthant_coordinates(tuple(a - b for a, b in zip(lp, m.lifted)))
            if c is not None:
                return m, c
        return None

    def contains(self, p, height: int | None = None) -> bool:
        """Membership in the cone at any height, decided from the minimal elements."""
        return self.decompose(p, height) is not None

    def completeness_verified(self) -> bool:
        """No point one level above the height bound is minimal."""
        h = self.height_bound + 1
        if h > self.h_max:
            return False
        return not _minimal_points(self.levels, h, self.vertices)


def _lifted(p, height) -> Point:
    if isinstance(p, LiftedPoint):
        return p.lifted
    if height is None:
        return tuple(p)
    return (*p, height)


def _minimal_points(levels, h, vertices) -> list[Point]:
    if h == 0:
        return sorted(levels[0])
    below = levels[h - 1]
    return sorted(
        g for g in levels[h]
        if all(tuple(a - b for a, b in zip(g, v)) not in below for v in vertices)
    )


def _require_simplex(a: PointSet):
    info = a.hull
    if not info.full_dimensional:
        raise HypothesisError("the point set is not full-dimensional", "not_full_rank")
    if not info.is_simplex:
        raise HypothesisError(
            "simplex required; sets of d+2 points with other hulls go through truncated_cones",
            "not_simplex",
        )


def build_cone(a: PointSet, h_max: int | None = None, budget: int = DEFAULT_BUDGET) -> ConeData:
    """Build the lifted cone with its residue classes and minimal elements.

    Levels are cached up to ``max(h_max, vol * d!)`` so that the minimal
    element scan is complete and can be double-checked one level higher.
    """
    _require_simplex(a)
    vertices = a.hull.vertices
    bound = a.hull.normalized_volume - 1
    top = max(h_max or 0, bound + 1)
    lattice = Lattice(tuple((*v, 1) for v in vertices))
    levels = sumset_levels(a, top, budget)

    grouped: dict[CosetLabel, list[LiftedPoint]] = {}
    for h in range(bound + 1):
        for g in _minimal_points(levels, h, vertices):
            lp = LiftedPoint(g, h)
            grouped.setdefault(lattice.label(lp.lifted), []).append(lp)

    classes = {}
    for label, mins in grouped.items():
        mins.sort(key=lambda m: (m.height, m.point))
        ref = mins[0].lifted
        coords = tuple(
            lattice.integer_coordinates(tuple(x - y for x, y in zip(m.lifted, ref))) for m in mins
        )
        classes[label] = MinimalElementSet(label, tuple(mins), coords)
    return ConeData(a, vertices, lattice, levels, classes, bound)


def minimal_elements(cone: ConeData) -> list[MinimalElementSet]:
    return cone.minimal_elements()


def cone_join(cone: ConeData, minimals: Sequence[LiftedPoint]) -> LiftedPoint:
    """Apex of the intersection of the orthants ``m + Lambda^+`` over one class."""
    if not minimals:
        raise ValueError("need at least one element")
    labels = {cone.label(m) for m in minimals}
    if len(labels) != 1:
        raise ValueError("elements of different residue classes cannot be joined")
    ref = minimals[0].lifted
    coords = [cone.lattice.integer_coordinates(tuple(x - y for x, y in zip(m.lifted, ref))) for m in minimals]
    top = [max(c[i] for c in coords) for i in range(len(ref))]
    apex = tuple(x + y for x, y in zip(ref, cone.lattice.combine(top)))
    return LiftedPoint(apex[:-1], apex[-1])


# -- tangent cones ------------------------------------------------------------


@dataclass(frozen=True)
class TangentCone:
    """``T_v(A)``: union of ``g + span_N(edge_gens)`` over stored generators ``g``."""

    vertex: Point
    edge_gens: tuple[Point, ...]
    generators: dict  # CosetLabel of span_Z(edge_gens) -> tuple of points
    _edges: SimplicialBasis = field(repr=False, compare=False, default=None)
    _lattice: Lattice = field(repr=False, compare=False, default=None)

    def contains(self, x: Sequence[int]) -> bool:
        x = tuple(x)
        for g in self.generators.get(self._lattice.label(x), ()):
            if self._edges.nonneg_coordinates(tuple(a - b for a, b in zip(x, g))) is not None:
                return True
        return False

    def all_generators(self) -> list[Point]:
        return sorted(g for gs in self.generators.values() for g in gs)


def tangent_cone(source: PointSet | ConeData, v: Sequence[int]) -> TangentCone:
    """Tangent cone at hull vertex ``v``, from the cone's minimal elements.

    A minimal ``(g, H)`` of the cone over ``A`` maps to the minimal
    ``(g - H v, H)`` of the cone over ``A - v``, so nothing is recomputed.
    """
    cone = source if isinstance(source, ConeData) else build_cone(source)
    v = tuple(v)
    if v not in cone.vertices:
        raise ValueError(f"{v} is not a vertex of the convex hull")
    edges = tuple(tuple(a - b for a, b in zip(w, v)) for w in cone.vertices if w != v)
    lat = Lattice(edges)
    gens: dict[CosetLabel, set] = {}
    for m in cone.all_minimals():
        g = tuple(a - m.height * b for a, b in zip(m.point, v))
        gens.setdefault(lat.label(g), set()).add(g)
    frozen = {k: tuple(sorted(s)) for k, s in gens.items()}
    return TangentCone(v, edges, frozen, SimplicialBasis(edges), lat)


def tangent_cone_contains(tc: TangentCone, x: Sequence[int]) -> bool:
    return tc.contains(x)


def vertex_cone(a: PointSet, v: Sequence[int], budget: int = DEFAULT_BUDGET) -> ConeData:
    """The cone over ``A - v`` built from scratch (for symmetry checks)."""
    return build_cone(a.translate(tuple(-x for x in v)), budget=budget)


# -- explicit descriptions of hA ---------------------------------------------


def _compositions(total: int, parts: int):
    """All tuples of ``parts`` naturals summing to ``total``."""
    if total < 0:
        return
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 1 - prev - 1)
        yield tuple(out)


def explicit_sumset(cone: ConeData, h: int) -> PointSet:
    """``hA`` rebuilt from the minimal elements alone, valid for every ``h``."""
    d = cone.dim
    out = set()
    for m in cone.all_minimals():
        for ks in _compositions(h - m.height, d + 1):
            out.add(tuple(
                m.point[c] + sum(k * v[c] for k, v in zip(ks, cone.vertices)) for c in range(d)
            ))
    return PointSet(frozenset(out))


def structure_threshold(a: PointSet) -> int:
    """``vol * (d+1)! - 2 - 2d``, from where ``hA`` is the intersection of tangent cones."""
    d = a.dim
    return a.hull.normalized_volume * (d + 1) - 2 - 2 * d


def lattice_points_in_dilate(vertices: Sequence[Point], h: int) -> list[Point]:
    """Integer points of ``h * conv(vertices)`` by bounding-box scan."""
    d = len(vertices[0])
    if h == 0:
        return [(0,) * d]
    scaled = [tuple(h * a for a in v) for v in vertices]
    if d == 1:
        lo, hi = min(p[0] for p in scaled), max(p[0] for p in scaled)
        return [(x,) for x in range(lo, hi + 1)]
    ineqs = []
    for normal, on in facets(scaled):
        q = scaled[next(iter(on))]
        ineqs.append((normal, sum(n * c for n, c in zip(normal, q))))
    ranges = [range(min(p[i] for p in scaled), max(p[i] for p in scaled) + 1) for i in range(d)]
    return [
        x for x in itertools.product(*ranges)
        if all(sum(n * c for n, c in zip(normal, x)) <= rhs for normal, rhs in ineqs)
    ]


def structure_theorem_check(
    a: PointSet, h: int, cone: ConeData | None = None, budget: int = DEFAULT_BUDGET
) -> bool:
    """Compare ``hA`` with the intersection of the translated tangent cones ``h v + T_v``."""
    _require_simplex(a)
    if not generates_full_lattice(a):
        raise HypothesisError("A - A must generate Z^d", "not_generating")
    if cone is None or cone.base != a:
        cone = build_cone(a, budget=budget)
    cones = [tangent_cone(cone, v) for v in cone.vertices]
    predicted = set()
    for x in lattice_points_in_dilate(cone.vertices, h):
        if all(tc.contains(tuple(c - h * w for c, w in zip(x, tc.vertex))) for tc in cones):
            predicted.add(x)
    actual = cone.levels[h] if h <= cone.h_max else sumset_levels(a, h, budget)[h]
    return predicted == set(actual)

