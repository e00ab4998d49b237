"""One-dimensional tangent-cone formula for the generating polynomial of hA.

For a normalized ``A`` (min 0, max b, gcd 1) each residue class ``S_a`` of
the cone is, up to finitely many points ``E_a``, a single translate
``(g_a, h_a) + span_N{(0,1), (b,1)}``.  These *virtual generators* give
the two tangent-cone series

    sigma_0(x) = sum_a x^g_a / (1 - x^b)
    sigma_b(x) = sum_a x^(g_a - b h_a) / (1 - x^-b)

and ``sigma_hA(x) = sigma_0(x) + x^(hb) sigma_b(x)`` once ``h >= 2b - 4``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cone import ConeData, LiftedPoint, build_cone
from .polynomials import LaurentPoly, divide_one_minus_xb, format_laurent
from .sumset import DEFAULT_BUDGET, PointSet, _require_normalized_1d, sigma_weight, sumset_levels


@dataclass(frozen=True)
class VirtualGenerator:
    residue: int
    g: int
    h: int
    extraneous: tuple[LiftedPoint, ...] = field(default=())

    @property
    def lifted(self) -> tuple[int, int]:
        return (self.g, self.h)

    def extraneous_set(self) -> set[tuple[int, int]]:
        return {(p.point[0], p.height) for p in self.extraneous}


def _staircase(b: int, residue: int, minimals) -> tuple[int, int, list[tuple[int, int]]]:
    """Write each minimal as ``(a,1) + m (0,1) + n (b,1)`` and return the meet."""
    coords = []
    for mnl in minimals:
        g, hh = mnl.point[0], mnl.height
        n, rem = divmod(g - residue, b)
        assert rem == 0
        coords.append((hh - 1 - n, n))
    m0 = min(m for m, _ in coords)
    n0 = min(n for _, n in coords)
    return m0, n0, [(m - m0, n - n0) for m, n in coords]


def virtual_generators(
    a: PointSet, cone: ConeData | None = None, budget: int = DEFAULT_BUDGET
) -> list[VirtualGenerator]:
    """Virtual generator and extraneous set of every residue class, by residue."""
    vals = _require_normalized_1d(a)
    b = vals[-1]
    if cone is None:
        cone = build_cone(a, budget=budget)
    out = []
    for cls in cone.minimal_elements():
        residue = cls.reference.point[0] % b
        m0, n0, shifted = _staircase(b, residue, cls.minimals)
        g, h = residue + b * n0, 1 + m0 + n0
        # only the box up to the largest shifted coordinates can escape the staircase
        top_m = max(m for m, _ in shifted)
        top_n = max(n for _, n in shifted)
        extra = []
        for q in range(top_n + 1):
            for p in range(top_m + 1):
                if not any(p >= m and q >= n for m, n in shifted):
                    extra.append(LiftedPoint((g + q * b,), h + p + q))
        extra.sort(key=lambda lp: (lp.point, lp.height))
        out.append(VirtualGenerator(residue, g, h, tuple(extra)))
    out.sort(key=lambda v: v.residue)
    return out


@dataclass(frozen=True)
class TangentSeries:
    """``numerator(x) / (1 - x^denominator_exponent)``."""

    vertex: int
    numerator: LaurentPoly
    denominator_exponent: int

    def over_one_minus_xb(self) -> tuple[LaurentPoly, int]:
        """The same function written over ``1 - x^b`` with ``b > 0``."""
        e = self.denominator_exponent
        if e > 0:
            return self.numerator, e
        # 1/(1 - x^-b) = -x^b/(1 - x^b)
        return -self.numerator.shift((-e,)), -e

    def __str__(self):
        return f"({format_laurent(self.numerator)})/(1 - x^{self.denominator_exponent})"


def tangent_series(
    a: PointSet, vertex: int, generators: list[VirtualGenerator] | None = None
) -> TangentSeries:
    """Generating function of the tangent cone at 0 or at b."""
    vals = _require_normalized_1d(a)
    b = vals[-1]
    if generators is None:
        generators = virtual_generators(a)
    if vertex == 0:
        num = LaurentPoly.from_points([(v.g,) for v in generators], 1)
        return TangentSeries(0, num, b)
    if vertex == b:
        num = LaurentPoly.from_points([(v.g - b * v.h,) for v in generators], 1)
        return TangentSeries(b, num, -b)
    raise ValueError(f"{vertex} is not a vertex of [0, {b}]")


def brion_sigma(a: PointSet, h: int, generators: list[VirtualGenerator] | None = None) -> LaurentPoly:
    """``sigma_0(x) + x^(hb) sigma_b(x)`` as a Laurent polynomial.

    Each residue mod b appears once in both numerators, so the division by
    ``1 - x^b`` is exact for every h, including those below the threshold.
    """
    vals = _require_normalized_1d(a)
    b = vals[-1]
    if generators is None:
        generators = virtual_generators(a)
    s0 = tangent_series(a, 0, generators)
    sb = tangent_series(a, b, generators)
    nb, _ = sb.over_one_minus_xb()
    return divide_one_minus_xb(s0.numerator + nb.shift((h * b,)), b)


@dataclass(frozen=True)
class BrionReport:
    b: int
    threshold: int  # 2b - 4
    verdicts: dict  # h -> bool
    equality_from: int | None
    theorem_holds: bool

    def __bool__(self):
        return self.theorem_holds

    def first_failure(self) -> int | None:
        bad = [h for h, ok in sorted(self.verdicts.items()) if not ok and h >= self.threshold]
        return bad[0] if bad else None


def brion_verify(
    a: PointSet, h_max: int | None = None, budget: int = DEFAULT_BUDGET
) -> BrionReport:
    """Compare the formula with the oracle for ``h = 0..h_max`` (default ``2b + 4``).

    ``equality_from`` is the least h from which every checked level agrees.
    """
    vals = _require_normalized_1d(a)
    b = vals[-1]
    threshold = max(2 * b - 4, 0)
    if h_max is None:
        h_max = 2 * b + 4
    gens = virtual_generators(a, budget=budget)
    levels = sumset_levels(a, h_max, budget)
    verdicts = {h: brion_sigma(a, h, gens) == sigma_weight(levels[h]) for h in range(h_max + 1)}
    start = None
    for h in range(h_max, -1, -1):
        if not verdicts[h]:
            break
        start = h
    holds = all(ok for h, ok in verdicts.items() if h >= threshold)
    return BrionReport(b, threshold, verdicts, start, holds)


@dataclass(frozen=True)
class XGenSeries:
    """``C_A(x,t) = Q(x,t) + sum_a x^g_a t^h_a / ((1-t)(1-x^b t))``.

    ``correction`` is ``Q`` in the variables ``(x, t)``; ``generator_sum`` is
    the numerator of the second term.
    """

    b: int
    correction: LaurentPoly
    generator_sum: LaurentPoly

    @property
    def correction_t_degree(self) -> int:
        return max((e[1] for e, _ in self.correction.items()), default=-1)

    def as_multivariate(self):
        from .series import MultivariateRationalT

        denom = ((0,), (self.b,))
        q_cleared = self.correction * LaurentPoly({(0, 0): 1, (0, 1): -1, (self.b, 1): -1, (self.b, 2): 1}, 2)
        return MultivariateRationalT(q_cleared + self.generator_sum, denom)


def xgen_series(a: PointSet, generators: list[VirtualGenerator] | None = None) -> XGenSeries:
    vals = _require_normalized_1d(a)
    b = vals[-1]
    if generators is None:
        generators = virtual_generators(a)
    q: dict = {}
    for v in generators:
        for p in v.extraneous:
            key = (p.point[0], p.height)
            q[key] = q.get(key, 0) - 1
    gsum = LaurentPoly({(v.g, v.h): 1 for v in generators}, 2)
    return XGenSeries(b, LaurentPoly(q, 2), gsum)
