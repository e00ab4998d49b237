"""Generating series of sumset sizes and the Khovanskii polynomial.

``C_A(t) = sum_h |hA| t^h`` is rational with denominator ``(1 - t)^(d+1)``
for a simplicial ``A``.  It is built twice, independently: by summing the
inclusion-exclusion series of every residue class of the cone
(:func:`cone_series`), and by multiplying the oracle's truncated series by
``(1 - t)^(d+1)`` (:func:`truncated_numerator`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .cone import ConeData, MinimalElementSet, build_cone
from .errors import HypothesisError
from .polynomials import (
    LaurentPoly,
    Poly,
    binom,
    binomial_poly,
    degree,
    format_poly,
    one_minus_t_pow,
    padd,
    pdivmod,
    peval,
    pmul,
    pscale,
    trim,
)
from .sumset import DEFAULT_BUDGET, PointSet, generates_full_lattice, sigma_weight, sumset_levels, sumset_sizes


@dataclass(frozen=True)
class RationalSeriesT:
    """``numerator(t) / (1 - t)**denom_power`` with exact coefficients."""

    numerator: Poly
    denom_power: int

    def __post_init__(self):
        object.__setattr__(self, "numerator", trim(self.numerator))
        if self.denom_power < 0:
            raise ValueError("denominator power must be nonnegative")

    @property
    def numerator_degree(self) -> int:
        return degree(self.numerator)

    def coefficient(self, h: int):
        """Coefficient of ``t^h``, in ``O(deg numerator)`` binomials."""
        k = self.denom_power
        if k == 0:
            return self.numerator[h] if h < len(self.numerator) else 0
        return sum(c * binom(h - j + k - 1, k - 1) for j, c in enumerate(self.numerator) if j <= h)

    def expand(self, h_max: int) -> list:
        return [self.coefficient(h) for h in range(h_max + 1)]

    def reduced(self) -> "RationalSeriesT":
        """Cancel common factors ``(1 - t)`` between numerator and denominator."""
        num, k = self.numerator, self.denom_power
        while k > 0 and num and peval(num, 1) == 0:
            num, rem = pdivmod(num, (1, -1))
            assert not rem
            k -= 1
        return RationalSeriesT(num, k)

    def equivalent(self, other: "RationalSeriesT") -> bool:
        """Equality as rational functions."""
        a, b = self, other
        if a.denom_power > b.denom_power:
            a, b = b, a
        lifted = pmul(a.numerator, one_minus_t_pow(b.denom_power - a.denom_power))
        return trim(lifted) == trim(b.numerator)

    def split(self) -> tuple[Poly, Poly]:
        """``(Q, R)`` with ``numerator = Q (1-t)^k + R`` and ``deg R < k``."""
        return pdivmod(self.numerator, one_minus_t_pow(self.denom_power))

    def __add__(self, other: "RationalSeriesT") -> "RationalSeriesT":
        k = max(self.denom_power, other.denom_power)
        n1 = pmul(self.numerator, one_minus_t_pow(k - self.denom_power))
        n2 = pmul(other.numerator, one_minus_t_pow(k - other.denom_power))
        return RationalSeriesT(padd(n1, n2), k)

    def __str__(self):
        return f"({format_poly(self.numerator)})/(1-t)^{self.denom_power}"


def class_series(cls: MinimalElementSet, d: int) -> RationalSeriesT:
    """Series of one residue class by inclusion-exclusion over its minimal elements.

    Intersections of orthants are orthants at the coordinatewise maximum, so
    terms with the same apex are merged as they are generated.
    """
    terms: dict[tuple, int] = {}
    for c in cls.lambda_coords:
        new = {c: 1}
        for apex, coef in terms.items():
            j = tuple(max(x, y) for x, y in zip(apex, c))
            new[j] = new.get(j, 0) - coef
        for apex, coef in new.items():
            terms[apex] = terms.get(apex, 0) + coef
        terms = {k: v for k, v in terms.items() if v}
    h0 = cls.reference.height
    num: list = []
    for apex, coef in terms.items():
        # every lifted vertex has height 1, so the apex height is h0 + sum(apex)
        h = h0 + sum(apex)
        if h >= len(num):
            num.extend([0] * (h + 1 - len(num)))
        num[h] += coef
    return RationalSeriesT(tuple(num), d + 1)


def cone_series(cone: ConeData) -> RationalSeriesT:
    total = RationalSeriesT((), cone.dim + 1)
    for cls in cone.minimal_elements():
        total = total + class_series(cls, cone.dim)
    return total


def numerator_degrees(cone: ConeData) -> tuple[int, int]:
    """``(largest class numerator degree, degree of the summed numerator)``.

    The second can be smaller when leading terms cancel across classes.
    """
    by_class = max(class_series(cls, cone.dim).numerator_degree for cls in cone.minimal_elements())
    return by_class, cone_series(cone).numerator_degree


def numerator_degree_bound(a: PointSet) -> int:
    """Upper bound ``(d+1)(vol d! - 1) - d`` on the numerator degree of ``C_A(t)``.

    The origin's class always contributes the constant 1, so the bound is
    never below 0 (it would be for unimodular simplices).
    """
    d = a.dim
    return max((d + 1) * (a.hull.normalized_volume - 1) - d, 0)


def truncated_numerator(
    a: PointSet, degree_bound: int | None = None, budget: int = DEFAULT_BUDGET
) -> RationalSeriesT:
    """``C_A(t)`` from the oracle: ``(1-t)^(d+1) * sum_{h<=K} |hA| t^h``.

    Coefficients between the degree bound and ``K = bound + d + 1`` must all
    vanish; otherwise the input violates the hypotheses (or there is a bug).
    """
    d = a.dim
    if len(a) == 1:
        return RationalSeriesT((1,), 1)
    if degree_bound is None:
        if not a.hull.is_simplex:
            raise HypothesisError("a degree bound is needed for non-simplex sets", "not_simplex")
        degree_bound = numerator_degree_bound(a)
    k = max(degree_bound, 0) + d + 1
    sizes = sumset_sizes(a, k, budget)
    prod_ = pmul(tuple(sizes), one_minus_t_pow(d + 1))
    head = list(prod_[: k + 1])
    tail = head[degree_bound + 1:] if degree_bound >= 0 else head
    if any(tail):
        raise ArithmeticError("trailing coefficients do not vanish beyond the degree bound")
    return RationalSeriesT(tuple(head[: max(degree_bound, -1) + 1]), d + 1)


def expand(series: RationalSeriesT, h_max: int) -> list:
    return series.expand(h_max)


# -- Khovanskii polynomial ----------------------------------------------------


@dataclass(frozen=True)
class KhovanskiiResult:
    poly: Poly  # coefficients of p(h), lowest degree first
    certified_bound: int
    empirical_transition: int
    leading_coeff: Fraction
    corrections: Poly = field(default=())  # |hA| - p(h) as a polynomial in t
    series: RationalSeriesT | None = None

    def __call__(self, h: int):
        v = peval(self.poly, h)
        return int(v) if isinstance(v, Fraction) and v.denominator == 1 else v

    evaluate = __call__

    @property
    def degree(self) -> int:
        return degree(self.poly)

    def __str__(self):
        return format_poly(self.poly, "h")


def certified_bound(a: PointSet) -> int:
    """``vol * (d+1)! - 1 - 3d``, clamped at 0 (h ranges over the naturals)."""
    d = a.dim
    return max(a.hull.normalized_volume * (d + 1) - 1 - 3 * d, 0)


def polynomial_from_remainder(remainder: Poly, d: int) -> Poly:
    """``p(h) = sum_k a_k C(h + d - k, d)`` for ``R(t) = sum_k a_k t^k``."""
    p: Poly = ()
    for k, a_k in enumerate(remainder):
        p = padd(p, pscale(binomial_poly(d - k, d), a_k))
    return tuple(int(c) if isinstance(c, Fraction) and c.denominator == 1 else c for c in p)


def _require_khovanskii(a: PointSet):
    info = a.hull
    if not info.full_dimensional or not info.is_simplex:
        raise HypothesisError("the convex hull must be a d-simplex", "not_simplex")
    if not generates_full_lattice(a):
        raise HypothesisError("A - A must generate Z^d", "not_generating")


def khovanskii_polynomial(
    a: PointSet, cone: ConeData | None = None, budget: int = DEFAULT_BUDGET
) -> KhovanskiiResult:
    """Polynomial ``p`` with ``|hA| = p(h)`` from the certified bound on.

    The phase transition is found by scanning the oracle backwards from the
    certified bound, where agreement is guaranteed.
    """
    _require_khovanskii(a)
    if cone is None:
        cone = build_cone(a, budget=budget)
    series = cone_series(cone)
    d = a.dim
    quot, rem = series.split()
    poly = polynomial_from_remainder(rem, d)
    bound = certified_bound(a)
    sizes = sumset_sizes(a, bound, budget)
    transition = 0
    for h in range(bound, -1, -1):
        if sizes[h] != peval(poly, h):
            transition = h + 1
            break
    lead = Fraction(poly[-1]) if poly else Fraction(0)
    return KhovanskiiResult(poly, bound, transition, lead, quot, series)


# -- d + 2 points ---------------------------------------------------------------


def dplus2_transition(a: PointSet) -> int:
    """``vol * d! - d - 1``: below it every sum has a unique representation."""
    return a.hull.normalized_volume - a.dim - 1


def dplus2_cardinality(a: PointSet, h: int) -> int:
    """Closed form for ``|hA|`` when ``A`` has exactly ``d + 2`` points."""
    d = a.dim
    if len(a) != d + 2:
        raise HypothesisError(f"expected {d + 2} points, got {len(a)}", "size")
    if not a.hull.full_dimensional or not generates_full_lattice(a):
        raise HypothesisError("A - A must generate Z^d", "not_generating")
    vol = a.hull.normalized_volume
    if h < vol - d - 1:
        return binom(h + d + 1, d + 1)
    return binom(h + d + 1, d + 1) - binom(h - vol + d + 1, d + 1)


# -- multivariate identities ----------------------------------------------------


@dataclass(frozen=True)
class MultivariateRationalT:
    """``numerator(x, t) / prod_m (1 - x^m t)``.

    ``numerator`` is a Laurent polynomial in ``d + 1`` variables whose last
    variable is ``t``; each entry of ``denom_factors`` is the ``x``-exponent
    ``m`` of one factor ``(1 - x^m t)`` (all zeros for ``1 - t``).
    """

    numerator: LaurentPoly
    denom_factors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d = self.numerator.nvars - 1
        if any(len(m) != d for m in self.denom_factors):
            raise ValueError("denominator monomials must have d exponents")
        if any(e[-1] < 0 for e, _ in self.numerator.items()):
            raise ValueError("negative powers of t in the numerator")

    @property
    def dim(self) -> int:
        return self.numerator.nvars - 1

    def expand(self, h_max: int) -> list[LaurentPoly]:
        """Coefficients of ``t^0..t^h_max`` as Laurent polynomials in ``x``."""
        d = self.dim
        coeffs = [LaurentPoly.zero(d) for _ in range(h_max + 1)]
        for e, c in self.numerator.items():
            if e[-1] <= h_max:
                coeffs[e[-1]] = coeffs[e[-1]] + LaurentPoly({e[:-1]: c}, d)
        for m in self.denom_factors:
            # dividing by (1 - x^m t): g_h = f_h + x^m g_{h-1}
            for h in range(1, h_max + 1):
                coeffs[h] = coeffs[h] + coeffs[h - 1].shift(m)
        return coeffs


@dataclass(frozen=True)
class IdentityCheck:
    ok: bool
    h_max: int
    first_mismatch: int | None = None

    def __bool__(self):
        return self.ok


def verify_multivariate(
    a: PointSet, claimed: MultivariateRationalT, h_max: int, budget: int = DEFAULT_BUDGET
) -> IdentityCheck:
    """Compare ``claimed`` with ``sum_h sigma_{hA}(x) t^h`` up to ``t^h_max``."""
    if claimed.dim != a.dim:
        raise ValueError("dimension of the claimed series does not match the set")
    expanded = claimed.expand(h_max)
    levels = sumset_levels(a, h_max, budget)
    for h, level in enumerate(levels):
        if expanded[h] != sigma_weight(level):
            return IdentityCheck(False, h_max, h)
    return IdentityCheck(True, h_max)


def parse_factor_list(monomials: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in m) for m in monomials)


def normalized_volume_factorial(a: PointSet) -> int:
    """``vol(conv A) * (d+1)!``."""
    return a.hull.normalized_volume * (a.dim + 1)


def leading_volume(a: PointSet) -> Fraction:
    return Fraction(a.hull.normalized_volume, factorial(a.dim))
