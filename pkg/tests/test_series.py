import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import binom0, interpolate, naive_sizes, series_coefficients
from sumset_cone import HypothesisError, PointSet
from sumset_cone.cone import build_cone
from sumset_cone.corpus import random_dplus2, random_simplicial
from sumset_cone.polynomials import LaurentPoly, peval
from sumset_cone.series import (
    MultivariateRationalT,
    RationalSeriesT,
    class_series,
    cone_series,
    dplus2_cardinality,
    expand,
    khovanskii_polynomial,
    numerator_degree_bound,
    numerator_degrees,
    truncated_numerator,
    verify_multivariate,
)
from sumset_cone.sumset import sumset_sizes

A0178 = PointSet.of([0, 1, 7, 8])


def test_expand_examples():
    assert expand(RationalSeriesT((1,), 3), 6) == [comb(h + 2, 2) for h in range(7)]
    s = RationalSeriesT((1, 0, 0, 0, 0, 0, 0, 0, -1), 3)
    assert s.coefficient(6) == 28
    assert [s.coefficient(h) for h in range(8, 14)] == [comb(h + 2, 2) - comb(h - 6, 2) for h in range(8, 14)]
    assert sumset_sizes(A0178, 6)[6] == 49
    shifted = RationalSeriesT((0, 0, 0, 1), 2)
    assert expand(shifted, 6) == [binom0(h - 3 + 1, 1) for h in range(7)]


@given(st.lists(st.integers(-5, 5), max_size=6), st.integers(0, 4), st.integers(0, 25))
def test_coefficient_against_prefix_sums(num, k, h):
    s = RationalSeriesT(tuple(num), k)
    assert s.coefficient(h) == series_coefficients(num, k, h)[h]


@given(st.lists(st.integers(-5, 5), max_size=6), st.integers(0, 4))
def test_reduced_is_equivalent(num, k):
    s = RationalSeriesT(tuple(num), k)
    r = s.reduced()
    assert s.equivalent(r)
    assert r.expand(15) == s.expand(15)


def test_cone_series_examples():
    s = cone_series(build_cone(A0178))
    assert s == RationalSeriesT((1, 2, 2, 2, 2, 2, 2, -5), 2)
    for a, b in [(1, 2), (2, 5), (3, 7), (5, 12)]:
        s = cone_series(build_cone(PointSet.of([0, a, b])))
        target = RationalSeriesT((1,) + (0,) * (b - 1) + (-1,), 3)
        assert s.equivalent(target)
    assert cone_series(build_cone(PointSet.of([0, 1]))) == RationalSeriesT((1,), 2)


def test_class_series_examples():
    cone = build_cone(A0178)
    assert class_series(cone.class_of((4, 1)), 1) == RationalSeriesT((0, 0, 0, 0, 2, 0, 0, -1), 2)
    assert class_series(cone.class_of((0, 0)), 1) == RationalSeriesT((1,), 2)
    for cls in cone.minimal_elements():
        if len(cls.minimals) == 1:
            h = cls.reference.height
            assert class_series(cls, 1) == RationalSeriesT((0,) * h + (1,), 2)


def _corpus(seed, count):
    rng = random.Random(seed)
    return [random_simplicial(rng, 1 + i % 2, 10) for i in range(count)]


@pytest.mark.parametrize("a", _corpus(21, 10), ids=str)
def test_class_series_counts_class_points(a):
    top = 2 * a.hull.normalized_volume
    cone = build_cone(a, h_max=top)
    for cls in cone.minimal_elements():
        s = class_series(cls, a.dim)
        assert s.numerator_degree <= (a.dim + 1) * cls.max_height - a.dim or cls.max_height == 0
        for h in range(top + 1):
            count = sum(1 for g in cone.levels[h] if cone.label(g, h) == cls.label)
            assert s.coefficient(h) == count


@pytest.mark.parametrize("a", _corpus(22, 10), ids=str)
def test_two_constructions_agree(a):
    s = cone_series(build_cone(a))
    t = truncated_numerator(a)
    assert s.equivalent(t)
    top = 15 if a.dim == 1 else 8
    assert expand(s, top) == naive_sizes(a.sorted(), top)


def test_truncated_examples():
    assert truncated_numerator(A0178) == RationalSeriesT((1, 2, 2, 2, 2, 2, 2, -5), 2)
    assert truncated_numerator(PointSet.of([0, 2, 5])).equivalent(RationalSeriesT((1, 0, 0, 0, 0, -1), 3))
    assert truncated_numerator(PointSet.of([0])).equivalent(RationalSeriesT((1,), 1))


def test_truncated_unimodular_triangle():
    # the generic degree bound is negative here, but the numerator is 1
    a = PointSet.of([(0, 0), (-1, 1), (-5, 4)])
    assert numerator_degree_bound(a) == 0
    assert truncated_numerator(a) == RationalSeriesT((1,), 3)
    assert cone_series(build_cone(a)).equivalent(truncated_numerator(a))


def test_truncated_detects_wrong_bound():
    with pytest.raises(ArithmeticError):
        truncated_numerator(A0178, degree_bound=3)
    with pytest.raises(HypothesisError):
        truncated_numerator(PointSet.of([(0, 0), (-1, 1), (1, 2), (4, 0)]))


def test_khovanskii_0178():
    k = khovanskii_polynomial(A0178)
    assert k.poly == (1, 8)
    assert k.empirical_transition == 6
    assert k.certified_bound == 12
    assert k.leading_coeff == 8
    assert k.corrections == (0, -5, -8, -9, -8, -5)
    sizes = sumset_sizes(A0178, 5)
    assert [sizes[h] - k(h) for h in range(1, 6)] == [-5, -8, -9, -8, -5]


def test_khovanskii_three_elements():
    for a, b in [(1, 3), (2, 5), (3, 7), (4, 11)]:
        k = khovanskii_polynomial(PointSet.of([0, a, b]))
        assert k.poly == (Fraction(-b * b, 2) + Fraction(3 * b, 2), b)
        assert k.empirical_transition == max(b - 2, 0)
        assert k.certified_bound == 2 * b - 4


def test_khovanskii_trivial_and_errors():
    k = khovanskii_polynomial(PointSet.of([0, 1]))
    assert k.poly == (1, 1) and k.empirical_transition == 0
    with pytest.raises(HypothesisError) as exc:
        khovanskii_polynomial(PointSet.of([0, 2, 4]))
    assert exc.value.reason == "not_generating"
    with pytest.raises(HypothesisError) as exc:
        khovanskii_polynomial(PointSet.of([(0, 0), (-1, 1), (1, 2), (4, 0)]))
    assert exc.value.reason == "not_simplex"


@pytest.mark.parametrize("a", _corpus(23, 8), ids=str)
def test_khovanskii_against_interpolation(a):
    k = khovanskii_polynomial(a)
    d = a.dim
    top = k.certified_bound + 10
    sizes = naive_sizes(a.sorted(), top) if d == 1 else sumset_sizes(a, top)
    # interpolate through d + 1 values far beyond the certified bound
    ref = interpolate([(h, sizes[h]) for h in range(top - d, top + 1)])
    assert [Fraction(c) for c in k.poly] == ref
    assert k.leading_coeff == Fraction(a.hull.normalized_volume, 1 if d == 1 else 2)
    assert all(k(h) == sizes[h] for h in range(k.certified_bound, top + 1))
    assert k.empirical_transition <= k.certified_bound
    if k.empirical_transition > 0:
        assert k(k.empirical_transition - 1) != sizes[k.empirical_transition - 1]


def test_dplus2_examples():
    for a, b in [(2, 5), (3, 7)]:
        s = PointSet.of([0, a, b])
        assert [dplus2_cardinality(s, h) for h in range(b - 2)] == [comb(h + 2, 2) for h in range(b - 2)]
    assert dplus2_cardinality(PointSet.of([0, 2, 5]), 0) == 1
    q = PointSet.of([(0, 0), (-1, 1), (1, 2), (4, 0)])
    sizes = sumset_sizes(q, 16)
    assert [dplus2_cardinality(q, h) for h in range(17)] == [binom0(h + 3, 3) - binom0(h - 8, 3) for h in range(17)] == sizes
    with pytest.raises(HypothesisError):
        dplus2_cardinality(A0178, 3)


@pytest.mark.parametrize("seed", range(6))
def test_dplus2_random(seed):
    rng = random.Random(seed)
    a = random_dplus2(rng, 1 + seed % 3, 20)
    n = a.hull.normalized_volume
    sizes = sumset_sizes(a, n + 5)
    assert all(dplus2_cardinality(a, h) == sizes[h] for h in range(n + 6))
    # below vol * d! - d - 1 every sum is distinct
    d = a.dim
    assert all(sizes[h] == comb(h + d + 1, d + 1) for h in range(max(n - d - 1, 0)))


def test_numerator_degree_bound_value():
    assert numerator_degree_bound(A0178) == 13


@pytest.mark.parametrize("a", _corpus(24, 8), ids=str)
def test_numerator_degrees(a):
    by_class, summed = numerator_degrees(build_cone(a))
    assert summed <= by_class <= numerator_degree_bound(a)
    assert summed == cone_series(build_cone(a)).numerator_degree


def _xy(exps):
    return LaurentPoly({tuple(e): c for e, c in exps.items()}, 3)


def test_verify_multivariate_identities():
    a = PointSet.of([(0, 0), (-1, 1), (1, 2), (4, 0)])
    claimed = MultivariateRationalT(_xy({(0, 0, 0): 1, (4, 8, 11): -1}), ((0, 0), (4, 0), (-1, 1), (1, 2)))
    assert verify_multivariate(a, claimed, 25)
    b = PointSet.of([(0, 0), (1, 2), (2, 1), (3, 1)])
    claimed_b = MultivariateRationalT(
        _xy({(0, 0, 0): 1, (10, 5, 5): -1}), ((0, 0), (1, 2), (3, 1), (2, 1))
    )
    assert verify_multivariate(b, claimed_b, 12)
    one = MultivariateRationalT(LaurentPoly({(0, 0): 1}, 2), ((0,),))
    assert verify_multivariate(PointSet.of([0]), one, 10)


def test_verify_multivariate_reports_first_mismatch():
    a = PointSet.of([(0, 0), (-1, 1), (1, 2), (4, 0)])
    wrong = MultivariateRationalT(_xy({(0, 0, 0): 1, (4, 8, 12): -1}), ((0, 0), (4, 0), (-1, 1), (1, 2)))
    res = verify_multivariate(a, wrong, 25)
    assert not res and res.first_mismatch == 11


def test_multivariate_expand_by_hand():
    m = MultivariateRationalT(LaurentPoly({(0, 0): 1}, 2), ((1,), (2,)))
    # 1/((1 - x t)(1 - x^2 t)) at t^2: x^2 + x^3 + x^4
    assert m.expand(2)[2] == LaurentPoly({(2,): 1, (3,): 1, (4,): 1}, 1)
    assert peval((1, 2), 3) == 7
