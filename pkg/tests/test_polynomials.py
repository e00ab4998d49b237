from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sumset_cone.polynomials import (
    LaurentPoly,
    binom,
    binomial_poly,
    divide_one_minus_xb,
    one_minus_t_pow,
    padd,
    pdivmod,
    peval,
    pmul,
    trim,
)

coeffs = st.lists(st.integers(-20, 20), max_size=8)


def test_binom_conventions():
    assert binom(5, 2) == 10
    assert binom(2, 5) == 0
    assert binom(-3, 2) == 0
    assert binom(0, 0) == 1


@given(st.integers(-5, 5), st.integers(0, 4), st.integers(0, 30))
def test_binomial_poly_matches_binom(shift, d, h):
    # C(h + shift, d) as a polynomial agrees with the integer binomial once h + shift >= 0
    if h + shift >= 0:
        assert peval(binomial_poly(shift, d), h) == comb(h + shift, d)


@given(coeffs, st.lists(st.integers(-9, 9), min_size=1, max_size=5).filter(lambda q: q[-1] != 0))
def test_pdivmod_reconstructs(p, q):
    quot, rem = pdivmod(tuple(p), tuple(q))
    assert len(trim(rem)) < len(trim(q))
    assert trim(padd(pmul(quot, tuple(q)), rem)) == trim(tuple(Fraction(c) for c in p))


def test_one_minus_t_pow():
    assert one_minus_t_pow(2) == (1, -2, 1)
    assert one_minus_t_pow(0) == (1,)


def test_laurent_arithmetic():
    x = LaurentPoly({(1,): 1}, 1)
    one = LaurentPoly.one(1)
    assert (one - x) * (one + x) == one - x * x
    assert x.shift((-3,)) == LaurentPoly({(-2,): 1}, 1)
    assert LaurentPoly.from_points([(0,), (3,), (4,), (7,)], 1).total() == 4
    assert (x - x) == LaurentPoly.zero(1)


@given(st.dictionaries(st.integers(-10, 10), st.integers(-5, 5), max_size=6), st.integers(1, 6))
def test_divide_one_minus_xb(terms, b):
    q = LaurentPoly({(e,): c for e, c in terms.items()}, 1)
    f = q * LaurentPoly({(0,): 1, (b,): -1}, 1)
    assert divide_one_minus_xb(f, b) == q


def test_divide_not_exact():
    with pytest.raises(ValueError):
        divide_one_minus_xb(LaurentPoly({(0,): 1}, 1), 3)
