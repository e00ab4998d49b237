import itertools

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import det_fraction, in_integer_span
from sumset_cone.errors import DegenerateLatticeError, DimensionMismatch
from sumset_cone.lattice import (
    CosetLabel,
    Lattice,
    coset_label,
    det,
    fundamental_domain_points,
    identity,
    lattice_index,
    matmul,
    nonneg_span_membership,
    smith_normal_form,
)

small = st.integers(-6, 6)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


def is_diagonal_chain(s):
    n = len(s)
    diag = [s[i][i] for i in range(n)]
    off = all(s[i][j] == 0 for i in range(n) for j in range(len(s[0])) if i != j)
    nz = [x for x in diag if x]
    chain = all(b % a == 0 for a, b in zip(nz, nz[1:]))
    return off and all(x >= 0 for x in diag) and chain


def test_snf_identity():
    u, s, v = smith_normal_form(identity(2))
    assert s == identity(2)


def test_snf_diag_2_3():
    m = ((2, 0), (0, 3))
    u, s, v = smith_normal_form(m)
    assert s == ((1, 0), (0, 6))
    assert matmul(matmul(u, m), v) == s


@given(st.integers(1, 4).flatmap(square))
def test_snf_decomposition(m):
    m = tuple(tuple(r) for r in m)
    u, s, v = smith_normal_form(m)
    assert matmul(matmul(u, m), v) == s
    assert abs(det(u)) == 1 and abs(det(v)) == 1
    assert is_diagonal_chain(s)
    assert abs(det(m)) == abs(det(s))


@given(st.integers(1, 4).flatmap(square))
def test_det_matches_fraction_elimination(m):
    assert det(tuple(tuple(r) for r in m)) == det_fraction(m)


def test_snf_rectangular():
    m = ((2, 4, 6), (1, 3, 5))
    u, s, v = smith_normal_form(m)
    assert matmul(matmul(u, m), v) == s
    assert s[0][0] == 1 and s[1][1] == 2


def test_index_examples():
    assert lattice_index(Lattice(((0, 1), (8, 1)))) == 8
    for b in (2, 5, 11):
        assert lattice_index(Lattice(((0, 1), (b, 1)))) == b
    assert lattice_index(Lattice(((0, 0, 1), (1, 2, 1), (3, 1, 1)))) == 5
    assert lattice_index(Lattice(((1, 0), (3, 1)))) == 1


def test_singular_basis_rejected():
    with pytest.raises(DegenerateLatticeError):
        Lattice(((1, 2), (2, 4)))


def test_labels_worked_examples():
    lat = Lattice(((0, 1), (8, 1)))
    assert coset_label((4, 1), lat) == coset_label((28, 4), lat)
    assert coset_label((8, 1), lat) == coset_label((0, 0), lat)
    assert coset_label((0, 1), lat) == CosetLabel((0,))
    lat4 = Lattice(((0, 1), (4, 1)))
    assert coset_label((2, 2), lat4) == coset_label((6, 2), lat4)


def test_label_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        coset_label((1, 2, 3), Lattice(((0, 1), (8, 1))))


@st.composite
def nonsingular_2d(draw):
    g = [tuple(draw(st.lists(st.integers(-4, 4), min_size=2, max_size=2))) for _ in range(2)]
    assume(g[0][0] * g[1][1] - g[0][1] * g[1][0] != 0)
    return tuple(g)


@given(nonsingular_2d(), st.tuples(small, small), st.tuples(small, small))
def test_labels_agree_with_integer_span(gens, x, y):
    lat = Lattice(gens)
    diff = tuple(a - b for a, b in zip(x, y))
    assert (lat.label(x) == lat.label(y)) == in_integer_span(diff, gens, radius=40)


@given(nonsingular_2d())
def test_labels_partition_into_index_classes(gens):
    lat = Lattice(gens)
    labels = {lat.label(p) for p in itertools.product(range(-12, 13), repeat=2)}
    assert len(labels) == lat.index


@given(nonsingular_2d())
def test_fundamental_domain(gens):
    lat = Lattice(gens)
    pts = fundamental_domain_points(lat)
    assert len(pts) == lat.index
    assert len({lat.label(p) for p in pts}) == lat.index
    for p in pts:
        assert all(0 <= c < 1 for c in lat.coordinates(p))


def test_fundamental_domain_direct_scan():
    # integer points of the half-open parallelogram on (0,1), (5,1)
    lat = Lattice(((0, 1), (5, 1)))
    scan = []
    for p in itertools.product(range(0, 6), range(0, 3)):
        c = lat.coordinates(p)
        if all(0 <= x < 1 for x in c):
            scan.append(p)
    assert fundamental_domain_points(lat) == sorted(scan)
    assert fundamental_domain_points(Lattice(((1, 0), (0, 1)))) == [(0, 0)]


def test_nonneg_span_examples():
    gens = ((0, 1), (8, 1))
    assert nonneg_span_membership((0, 0), gens) == (0, 0)
    assert nonneg_span_membership((8, 1), gens) == (0, 1)
    assert nonneg_span_membership((4, 1), gens) is None
    assert nonneg_span_membership((-8, 0), gens) is None


def test_nonneg_span_dependent():
    with pytest.raises(DegenerateLatticeError):
        nonneg_span_membership((1, 1), ((1, 1), (2, 2)))


@given(nonsingular_2d(), st.tuples(st.integers(-10, 10), st.integers(-10, 10)))
def test_nonneg_span_reconstructs(gens, x):
    c = nonneg_span_membership(x, gens)
    if c is not None:
        assert all(v >= 0 for v in c)
        assert tuple(sum(ci * g[i] for ci, g in zip(c, gens)) for i in range(2)) == x


@given(nonsingular_2d(), st.tuples(small, small))
def test_integer_coordinates_match_rational(gens, x):
    lat = Lattice(gens)
    ic = lat.integer_coordinates(x)
    rc = lat.coordinates(x)
    if ic is None:
        assert any(c.denominator != 1 for c in rc)
    else:
        assert tuple(ic) == tuple(rc)
