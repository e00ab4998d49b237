"""Exact integer linear algebra: Smith normal form, lattice indices, coset labels.

Matrices are tuples of row tuples of Python ints.  A lattice is always given
by its generators, which become the *columns* of the basis matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, prod
from typing import Optional, Sequence

from .errors import DegenerateLatticeError, DimensionMismatch

IntMatrix = tuple  # tuple[tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    m = tuple(tuple(int(a) for a in r) for r in rows)
    if not m or not m[0]:
        raise ValueError("matrix must have positive dimensions")
    if any(len(r) != len(m[0]) for r in m):
        raise ValueError("ragged matrix")
    return m


def columns_to_matrix(cols: Sequence[Sequence[int]]) -> IntMatrix:
    return transpose(as_matrix(cols))


def transpose(m: IntMatrix) -> IntMatrix:
    return tuple(zip(*m))


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: IntMatrix, v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    a = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(vectors: Sequence[Sequence]) -> int:
    """Rank of a list of (rational or integer) vectors."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    r = 0
    ncols = len(rows[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, S, V)`` with ``U @ M @ V == S`` and ``U``, ``V`` unimodular.

    ``S`` is diagonal with nonnegative entries ``s_1 | s_2 | ...``.  Works for
    rectangular matrices as well.
    """
    a = [list(r) for r in as_matrix(m)]
    nr, nc = len(a), len(a[0])
    u = [list(r) for r in identity(nr)]
    v = [list(r) for r in identity(nc)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, f):  # row_dst += f * row_src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):  # col_dst += f * col_src
        for r in a:
            r[dst] += f * r[src]
        for r in v:
            r[dst] += f * r[src]

    for t in range(min(nr, nc)):
        while True:
            nonzero = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
            if not nonzero:
                break
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            # pivot must divide the remaining block
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if t < nr and t < nc and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return as_matrix(u), as_matrix(a), as_matrix(v)


def solve_rational(cols: Sequence[Sequence[int]], x: Sequence[int]) -> Optional[tuple[Fraction, ...]]:
    """Solve ``sum_i c_i * cols[i] = x`` over the rationals.

    ``cols`` must be linearly independent; returns ``None`` when ``x`` is not
    in their rational span.
    """
    k = len(cols)
    if k == 0:
        return () if all(a == 0 for a in x) else None
    n = len(cols[0])
    if len(x) != n or any(len(c) != n for c in cols):
        raise DimensionMismatch(f"vector of length {len(x)} against generators of length {n}")
    rows = [[Fraction(cols[j][i]) for j in range(k)] + [Fraction(x[i])] for i in range(n)]
    r = 0
    pivots = []
    for c in range(k):
        piv = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if piv is None:
            raise DegenerateLatticeError("generators are linearly dependent")
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        inv = 1 / pr[c]
        rows[r] = pr = [y * inv for y in pr]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [y - f * z for y, z in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
    if any(rows[i][k] != 0 for i in range(r, n)):
        return None
    return tuple(rows[i][k] for i in range(k))


def nonneg_span_membership(x: Sequence[int], gens: Sequence[Sequence[int]]) -> Optional[tuple[int, ...]]:
    """Coefficients expressing ``x`` in ``span_N(gens)``, or ``None``.

    The generators must be linearly independent, so the coefficients are
    unique when they exist.
    """
    sol = solve_rational(gens, x)
    if sol is None or any(c.denominator != 1 or c < 0 for c in sol):
        return None
    return tuple(int(c) for c in sol)


@dataclass(frozen=True, order=True)
class CosetLabel:
    """Residues of a point in the Smith coordinates of a lattice."""

    coords: tuple[int, ...]


@dataclass(frozen=True)
class Lattice:
    """Full-rank sublattice of ``Z^dim`` spanned by ``generators``."""

    generators: tuple[tuple[int, ...], ...]
    basis: IntMatrix = field(init=False, repr=False)
    snf: tuple[IntMatrix, IntMatrix, IntMatrix] = field(init=False, repr=False)
    index: int = field(init=False)
    _solver: "SimplicialBasis" = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        gens = tuple(tuple(int(a) for a in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise DegenerateLatticeError("a lattice needs at least one generator")
        n = len(gens[0])
        if len(gens) != n or any(len(g) != n for g in gens):
            raise DegenerateLatticeError("basis must be square")
        basis = columns_to_matrix(gens)
        d = det(basis)
        if d == 0:
            raise DegenerateLatticeError("singular basis: the hull is degenerate")
        u, s, v = smith_normal_form(basis)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "snf", (u, s, v))
        object.__setattr__(self, "index", abs(d))
        object.__setattr__(self, "_solver", SimplicialBasis(gens))

    @property
    def dim(self) -> int:
        return len(self.generators)

    @property
    def invariants(self) -> tuple[int, ...]:
        s = self.snf[1]
        return tuple(s[i][i] for i in range(self.dim))

    def _check_dim(self, x):
        if len(x) != self.dim:
            raise DimensionMismatch(f"point of dimension {len(x)} in a lattice of dimension {self.dim}")

    def label(self, x: Sequence[int]) -> CosetLabel:
        self._check_dim(x)
        y = matvec(self.snf[0], x)
        return CosetLabel(tuple(yi % s for yi, s in zip(y, self.invariants) if s != 1))

    def coordinates(self, x: Sequence[int]) -> tuple[Fraction, ...]:
        """Rational coordinates of ``x`` in the generator basis."""
        self._check_dim(x)
        return solve_rational(self.generators, x)

    def integer_coordinates(self, x: Sequence[int]) -> Optional[tuple[int, ...]]:
        self._check_dim(x)
        return self._solver.integer_coordinates(x)

    def contains(self, x: Sequence[int]) -> bool:
        return self.integer_coordinates(x) is not None

    def combine(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        return matvec(self.basis, coeffs)

    def reduce(self, x: Sequence[int]) -> tuple[int, ...]:
        """Representative of ``x + L`` in the half-open fundamental parallelepiped."""
        lam = self.coordinates(x)
        shift = [floor(c) for c in lam]
        return tuple(a - b for a, b in zip(x, self.combine(shift)))

    def fundamental_domain_points(self) -> list[tuple[int, ...]]:
        """All integer points ``sum l_i g_i`` with ``0 <= l_i < 1``, one per coset."""
        u = self.snf[0]
        uinv = _unimodular_inverse(u)
        inv = self.invariants
        ranges = [range(s) for s in inv]
        pts = [self.reduce(matvec(uinv, e)) for e in itertools.product(*ranges)]
        return sorted(pts)


def lattice_index(lat: Lattice) -> int:
    return lat.index


def coset_label(x: Sequence[int], lat: Lattice) -> CosetLabel:
    return lat.label(x)


def fundamental_domain_points(lat: Lattice) -> list[tuple[int, ...]]:
    return lat.fundamental_domain_points()


def _unimodular_inverse(u: IntMatrix) -> IntMatrix:
    n = len(u)
    cols = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        sol = solve_rational(transpose(u), e)
        cols.append(tuple(int(c) for c in sol))
    return columns_to_matrix(cols)


def snf_diagonal_product(m: Sequence[Sequence[int]]) -> int:
    s = smith_normal_form(m)[1]
    return prod(s[i][i] for i in range(min(len(s), len(s[0]))))


class SimplicialBasis:
    """Square, nonsingular integer basis with integer-only coordinate solves.

    Coordinates are ``adj(B) @ x / det(B)``; no Fractions are created on the
    hot path.
    """

    def __init__(self, gens: Sequence[Sequence[int]]):
        self.gens = tuple(tuple(int(a) for a in g) for g in gens)
        n = len(self.gens)
        if any(len(g) != n for g in self.gens):
            raise DegenerateLatticeError("basis must be square")
        b = columns_to_matrix(self.gens)
        self.det = det(b)
        if self.det == 0:
            raise DegenerateLatticeError("generators are linearly dependent")
        self.adj = _adjugate(b)

    def integer_coordinates(self, x: Sequence[int]) -> Optional[tuple[int, ...]]:
        out = []
        for row in self.adj:
            num = sum(a * b for a, b in zip(row, x))
            q, r = divmod(num, self.det)
            if r:
                return None
            out.append(q)
        return tuple(out)

    def nonneg_coordinates(self, x: Sequence[int]) -> Optional[tuple[int, ...]]:
        c = self.integer_coordinates(x)
        if c is None or any(a < 0 for a in c):
            return None
        return c


def _adjugate(m: IntMatrix) -> IntMatrix:
    n = len(m)
    if n == 1:
        return ((1,),)
    cof = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = tuple(tuple(m[r][c] for c in range(n) if c != j) for r in range(n) if r != i)
            cof[i][j] = (-1) ** (i + j) * det(minor)
    return transpose(as_matrix(cof))
