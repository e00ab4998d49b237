"""Exact polynomial arithmetic.

Univariate polynomials in ``t`` are plain tuples of coefficients, lowest
degree first, with no trailing zeros (the zero polynomial is ``()``).
Multivariate Laurent polynomials use :class:`LaurentPoly`.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

Poly = tuple  # tuple[Fraction | int, ...]


def binom(n: int, k: int) -> int:
    """Binomial coefficient that is zero whenever ``n < k`` or ``n < 0``."""
    if k < 0 or n < k or n < 0:
        return 0
    return comb(n, k)


def trim(coeffs: Iterable) -> Poly:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def degree(p: Poly) -> int:
    """Degree of ``p``; the zero polynomial has degree -1."""
    return len(trim(p)) - 1


def padd(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return trim(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def pscale(p: Poly, c) -> Poly:
    return trim(c * a for a in p)


def psub(p: Poly, q: Poly) -> Poly:
    return padd(p, pscale(q, -1))


def pmul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def monomial(k: int, c=1) -> Poly:
    return trim([0] * k + [c])


def one_minus_t_pow(k: int) -> Poly:
    """Coefficients of ``(1 - t)**k``."""
    return tuple((-1) ** i * comb(k, i) for i in range(k + 1))


def pdivmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Exact long division over the rationals: ``p = quot*q + rem``."""
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(a) for a in trim(p)]
    dq = len(q) - 1
    lead = Fraction(q[-1])
    if len(rem) - 1 < dq:
        return (), _normalize(rem)
    quot = [Fraction(0)] * (len(rem) - dq)
    for i in range(len(rem) - 1, dq - 1, -1):
        c = rem[i] / lead
        if c == 0:
            continue
        quot[i - dq] = c
        for j, b in enumerate(q):
            rem[i - dq + j] -= c * b
    return _normalize(quot), _normalize(rem[:dq])


def _normalize(coeffs) -> Poly:
    return trim(int(c) if isinstance(c, Fraction) and c.denominator == 1 else c for c in coeffs)


def peval(p: Poly, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def binomial_poly(shift: int, d: int) -> Poly:
    """``C(h + shift, d)`` as a polynomial in ``h`` (rational coefficients)."""
    out: Poly = (Fraction(1),)
    for i in range(d):
        out = pmul(out, (Fraction(shift - i), Fraction(1)))
    return pscale(out, Fraction(1, factorial(d)))


def format_poly(p: Poly, var: str = "t") -> str:
    if not trim(p):
        return "0"
    terms = []
    for k, c in enumerate(p):
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if mono and c == 1:
            s = mono
        elif mono and c == -1:
            s = "-" + mono
        else:
            s = f"{c}*{mono}" if mono else str(c)
        terms.append(s)
    return " + ".join(terms).replace("+ -", "- ")


class LaurentPoly:
    """Laurent polynomial in ``nvars`` variables with exact coefficients.

    Terms are stored as ``{exponent_tuple: coefficient}`` with zero
    coefficients dropped.  Instances are treated as immutable.
    """

    __slots__ = ("nvars", "_terms")

    def __init__(self, terms: Mapping[Sequence[int], object] | None = None, nvars: int | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if c != 0:
                if isinstance(c, Fraction) and c.denominator == 1:
                    c = int(c)
                clean[e] = c
        if nvars is None:
            if not clean:
                raise ValueError("nvars required for the zero polynomial")
            nvars = len(next(iter(clean)))
        if any(len(e) != nvars for e in clean):
            raise ValueError("exponent length does not match nvars")
        self.nvars = nvars
        self._terms = clean

    @classmethod
    def _trusted(cls, terms: dict, nvars: int) -> "LaurentPoly":
        # internal fast path: exponents are already int tuples of the right length
        out = object.__new__(cls)
        out.nvars = nvars
        out._terms = {e: c for e, c in terms.items() if c != 0}
        return out

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]], nvars: int) -> "LaurentPoly":
        terms = {tuple(map(int, p)): 1 for p in points}
        if any(len(e) != nvars for e in terms):
            raise ValueError("exponent length does not match nvars")
        return cls._trusted(terms, nvars)

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls({(0,) * nvars: 1}, nvars)

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls({}, nvars)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __getitem__(self, exp) -> object:
        return self._terms.get(tuple(exp), 0)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly._trusted(out, self.nvars)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._trusted({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            out: dict = {}
            for e1, c1 in self._terms.items():
                for e2, c2 in other._terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    out[e] = out.get(e, 0) + c1 * c2
            return LaurentPoly._trusted(out, self.nvars)
        return LaurentPoly({e: c * other for e, c in self._terms.items()}, self.nvars)

    __rmul__ = __mul__

    def shift(self, exp: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial ``x**exp``."""
        exp = tuple(int(a) for a in exp)
        return LaurentPoly._trusted(
            {tuple(a + b for a, b in zip(e, exp)): c for e, c in self._terms.items()},
            self.nvars,
        )

    def total(self):
        """Value at the all-ones point (sum of coefficients)."""
        return sum(self._terms.values())

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def is_indicator(self) -> bool:
        """True when every coefficient is 1, i.e. this is sigma of a finite set."""
        return all(c == 1 for c in self._terms.values())

    def to_json(self) -> list:
        from .serialize import rational_to_json

        return [
            {"exponent": list(e), "coeff": rational_to_json(c)}
            for e, c in sorted(self._terms.items())
        ]

    def __repr__(self):
        if not self._terms:
            return "LaurentPoly(0)"
        return f"LaurentPoly({format_laurent(self)})"


def format_laurent(p: LaurentPoly, names: Sequence[str] | None = None) -> str:
    if not p:
        return "0"
    if names is None:
        names = ["x"] if p.nvars == 1 else [f"x{i + 1}" for i in range(p.nvars)]
    parts = []
    for e, c in sorted(p.items()):
        mono = "*".join(
            n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k != 0
        )
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")


def divide_one_minus_xb(f: LaurentPoly, b: int) -> LaurentPoly:
    """Exact quotient ``f / (1 - x**b)`` for a univariate Laurent polynomial.

    Raises ``ValueError`` if the division is not exact.
    """
    if f.nvars != 1:
        raise ValueError("univariate Laurent polynomial expected")
    if b <= 0:
        raise ValueError("b must be positive")
    if not f:
        return LaurentPoly.zero(1)
    coeffs = {e[0]: c for e, c in f.items()}
    lo, hi = min(coeffs), max(coeffs)
    # f = (1 - x^b) q  =>  q_e = f_e + q_{e-b}
    quot: dict[int, object] = {}
    for e in range(lo, hi - b + 1):
        c = coeffs.get(e, 0) + quot.get(e - b, 0)
        if c != 0:
            quot[e] = c
    # remaining top coefficients must match -q_{e-b}
    for e in range(hi - b + 1, hi + 1):
        if coeffs.get(e, 0) + quot.get(e - b, 0) != 0:
            raise ValueError("not divisible by 1 - x^b")
    return LaurentPoly._trusted({(e,): c for e, c in quot.items()}, 1)
