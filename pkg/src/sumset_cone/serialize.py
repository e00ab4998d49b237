"""JSON encodings for point sets, exact rationals and series.

Rationals are written as ``{"num": n, "den": d}`` so that no coefficient
ever passes through a float.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import TYPE_CHECKING, Any

from .errors import SumsetError
from .polynomials import LaurentPoly
from .sumset import PointSet

if TYPE_CHECKING:
    from .series import RationalSeriesT


class InputError(SumsetError, ValueError):
    """Malformed JSON input."""


def rational_to_json(c) -> dict:
    f = Fraction(c)
    return {"num": f.numerator, "den": f.denominator}


def rational_from_json(obj) -> Fraction:
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, dict) and set(obj) == {"num", "den"}:
        if not isinstance(obj["num"], int) or not isinstance(obj["den"], int) or obj["den"] == 0:
            raise InputError(f"bad rational {obj!r}")
        return Fraction(obj["num"], obj["den"])
    raise InputError(f"bad rational {obj!r}")


def pointset_to_json(a: PointSet) -> dict:
    return {"dim": a.dim, "points": [list(p) for p in a.sorted()]}


def pointset_from_json(obj: Any) -> PointSet:
    """Parse ``{"dim": d, "points": [[...], ...]}``; bare integer lists are read as d = 1."""
    if not isinstance(obj, dict) or "points" not in obj:
        raise InputError('expected an object with a "points" field')
    pts = obj["points"]
    if not isinstance(pts, list) or not pts:
        raise InputError('"points" must be a nonempty list')
    rows = []
    for p in pts:
        if isinstance(p, bool):
            raise InputError(f"bad point {p!r}")
        if isinstance(p, int):
            p = [p]
        if not isinstance(p, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in p):
            raise InputError(f"bad point {p!r}")
        rows.append(tuple(p))
    dim = obj.get("dim", len(rows[0]))
    if not isinstance(dim, int) or dim < 1:
        raise InputError(f"bad dimension {dim!r}")
    if any(len(p) != dim for p in rows):
        raise InputError(f"every point must have {dim} coordinates")
    if len(set(rows)) != len(rows):
        raise InputError("points must be distinct")
    return PointSet(frozenset(rows), dim)


def load_pointset(text: str) -> PointSet:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    return pointset_from_json(obj)


def poly_to_json(coeffs) -> list:
    return [rational_to_json(c) for c in coeffs]


def series_to_json(series) -> dict:
    return {"numerator": poly_to_json(series.numerator), "denom_power": series.denom_power}


def series_from_json(obj) -> "RationalSeriesT":
    from .series import RationalSeriesT

    try:
        num = tuple(rational_from_json(c) for c in obj["numerator"])
        return RationalSeriesT(num, int(obj["denom_power"]))
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad series: {exc}") from exc


def laurent_from_json(obj, nvars: int) -> LaurentPoly:
    """Accepts the list form written by ``LaurentPoly.to_json``."""
    terms = {}
    for term in obj:
        e = tuple(term["exponent"])
        if len(e) != nvars:
            raise InputError(f"exponent {list(e)} should have {nvars} entries")
        terms[e] = terms.get(e, 0) + rational_from_json(term["coeff"])
    return LaurentPoly(terms, nvars)


def multivariate_to_json(m) -> dict:
    return {
        "numerator": m.numerator.to_json(),
        "denominator": [{"exponent": list(e), "t": 1} for e in m.denom_factors],
    }


def multivariate_from_json(obj, d: int):
    """Parse a claimed ``numerator / prod (1 - x^m t)``.

    Numerator exponents have ``d + 1`` entries (the last is the power of t);
    each denominator record is ``{"exponent": [m_1..m_d], "t": 1}``.
    """
    from .series import MultivariateRationalT

    try:
        num = laurent_from_json(obj["numerator"], d + 1)
        factors = []
        for f in obj["denominator"]:
            if f.get("t", 1) != 1:
                raise InputError("every denominator factor must be linear in t")
            e = tuple(f["exponent"])
            if len(e) != d:
                raise InputError(f"denominator exponent {list(e)} should have {d} entries")
            factors.append(e)
        return MultivariateRationalT(num, tuple(factors))
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f"bad multivariate series: {exc}") from exc


def dumps(obj) -> str:
    """Stable JSON text (sorted keys, fixed separators, trailing newline)."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
