"""Kodaira fibre types of the elliptic fibrations, read off vanishing orders.

For a fixed rational t each model is a Weierstrass equation over Q(s); c4, c6
and the discriminant are factored over Q, orders at infinity use the K3
weights 8, 12 and 24, and orders are shifted by (4k, 6k, 12k) until the model
is minimal at the place.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field as dataclass_field

from sympy import Poly, Rational, cancel, factor_list, fraction, together

from ..exceptions import DomainError, SingularCurveError
from . import catalog
from .ecount import WeierstrassCurve
from .report import CheckReport, exact_str

logger = logging.getLogger(__name__)

INF = "inf"
K3_WEIGHTS = (8, 12, 24)


@dataclass(frozen=True)
class FibreTable:
    """Expected singular fibres: listed places plus a block of unlisted ones of one type."""

    listed: tuple
    rest_type: str = None
    rest_degree: int = 0


@dataclass(frozen=True)
class FibrationModel:
    name: str
    variable: object
    note: str
    coefficients: object
    fibres: object

    def curve(self, t):
        return WeierstrassCurve(*self.coefficients(t))


@dataclass
class FibreRow:
    place: str
    degree: int
    ord_c4: object
    ord_c6: object
    ord_delta: int
    type: str
    expected: str = None

    def as_json(self):
        def fmt(o):
            return INF if o == math.inf else o
        return {"place": self.place, "degree": self.degree, "ord_c4": fmt(self.ord_c4),
                "ord_c6": fmt(self.ord_c6), "ord_delta": self.ord_delta, "type": self.type,
                "expected": self.expected}


@dataclass
class FibrationProfile:
    model: str
    t: Rational
    rows: list
    euler: int
    problems: list = dataclass_field(default_factory=list)

    @property
    def passed(self):
        return not self.problems

    def types(self):
        return [row.type for row in self.rows]

    def report(self):
        return CheckReport(check="fibration", passed=self.passed, map_name=self.model, t=exact_str(self.t),
                           lhs=str(self.euler), rhs="24",
                           reason="; ".join(self.problems),
                           details={"fibres": [row.as_json() for row in self.rows]})


def kodaira_type(o4, o6, od):
    if od == 0:
        return "I0"
    if o4 == 0:
        return f"I{od}"
    if od == 2:
        return "II"
    if od == 3:
        return "III"
    if od == 4:
        return "IV"
    if od == 6 and o4 >= 2 and o6 >= 3:
        return "I0*"
    if o4 == 2 and o6 == 3 and od > 6:
        return f"I{od - 6}*"
    if od == 8:
        return "IV*"
    if od == 9:
        return "III*"
    if od == 10:
        return "II*"
    return f"?({o4},{o6},{od})"


def _monic(poly_expr, var):
    return Poly(poly_expr, var).monic()


def _orders(expr, var):
    """(orders by monic irreducible factor, degree) or None when expr vanishes identically."""
    num, den = fraction(cancel(together(expr)))
    if num == 0:
        return None
    orders = Counter()
    for part, sign in ((num, 1), (den, -1)):
        _, factors = factor_list(part, var)
        for f, mult in factors:
            if Poly(f, var).degree() > 0:
                orders[_monic(f, var)] += sign * mult
    degree = Poly(num, var).degree() - Poly(den, var).degree()
    return orders, degree


def _floor_div(o, k):
    return o if o == math.inf else o // k


def _normalise(o4, o6, od):
    k = min(_floor_div(o4, 4), _floor_div(o6, 6), od // 12)
    return o4 - 4 * k, o6 - 6 * k, od - 12 * k


def _place_label(place):
    return INF if place == INF else str(place.as_expr())


def _resolve_t(t):
    t = Rational(str(t)) if not isinstance(t, Rational) else t
    if t == 0:
        raise DomainError("t must be nonzero")
    return t


def kodaira_profile(model_id, t):
    try:
        model = MODELS[model_id]
    except KeyError:
        raise DomainError(f"unknown model {model_id!r}; known models: {', '.join(MODELS)}")
    t = _resolve_t(t)
    var = model.variable
    curve = model.curve(t)
    data = [_orders(expr, var) for expr in (curve.c4(), curve.c6(), curve.discriminant())]
    if data[2] is None:
        raise SingularCurveError(f"{model_id} at t={t} has identically vanishing discriminant", 0)

    places = []
    for entry in data:
        if entry is not None:
            places.extend(p for p in entry[0] if p not in places)

    rows = []
    for place in places + [INF]:
        raw = []
        for entry, weight in zip(data, K3_WEIGHTS):
            if entry is None:
                raw.append(math.inf)
            elif place == INF:
                raw.append(weight - entry[1])
            else:
                raw.append(entry[0].get(place, 0))
        o4, o6, od = _normalise(*raw)
        if od == 0:
            continue
        degree = 1 if place == INF else place.degree()
        rows.append(FibreRow(_place_label(place), degree, o4, o6, od, kodaira_type(o4, o6, od)))

    profile = FibrationProfile(model_id, t, rows, sum(r.degree * r.ord_delta for r in rows))
    _compare(profile, model.fibres(t), var)
    if not profile.passed:
        logger.warning("fibration %s at t=%s: %s", model_id, t, "; ".join(profile.problems))
    return profile


def _compare(profile, table, var):
    by_place = {row.place: row for row in profile.rows}
    listed = set()
    for place, expected in table.listed:
        label = INF if place == INF else _place_label(_monic(place, var))
        listed.add(label)
        row = by_place.get(label)
        if row is None:
            profile.problems.append(f"expected {expected} at {label}, fibre is smooth")
            continue
        row.expected = expected
        if row.type != expected:
            profile.problems.append(f"expected {expected} at {label}, found {row.type}")
    rest = [row for row in profile.rows if row.place not in listed]
    for row in rest:
        row.expected = table.rest_type
        if row.type != table.rest_type:
            profile.problems.append(f"unexpected {row.type} fibre at {row.place}")
    rest_degree = sum(row.degree for row in rest)
    if rest_degree != table.rest_degree:
        profile.problems.append(f"{rest_degree} unlisted singular places, expected {table.rest_degree}")
    if profile.euler != 24:
        profile.problems.append(f"Euler number {profile.euler} != 24")


# models

s, u, w = catalog.s, catalog.u, catalog.w


def _family19(t):
    return (s ** 2 - 1) ** 2 / 4, s ** 2 * (s ** 2 - 1) ** 3 / (64 * t), 0


def _family19_fibres(t):
    listed = ((s - 1, "III*"), (s + 1, "III*"), (s, "I4"))
    if t == 1:
        return FibreTable(listed + ((INF, "I2"),))
    return FibreTable(listed, "I1", 2)


def _family19alt(t):
    return 4 * s ** 2, -s ** 3 * (s - 1) ** 2 / t, 0


def _family19alt_fibres(t):
    listed = ((s, "III*"), (INF, "III*"), (s - 1, "I4"))
    if t == 1:
        return FibreTable(listed + ((s + 1, "I2"),))
    return FibreTable(listed, "I1", 2)


def _weier1(t):
    return 2 * (32 * s ** 4 - 64 * s ** 3 + 32 * s ** 2 - t), t ** 2, 0


def _weier1_fibres(t):
    listed = ((s, "I2"), (s - 1, "I2"), (INF, "I16"))
    if t == 1:
        return FibreTable(listed + ((2 * s - 1, "I2"),), "I1", 2)
    return FibreTable(listed, "I1", 4)


def _inose(t):
    return (0, -Rational(16, 3) * t ** 3 * (16 * t + 9),
            512 * t ** 5 * u + 8 * t ** 4 / u + Rational(8, 27) * (1024 * t ** 2 - 2592 * t) * t ** 4)


def _inose_fibres(t):
    listed = ((u, "II*"), (INF, "II*"))
    if t == 1:
        return FibreTable(listed + ((8 * u + 1, "I2"),), "I1", 2)
    if t == Rational(81, 256):
        return FibreTable(listed + ((u - Rational(2, 9), "I2"),), "I1", 2)
    if t == Rational(-9, 16):
        return FibreTable(listed, "II", 2)
    return FibreTable(listed, "I1", 4)


def _iv_star(t):
    return w ** 2 * (1 - w) ** 2, w ** 3 * (1 - w) / (32 * t), w ** 4 / (4096 * t ** 2)


def _iv_star_fibres(t):
    return FibreTable(((w, "IV*"), (INF, "I12")), "I1", 4)


MODELS = {
    m.name: m for m in (
        FibrationModel("family19", s, "rank-19 family over s", _family19, _family19_fibres),
        FibrationModel("family19alt", s, "rank-19 family after s -> (1+s)/(1-s)", _family19alt,
                       _family19alt_fibres),
        FibrationModel("weier1", s, "Weierstrass model from the canonical form", _weier1, _weier1_fibres),
        FibrationModel("inose", u, "Inose fibration", _inose, _inose_fibres),
        FibrationModel("iv_star", w, "fibration with a IV* fibre at 0", _iv_star, _iv_star_fibres),
    )
}
