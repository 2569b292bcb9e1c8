"""CM members of the family: the rational-j set, the quadratic-j set and the tables behind them.

Table values are fixtures loaded from ``settings.CM_FIXTURE_PATH`` and validated
with ``CMTablesSerializer``; everything checkable from the j-pair formula is
recomputed here in exact arithmetic.
"""

import json
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import factorint, isprime, primerange
from sympy.ntheory import jacobi_symbol

from ..exceptions import DatumError, DomainError, ReductionError, UnsupportedConfigurationError
from .ecount import e1_e2, trace
from .ffield import field_new, from_rational, sqrt
from .geomver import j_invariants_pair
from .k3count import trace_transcendental
from .report import CheckReport, exact_str

logger = logging.getLogger(__name__)

GENERIC = "generic"
CM_RATIONAL_J = "cm_rational_j"
CM_QUADRATIC_J = "cm_quadratic_j"

TRIAL_DIVISION_LIMIT = 10 ** 6


@dataclass(frozen=True)
class CMTables:
    version: int
    rational_cm_j: frozenset
    rational: tuple
    quadratic: tuple

    def rows(self):
        return self.rational + self.quadratic

    def row_for(self, t):
        t = Fraction(t)
        return next((row for row in self.rows() if row["t"] == t), None)


def _read_fixture(path):
    from django.conf import settings
    path = path or settings.CM_FIXTURE_PATH
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)


@lru_cache(maxsize=None)
def load_tables(path=None):
    from rest_framework.exceptions import ValidationError

    from ..serializers.cm_serializers import CMTablesSerializer

    serializer = CMTablesSerializer(data=_read_fixture(path))
    try:
        serializer.is_valid(raise_exception=True)
    except ValidationError as exc:
        raise DatumError(f"CM fixture {path or 'default'} is invalid: {exc.detail}")
    data = serializer.validated_data
    logger.debug("loaded CM fixture v%s: %d rational, %d quadratic rows",
                 data["version"], len(data["rational"]), len(data["quadratic"]))
    return CMTables(data["version"], frozenset(data["rational_cm_j"]),
                    tuple(dict(row) for row in data["rational"]),
                    tuple(dict(row) for row in data["quadratic"]))


def _squarefree_int(n):
    if n == 0:
        raise DomainError("squarefree part of 0")
    factors = factorint(abs(n), limit=TRIAL_DIVISION_LIMIT)
    for prime in factors:
        if not isprime(prime):
            raise DatumError(f"{n} has a cofactor {prime} beyond trial division to {TRIAL_DIVISION_LIMIT}")
    part = math.prod(p for p, e in factors.items() if e % 2)
    return part if n > 0 else -part


def squarefree_part(value):
    """m squarefree with value = m * (rational square)."""
    value = Fraction(value)
    return _squarefree_int(value.numerator * value.denominator)


def field_of_S(t):
    """m with Q(S) = Q(sqrt(m)); 1 when S is rational."""
    t = Fraction(t)
    radicand = t * (t - 1)
    return 1 if radicand == 0 else squarefree_part(radicand)


def classify_t(t):
    t = Fraction(t)
    if t == 0:
        raise DomainError("t must be nonzero")
    tables = load_tables()
    if any(row["t"] == t for row in tables.rational):
        return CM_RATIONAL_J
    if any(row["t"] == t for row in tables.quadratic):
        return CM_QUADRATIC_J
    return GENERIC


def verify_rational_cm():
    tables = load_tables()
    reports = []
    for row in tables.rational:
        t = row["t"]
        pair = j_invariants_pair(t)
        values = pair.rational_values()
        details = {"pair": pair.as_json(), "order": row["order"], "D": row["D"]}
        if values is None:
            reports.append(CheckReport(check="cm-rational", passed=False, t=exact_str(t),
                                       lhs=str(pair.as_json()["radicand"]), rhs=exact_str(row["j"]),
                                       reason="j-pair is not rational", details=details))
            continue
        in_list = all(v in tables.rational_cm_j for v in values)
        field_ok = field_of_S(t) == row["field_m"]
        passed = row["j"] in values and in_list and field_ok
        if not in_list:
            details["outside_list"] = [exact_str(v) for v in values if v not in tables.rational_cm_j]
        if not field_ok:
            details["field_m"] = field_of_S(t)
        report = CheckReport(check="cm-rational", passed=passed, t=exact_str(t),
                             lhs=exact_str(list(values)), rhs=exact_str(row["j"]), details=details)
        if not passed:
            logger.warning("rational CM row t=%s failed: %s", report.t, details)
        reports.append(report)
    return reports


def verify_quadratic_cm():
    tables = load_tables()
    reports = []
    for row in tables.quadratic:
        t = row["t"]
        pair = j_invariants_pair(t)
        m = squarefree_part(pair.radicand)
        details = {"pair": pair.as_json(), "order": row["order"], "D": row["D"], "disc_rk": row["disc_rk"]}
        passed = pair.b != 0 and pair.rational_values() is None and m == row["field_m"] == field_of_S(t)
        report = CheckReport(check="cm-quadratic", passed=passed, t=exact_str(t),
                             lhs=str(m), rhs=str(row["field_m"]), details=details)
        if not passed:
            logger.warning("quadratic CM row t=%s failed: Q(sqrt(%s)) against Q(sqrt(%s))",
                           report.t, m, row["field_m"])
        reports.append(report)
    return reports


def cm_block_rows():
    """(t, (a, b, c)) for every CM row, rational ones first."""
    return [(row["t"], tuple(row["ns_block"])) for row in load_tables().rows()]


@dataclass
class SurveyRow:
    p: int
    S: str
    T: int
    a_E1: int
    a_E1_squared: int
    kronecker: int
    note: str = ""

    def as_json(self):
        return {"p": self.p, "S": self.S, "T": self.T, "a_E1": self.a_E1,
                "a_E1_squared": self.a_E1_squared, "kronecker": self.kronecker, "note": self.note}


def survey_row(t, p, D):
    """One survey row at the prime p, or None when p is bad for t or S is not in F_p."""
    field = field_new(p)
    try:
        t_mod = from_rational(field, t)
    except ReductionError:
        return None
    if t_mod.is_zero():
        return None
    root = sqrt(field, (t_mod - 1) / t_mod)
    if root is None:
        return None
    a = trace(e1_e2(t_mod, root)[0], field)
    note = ""
    try:
        T = trace_transcendental(field, t_mod)
    except UnsupportedConfigurationError:
        T, note = None, "t≡1"
    return SurveyRow(p, exact_str(root), T, a, a * a, int(jacobi_symbol(D % p, p)), note)


def cm_trace_survey(t, pmax, pmin=5):
    t = Fraction(t)
    row = load_tables().row_for(t)
    if row is None:
        raise DomainError(f"t={exact_str(t)} is not a CM parameter")
    rows = []
    for p in primerange(max(pmin, 5), pmax + 1):
        entry = survey_row(t, int(p), row["D"])
        if entry is not None:
            rows.append(entry)
    logger.info("CM survey t=%s: %d primes up to %d", exact_str(t), len(rows), pmax)
    return rows
