"""Hypergeometric data and their finite-field sums.

A datum (alpha, beta) is compiled to integer lists p, q with
prod(x^p_i - 1) / prod(x^q_j - 1) = prod(x - e(alpha_i)) / prod(x - e(beta_j)),
and the sum

    H_q(alpha, beta | t) = (-1)^(r+s) / (1-q) * sum_m q^(s(m)-s(0))
                           * prod g(p_i m) * prod g(-q_j m) * omega(eps M^-1 t)^m

is evaluated from a Gauss table.  Values are rounded under the integrality
contract q^k H in Z with k = max(s(0) - 1, 0).
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from functools import cached_property

import mpmath
import numpy as np
from sympy import totient

from ..exceptions import DatumError, DomainError, IntegrityError, PrecisionError, ReductionError
from .charsum import CharacterSystem, fixed_mul, high_precision_defaults
from .ffield import from_rational

logger = logging.getLogger(__name__)

ROUNDING_TOLERANCE = 1e-3


def _parse_fraction(value):
    value = Fraction(value)
    return value - math.floor(value)


@dataclass(frozen=True)
class HGDatum:
    alpha: tuple
    beta: tuple
    p_list: tuple
    q_list: tuple
    M: Fraction
    epsilon: int
    d_counts: dict = dataclass_field(compare=False)

    @property
    def degree(self):
        return len(self.alpha)

    @property
    def r(self):
        return len(self.p_list)

    @property
    def s(self):
        return len(self.q_list)

    @cached_property
    def denominators(self):
        return sorted({a.denominator for a in self.alpha + self.beta})

    def s_zero(self):
        return self.d_counts.get(1, 0)

    def label(self):
        fmt = ",".join
        return f"({fmt(str(a) for a in self.alpha)};{fmt(str(b) for b in self.beta)})"


def _exponents(values, sign, exponents):
    by_den = Counter()
    for v in values:
        by_den[v.denominator] += 1
    for den, count in by_den.items():
        residues = Counter(v.numerator for v in values if v.denominator == den)
        units = [a for a in range(den) if math.gcd(a, den) == 1]
        first = residues[units[0]]
        for a in units:
            if residues[a] != first:
                raise DatumError(
                    f"parameters are not Galois-stable: {Fraction(a, den)} appears "
                    f"{residues[a]} times but {Fraction(units[0], den)} appears {first} times")
        exponents[den] = exponents.get(den, 0) + sign * count // int(totient(den))


def datum_from_parameters(alpha, beta):
    alpha = tuple(sorted(_parse_fraction(a) for a in alpha))
    beta = tuple(sorted(_parse_fraction(b) for b in beta))
    if len(alpha) != len(beta):
        raise DatumError(f"alpha has {len(alpha)} entries but beta has {len(beta)}")
    if not alpha:
        raise DatumError("empty hypergeometric datum")
    overlap = Counter(alpha) & Counter(beta)
    if overlap:
        raise DatumError(f"alpha and beta share {sorted(overlap)[0]}")

    exponents = {}
    _exponents(alpha, 1, exponents)
    _exponents(beta, -1, exponents)

    top = max(exponents)
    gamma = {}
    for d in range(top, 0, -1):
        gamma[d] = exponents.get(d, 0) - sum(gamma[k] for k in range(2 * d, top + 1, d))

    p_list, q_list = [], []
    for k in sorted(gamma, reverse=True):
        if gamma[k] > 0:
            p_list.extend([k] * gamma[k])
        elif gamma[k] < 0:
            q_list.extend([k] * -gamma[k])

    M = Fraction(1)
    for k in p_list:
        M *= Fraction(k) ** k
    for k in q_list:
        M /= Fraction(k) ** k
    epsilon = 1 if sum(q_list) % 2 == 0 else -1

    d_counts = {}
    for d in range(1, top + 1):
        count = min(sum(1 for k in p_list if k % d == 0), sum(1 for k in q_list if k % d == 0))
        if count:
            d_counts[d] = count
    return HGDatum(alpha, beta, tuple(p_list), tuple(q_list), M, epsilon, d_counts)


MAIN_DATUM = datum_from_parameters(["1/4", "1/2", "3/4"], [0, 0, 0])
CURVE_DATUM = datum_from_parameters(["1/6", "5/6"], ["1/4", "3/4"])


def s_multiplicity(datum, q, m):
    order = q - 1
    d = order // math.gcd(int(m) % order, order) if order else 1
    return datum.d_counts.get(d, 0)


def _s_vector(datum, q):
    order = q - 1
    m = np.arange(order)
    d = order // np.gcd(m, order)
    return np.array([datum.d_counts.get(int(v), 0) for v in d], dtype=np.int64)


@dataclass
class HGSumResult:
    value: complex
    scale: int
    rounded: Fraction
    residual: float

    def as_json(self):
        return {
            "complex": [self.value.real, self.value.imag],
            "rounded": str(self.rounded),
            "residual": self.residual,
        }


def _check_datum_field(datum, field):
    for den in datum.denominators:
        if den % field.p == 0:
            raise DomainError(f"q={field.q} is not coprime to denominator {den}")


def argument(datum, field, t):
    """eps * M^-1 * t reduced into F_q."""
    t = field.element(t)
    if t.is_zero():
        raise DomainError("hypergeometric argument t must be nonzero")
    try:
        factor = from_rational(field, datum.epsilon / datum.M)
    except (ReductionError, ZeroDivisionError):
        raise ReductionError(f"M={datum.M} does not reduce mod {field.p}")
    if factor.is_zero():
        raise ReductionError(f"M={datum.M} vanishes mod {field.p}")
    return factor * t


def _raw_sum_fixed(datum, cs, s_vals, s0, exps):
    order, bits = cs.field.order, cs.fixed_bits
    m = np.arange(order, dtype=np.int64)
    g_re, g_im = cs.gauss_fixed
    t_re, t_im = cs.zeta_fixed[0][exps], cs.zeta_fixed[1][exps]
    for pk in datum.p_list:
        idx = (pk * m) % order
        t_re, t_im = fixed_mul(t_re, t_im, g_re[idx], g_im[idx], bits)
    for qk in datum.q_list:
        idx = (-qk * m) % order
        t_re, t_im = fixed_mul(t_re, t_im, g_re[idx], g_im[idx], bits)
    with mpmath.workprec(cs.precision):
        qq = mpmath.mpf(cs.field.q)
        total = mpmath.mpc(0)
        # exact integer sums per power of q
        for s in np.unique(s_vals):
            mask = s_vals == s
            part = mpmath.mpc(mpmath.ldexp(mpmath.mpf(int(t_re[mask].sum())), -bits),
                              mpmath.ldexp(mpmath.mpf(int(t_im[mask].sum())), -bits))
            total += qq ** (int(s) - s0) * part
        return complex((-1) ** (datum.r + datum.s) * total / (1 - qq))


def _raw_sum(datum, cs, z):
    field = cs.field
    order = field.order
    m = np.arange(order, dtype=np.int64)
    s_vals = _s_vector(datum, field.q)
    s0 = int(s_vals[0])
    exps = (m * z.log) % order

    if cs.gauss_fixed is not None:
        return _raw_sum_fixed(datum, cs, s_vals, s0, exps)

    terms = np.power(float(field.q), (s_vals - s0).astype(float)).astype(np.complex128)
    for pk in datum.p_list:
        terms = terms * cs.gauss[(pk * m) % order]
    for qk in datum.q_list:
        terms = terms * cs.gauss[(-qk * m) % order]
    terms = terms * cs.zeta_order[exps]
    return complex((-1) ** (datum.r + datum.s) * terms.sum() / (1 - field.q))


def hg_sum(datum, cs, t, tolerance=ROUNDING_TOLERANCE):
    field = cs.field
    _check_datum_field(datum, field)
    z = argument(datum, field, t)
    value = _raw_sum(datum, cs, z)
    scale = max(datum.s_zero() - 1, 0)
    scaled = value * field.q ** scale
    nearest = round(scaled.real)
    residual = max(abs(scaled.imag), abs(scaled.real - nearest))
    if residual > tolerance:
        raise PrecisionError(
            f"rounding residual {residual:.3g} for {datum.label()} at q={field.q}, t={t}")
    return HGSumResult(value, scale, Fraction(nearest, field.q ** scale), residual)


def escalated(fn, cs, *args, **kwargs):
    """Call ``fn(cs, ...)``; on a precision error rebuild cs at high precision and retry once."""
    try:
        return fn(cs, *args, **kwargs)
    except PrecisionError as exc:
        logger.info("escalating precision for q=%s: %s", cs.field.q, exc)
        bits = max(high_precision_defaults()[1], 2 * cs.precision)
        return fn(CharacterSystem(cs.field, bits, high_precision=True), *args, **kwargs)


def hg_H3(cs, t):
    """H_q(1/4,1/2,3/4; 0,0,0 | t) as an integer."""
    result = hg_sum(MAIN_DATUM, cs, t)
    value = result.rounded
    if value.denominator != 1 or abs(value) > 3 * cs.field.q:
        raise IntegrityError(f"H3 value {value} violates |H3| <= 3q at q={cs.field.q}")
    return int(value)


def hg_H2(cs, t):
    """H_q(1/6,5/6; 1/4,3/4 | t); q times the value is an integer."""
    q = cs.field.q
    if math.gcd(q, 6) != 1:
        raise DomainError(f"H2 needs gcd(q, 6) = 1, got q={q}")
    result = hg_sum(CURVE_DATUM, cs, t)
    a = result.rounded * q
    if a.denominator != 1 or a * a > 4 * q:
        raise IntegrityError(f"q*H2 = {a} violates the Hasse bound at q={q}")
    return Fraction(int(a), q)


def bcm_gauss_sum(cs, w):
    """sum_m g(4m) g(-m)^4 omega(w)^m."""
    field = cs.field
    w = field.element(w)
    if w.is_zero():
        raise DomainError("omega is not evaluated at zero")
    order = field.order
    m = np.arange(order, dtype=np.int64)
    g = cs.gauss
    terms = g[(4 * m) % order] * g[(-m) % order] ** 4 * cs.zeta_order[(m * w.log) % order]
    return complex(terms.sum())


def h3_direct(cs, t):
    """H3 written out: -1/(1-q) * sum q^(s(m)-1) g(4m) g(-m)^4 omega(t/256)^m."""
    field = cs.field
    order = field.order
    m = np.arange(order, dtype=np.int64)
    w = field.element(t) * from_rational(field, Fraction(1, 256))
    g = cs.gauss
    # s(m) = 1 only at m = 0
    weight = np.where(m == 0, 1.0, 1.0 / field.q)
    terms = weight * g[(4 * m) % order] * g[(-m) % order] ** 4 * cs.zeta_order[(m * w.log) % order]
    return complex(-terms.sum() / (1 - field.q))


def h2_direct(cs, t):
    """H2 written out with the factors g(6m) g(m) g(-4m) g(-3m) and argument -4t/27."""
    field = cs.field
    order = field.order
    m = np.arange(order, dtype=np.int64)
    w = field.element(t) * from_rational(field, Fraction(-4, 27))
    g = cs.gauss
    d = order // np.gcd(m, order)
    s_vals = np.select([d == 1, (d == 2) | (d == 3)], [2, 1], default=0)
    weight = np.power(float(field.q), (s_vals - 2).astype(float))
    terms = weight * g[(6 * m) % order] * g[m % order] * g[(-4 * m) % order] * g[(-3 * m) % order]
    terms = terms * cs.zeta_order[(m * w.log) % order]
    return complex(terms.sum() / (1 - field.q))
