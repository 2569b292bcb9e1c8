"""Finite fields F_q of odd characteristic with table-resident discrete logs.

Elements are addressed two ways.  The *index* of an element is the integer
``c0 + c1*p + ... + c_{n-1}*p^(n-1)`` of its coordinates in the power basis
of ``F_p[x]/(modulus)``; the *log* of a nonzero element is its exponent with
respect to the fixed generator.  ``FieldSpec`` stores the tables linking the
two, and ``FqElem`` is the scalar view used by the exact verifiers.  Whole
arrays of indices are handled by the ``v*`` methods of ``FieldSpec``.
"""

import itertools
import logging
import math
import random
from fractions import Fraction
from functools import lru_cache

import numpy as np
from sympy import factorint, isprime, nextprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_pow_mod, gf_rem
from sympy.ntheory.residue_ntheory import sqrt_mod

from ..exceptions import DomainError, FieldConstructionError, ReductionError

logger = logging.getLogger(__name__)

DEFAULT_FIELD_BOUND = 2 ** 24


def _index_to_coeffs(index, p, n):
    coeffs = []
    for _ in range(n):
        index, c = divmod(index, p)
        coeffs.append(c)
    return coeffs


def _coeffs_to_index(coeffs, p):
    index = 0
    for c in reversed(coeffs):
        index = index * p + (int(c) % p)
    return index


def _to_gf(coeffs):
    # galoistools lists are high degree first, without leading zeros
    gf = [int(c) for c in reversed(coeffs)]
    while gf and gf[0] == 0:
        gf.pop(0)
    return gf


def _from_gf(gf, n):
    coeffs = list(reversed(gf))
    return coeffs + [0] * (n - len(coeffs))


def _least_irreducible(p, n):
    if n == 1:
        return [0, 1]
    for low in itertools.product(range(p), repeat=n):
        candidate = [1] + list(reversed(low))
        if gf_irreducible_p(candidate, p, ZZ):
            return list(low) + [1]
    raise FieldConstructionError(f"no irreducible polynomial of degree {n} over F_{p}")


class FieldSpec:
    """An odd-characteristic finite field with a fixed generator.

    Build instances with :func:`field_new`; the tables are read-only after
    construction.
    """

    def __init__(self, p, n, modulus, generator, exp_table):
        self.p = p
        self.n = n
        self.q = p ** n
        self.modulus = tuple(modulus)
        self.generator = generator
        self.order = self.q - 1

        self.exp_table = exp_table
        log_table = np.full(self.q, self.order, dtype=np.int64)
        log_table[exp_table] = np.arange(self.order, dtype=np.int64)
        self.log_table = log_table

        one_plus = self.vadd(exp_table, 1)
        self.zech = log_table[one_plus]

        self.trace_table = self._build_trace_table()
        chi = np.where(log_table % 2 == 0, 1, -1).astype(np.int64)
        chi[0] = 0
        self.chi_table = chi

        for table in (self.exp_table, self.log_table, self.zech, self.trace_table, self.chi_table):
            table.setflags(write=False)

    def __repr__(self):
        return f"FieldSpec(p={self.p}, n={self.n})"

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.n, self.modulus, self.generator) == (
            other.p, other.n, other.modulus, other.generator)

    def __hash__(self):
        return hash((self.p, self.n, self.modulus, self.generator))

    @property
    def zero_log(self):
        return self.order

    def _build_trace_table(self):
        logs = np.arange(self.order, dtype=np.int64)
        acc = np.zeros(self.order, dtype=np.int64)
        power = 1
        for _ in range(self.n):
            acc = self.vadd(acc, self.exp_table[(logs * power) % self.order])
            power *= self.p
        trace = np.zeros(self.q, dtype=np.int64)
        trace[self.exp_table] = acc
        return trace

    # vectorized arithmetic on index arrays

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        p = self.p
        if self.n == 1:
            return (a + b) % p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        place = 1
        for _ in range(self.n):
            out += (((a // place) % p + (b // place) % p) % p) * place
            place *= p
        return out

    def vneg(self, a):
        a = np.asarray(a, dtype=np.int64)
        p = self.p
        if self.n == 1:
            return (-a) % p
        out = np.zeros(a.shape, dtype=np.int64)
        place = 1
        for _ in range(self.n):
            out += ((-((a // place) % p)) % p) * place
            place *= p
        return out

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la = self.log_table[a]
        lb = self.log_table[b]
        out = self.exp_table[(la + lb) % self.order].astype(np.int64)
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DomainError("inverse of zero")
        return self.exp_table[(-self.log_table[a]) % self.order].astype(np.int64)

    def vchi(self, a):
        return self.chi_table[np.asarray(a, dtype=np.int64)]

    def from_int(self, value):
        """Index of the prime-field element ``value mod p``."""
        return int(value) % self.p

    # scalar views

    def element(self, value):
        if isinstance(value, FqElem):
            return value
        if isinstance(value, Fraction):
            return from_rational(self, value)
        if isinstance(value, (list, tuple)):
            if len(value) > self.n:
                raise DomainError(f"{len(value)} coordinates for a degree {self.n} field")
            return self.from_index(_coeffs_to_index(list(value), self.p))
        return self.from_index(int(value) % self.p)

    def from_index(self, index):
        index = int(index)
        if index == 0:
            return FqElem(self, None)
        return FqElem(self, int(self.log_table[index]))

    def from_log(self, log):
        return FqElem(self, int(log) % self.order)

    def elements(self):
        for index in range(self.q):
            yield self.from_index(index)

    def nonzero(self):
        for index in range(1, self.q):
            yield self.from_index(index)

    @property
    def zero(self):
        return FqElem(self, None)

    @property
    def one(self):
        return FqElem(self, 0)

    def modulus_string(self):
        terms = []
        for degree in range(self.n, -1, -1):
            c = self.modulus[degree]
            if c == 0:
                continue
            mono = "" if degree == 0 else ("x" if degree == 1 else f"x^{degree}")
            coeff = str(c) if (c != 1 or degree == 0) else ""
            terms.append(f"{coeff}{'*' if coeff and mono else ''}{mono}")
        return " + ".join(terms)


class FqElem:
    """A field element in log form; ``log`` is None for zero."""

    __slots__ = ("field", "log")

    def __init__(self, field, log):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "log", log)

    def __setattr__(self, name, value):
        raise AttributeError("FqElem is immutable")

    @property
    def index(self):
        if self.log is None:
            return 0
        return int(self.field.exp_table[self.log])

    def coords(self):
        return _index_to_coeffs(self.index, self.field.p, self.field.n)

    def is_zero(self):
        return self.log is None

    def _coerce(self, other):
        if isinstance(other, FqElem):
            if other.field is not self.field and other.field != self.field:
                raise DomainError("elements of different fields")
            return other
        if isinstance(other, (int, np.integer)):
            return self.field.from_index(int(other) % self.field.p)
        if isinstance(other, Fraction):
            return from_rational(self.field, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.log is None:
            return other
        if other.log is None:
            return self
        f = self.field
        shift = (other.log - self.log) % f.order
        z = int(f.zech[shift])
        if z == f.zero_log:
            return f.zero
        return FqElem(f, (self.log + z) % f.order)

    __radd__ = __add__

    def __neg__(self):
        if self.log is None:
            return self
        f = self.field
        # -1 = g^((q-1)/2)
        return FqElem(f, (self.log + f.order // 2) % f.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.log is None or other.log is None:
            return self.field.zero
        return FqElem(self.field, (self.log + other.log) % self.field.order)

    __rmul__ = __mul__

    def inverse(self):
        if self.log is None:
            raise DomainError("zero has no inverse")
        return FqElem(self.field, (-self.log) % self.field.order)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, exponent):
        exponent = int(exponent)
        if self.log is None:
            if exponent <= 0:
                raise DomainError("zero to a non-positive power")
            return self
        return FqElem(self.field, (self.log * exponent) % self.field.order)

    def __eq__(self, other):
        if isinstance(other, (int, np.integer, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, FqElem):
            return NotImplemented
        return self.field == other.field and self.log == other.log

    def __hash__(self):
        return hash((self.field.p, self.field.n, self.log))

    def __bool__(self):
        return self.log is not None

    def __repr__(self):
        if self.field.n == 1:
            return f"FqElem({self.index} mod {self.field.p})"
        return f"FqElem({self.coords()} in F_{self.field.q})"

    def to_json(self):
        if self.field.n == 1:
            return self.index
        return self.coords()


def _check_parameters(p, n, bound):
    if not isinstance(p, int) or not isprime(p):
        raise FieldConstructionError(f"p={p} is not prime")
    if p == 2:
        raise FieldConstructionError("characteristic 2 is not supported")
    if not isinstance(n, int) or n < 1:
        raise FieldConstructionError(f"extension degree n={n} must be >= 1")
    if p ** n > bound:
        raise FieldConstructionError(f"q={p}^{n} exceeds the table bound {bound}")


def _find_generator(p, n, modulus):
    q = p ** n
    primes = list(factorint(q - 1))
    gf_mod = _to_gf(modulus)
    for index in range(1, q):
        if n == 1:
            if all(pow(index, (q - 1) // r, p) != 1 for r in primes):
                return index
            continue
        gf_g = _to_gf(_index_to_coeffs(index, p, n))
        if all(gf_pow_mod(gf_g, (q - 1) // r, gf_mod, p, ZZ) != [1] for r in primes):
            return index
    raise FieldConstructionError(f"no generator found for F_{q}")


def _checked_generator(p, n, modulus, index):
    q = p ** n
    if not 0 < index < q:
        raise FieldConstructionError(f"generator index {index} outside 1..{q - 1}")
    table = _power_table(p, n, modulus, index)
    if len(np.unique(table)) != q - 1:
        raise FieldConstructionError(f"element {index} does not generate F_{q}^x")
    return index


def next_generator(field):
    """Index of the next generator after ``field.generator`` in index order."""
    for index in range(field.generator + 1, field.q):
        if math.gcd(int(field.log_table[index]), field.order) == 1:
            return index
    raise FieldConstructionError(f"no generator after {field.generator}")


def _power_table(p, n, modulus, generator):
    q = p ** n
    exp_table = np.empty(q - 1, dtype=np.int64)
    if n == 1:
        value = 1
        for k in range(q - 1):
            exp_table[k] = value
            value = (value * generator) % p
        return exp_table
    gf_mod = _to_gf(modulus)
    gf_g = _to_gf(_index_to_coeffs(generator, p, n))
    current = [1]
    for k in range(q - 1):
        exp_table[k] = _coeffs_to_index(_from_gf(current, n), p)
        current = gf_rem(gf_mul(current, gf_g, p, ZZ), gf_mod, p, ZZ)
    return exp_table


@lru_cache(maxsize=32)
def field_new(p, n=1, bound=DEFAULT_FIELD_BOUND, generator=None):
    """Build F_{p^n} with the least monic irreducible modulus and least generator.

    Passing ``generator`` (an element index) overrides the generator choice;
    it must have order q-1.
    """
    _check_parameters(p, n, bound)
    modulus = _least_irreducible(p, n)
    if generator is None:
        generator = _find_generator(p, n, modulus)
    else:
        generator = _checked_generator(p, n, modulus, generator)
    field = FieldSpec(p, n, modulus, generator, _power_table(p, n, modulus, generator))
    logger.debug("built F_%s: modulus %s, generator index %s", field.q, field.modulus_string(), generator)
    return field


def field_for_q(q, bound=DEFAULT_FIELD_BOUND):
    factors = factorint(q)
    if len(factors) != 1:
        raise FieldConstructionError(f"q={q} is not a prime power")
    (p, n), = factors.items()
    return field_new(int(p), int(n), bound)


def dlog(field, x):
    x = field.element(x)
    if x.log is None:
        raise DomainError("discrete log of zero")
    return x.log


def is_square(field, x):
    x = field.element(x)
    return x.log is None or x.log % 2 == 0


def sqrt(field, x):
    x = field.element(x)
    if x.log is None:
        return field.zero
    if x.log % 2:
        return None
    return FqElem(field, x.log // 2)


def trace_to_prime(field, x):
    return int(field.trace_table[field.element(x).index])


def frobenius(field, x, power=1):
    return field.element(x) ** (field.p ** power)


def from_rational(field, value):
    value = Fraction(value)
    den = value.denominator % field.p
    if den == 0:
        raise ReductionError(f"denominator of {value} vanishes mod {field.p}")
    num = field.from_index(value.numerator % field.p)
    return num / field.from_index(den)


def delta_indicator(field, m, n):
    """n if m is a nonzero square in F_q, else 0."""
    m = field.element(m)
    return n if (m.log is not None and m.log % 2 == 0) else 0


def parse_element(field, text):
    """Parse ``"3"``, ``"5/2"`` or ``"[c0,c1,...]"`` into an element."""
    text = str(text).strip()
    if text.startswith("["):
        body = text.strip("[]").strip()
        coeffs = [int(c) for c in body.split(",")] if body else []
        return field.element(coeffs)
    return from_rational(field, Fraction(text))


# prime-field helpers used by randomized identity testing

def random_prime(bits, rng):
    if bits < 3:
        raise FieldConstructionError("prime size below 3 bits")
    while True:
        candidate = nextprime(rng.getrandbits(bits - 1) | (1 << (bits - 1)))
        if candidate.bit_length() == bits:
            return int(candidate)


def prime_sqrt(a, p):
    """A square root of ``a`` mod the prime ``p``, or None."""
    a %= p
    if a == 0:
        return 0
    root = sqrt_mod(a, p)
    return None if root is None else int(root)


def make_rng(seed):
    return random.Random(seed)
