"""Multiplicative and additive characters of F_q and the Gauss-sum table.

The multiplicative character is fixed as omega(x) = zeta_{q-1}^{dlog x} and the
additive one as psi(x) = zeta_p^{Tr(a x)} with a = 1 unless a rescaling is
asked for.  The whole table g(0..q-2) is one inverse DFT of the psi values
read in generator order.

In high-precision mode the DFT runs in fixed point: complex values are pairs
of Python integers scaled by 2^bits held in numpy object arrays, the length
q-1 transform is a Bluestein chirp convolution over power-of-two FFTs, and
roots of unity come from mpmath.
"""

import logging
import math
from functools import lru_cache

import mpmath
import numpy as np

from ..exceptions import DomainError, PrecisionError
from .ffield import field_new

logger = logging.getLogger(__name__)

DEFAULT_PRECISION = 53
HIGH_PRECISION_Q = 10 ** 4
HIGH_PRECISION_BITS = 128


def high_precision_defaults():
    """(q threshold, bits) for high-precision mode, from settings when Django is configured."""
    from django.conf import settings

    if not settings.configured:
        return HIGH_PRECISION_Q, HIGH_PRECISION_BITS
    return (getattr(settings, "HGMK3_HIGH_PRECISION_Q", HIGH_PRECISION_Q),
            getattr(settings, "HGMK3_HIGH_PRECISION_BITS", HIGH_PRECISION_BITS))


def residual_tolerance(q, precision=DEFAULT_PRECISION):
    return 1e-6 * math.sqrt(q) * 2.0 ** (DEFAULT_PRECISION - max(precision, DEFAULT_PRECISION))


# fixed-point complex arithmetic on object arrays

def fixed_mul(a_re, a_im, b_re, b_im, bits):
    return (a_re * b_re - a_im * b_im) >> bits, (a_re * b_im + a_im * b_re) >> bits


def fixed_to_float(values, bits):
    return np.asarray(values, dtype=object).astype(np.float64) * 2.0 ** -bits


@lru_cache(maxsize=8)
def fixed_roots(n, count, bits):
    """zeta_n^j for 0 <= j < count, scaled by 2^bits; two small mpmath tables and one product."""
    block = math.isqrt(count) + 1
    with mpmath.workprec(bits + 32):
        scale = mpmath.ldexp(mpmath.mpf(1), bits)

        def fixed(k):
            z = mpmath.expjpi(mpmath.mpf(2 * k) / n) * scale
            return int(mpmath.nint(z.real)), int(mpmath.nint(z.imag))

        low = [fixed(b) for b in range(block)]
        high = [fixed(a * block) for a in range((count - 1) // block + 1)]
    low_re, low_im = (np.array([v[i] for v in low], dtype=object) for i in (0, 1))
    high_re, high_im = (np.array([v[i] for v in high], dtype=object) for i in (0, 1))
    j = np.arange(count, dtype=np.int64)
    a, b = j // block, j % block
    return fixed_mul(high_re[a], high_im[a], low_re[b], low_im[b], bits)


def _bit_reverse(n):
    levels = n.bit_length() - 1
    j = np.arange(n, dtype=np.int64)
    rev = np.zeros(n, dtype=np.int64)
    for level in range(levels):
        rev |= ((j >> level) & 1) << (levels - 1 - level)
    return rev


def fixed_fft(re, im, bits, inverse=False):
    """Unnormalised radix-2 DFT of a power-of-two length; forward uses zeta^-jk."""
    n = len(re)
    if n & (n - 1):
        raise DomainError(f"fixed-point FFT length {n} is not a power of two")
    rev = _bit_reverse(n)
    re, im = re[rev], im[rev]
    if n == 1:
        return re, im
    tw_re, tw_im = fixed_roots(n, n // 2, bits)
    if not inverse:
        tw_im = -tw_im
    size = 2
    while size <= n:
        half = size // 2
        w_re, w_im = tw_re[::n // size][:half], tw_im[::n // size][:half]
        re, im = re.reshape(-1, size), im.reshape(-1, size)
        t_re, t_im = fixed_mul(re[:, half:], im[:, half:], w_re, w_im, bits)
        even_re, even_im = re[:, :half], im[:, :half]
        re = np.concatenate([even_re + t_re, even_re - t_re], axis=1).reshape(-1)
        im = np.concatenate([even_im + t_im, even_im - t_im], axis=1).reshape(-1)
        size *= 2
    return re, im


class CharacterSystem:
    """Gauss sums g(m) = sum_{x != 0} omega(x)^m psi(x) for one field."""

    def __init__(self, field, precision=DEFAULT_PRECISION, high_precision=None, additive_scale=1):
        if precision < DEFAULT_PRECISION:
            raise PrecisionError(f"precision {precision} is below {DEFAULT_PRECISION} bits")
        threshold, high_bits = high_precision_defaults()
        if high_precision is None:
            high_precision = field.q > threshold
        if high_precision:
            precision = max(precision, high_bits)
        self.field = field
        self.precision = precision
        self.high_precision = high_precision
        self.additive_scale = field.element(additive_scale)
        if self.additive_scale.is_zero():
            raise DomainError("additive character scale must be nonzero")

        order = field.order
        self.zeta_order = np.exp(2j * np.pi * np.arange(order) / order)
        self.zeta_p = np.exp(2j * np.pi * np.arange(field.p) / field.p)

        scaled = field.vmul(field.exp_table, self.additive_scale.index)
        self.psi_traces = field.trace_table[scaled]

        self.fixed_bits = None
        self.gauss_fixed = None
        self.zeta_fixed = None
        if high_precision:
            self.fixed_bits = precision + 2 * (2 * order).bit_length()
            self._build_fixed_tables()
            g_re, g_im = self.gauss_fixed
            gauss = fixed_to_float(g_re, self.fixed_bits) + 1j * fixed_to_float(g_im, self.fixed_bits)
        else:
            psi = self.zeta_p[self.psi_traces]
            gauss = order * np.fft.ifft(psi)
        gauss[0] = -1.0
        gauss.setflags(write=False)
        self.gauss = gauss

        self.residual = self._norm_residual()
        self.tolerance = residual_tolerance(field.q, precision)
        logger.debug("gauss table for q=%s at %s bits, residual %.3g", field.q, precision, self.residual)
        if self.residual > self.tolerance:
            raise PrecisionError(
                f"Gauss residual {self.residual:.3g} above {self.tolerance:.3g} for q={field.q}; "
                "rebuild in high-precision mode")

    def _build_fixed_tables(self):
        """g(m) = c_m * sum_k (psi_k c_k) conj(c_{m-k}) with c_j = zeta_{2N}^{j^2}, N = q - 1."""
        field, bits = self.field, self.fixed_bits
        n = field.order
        roots_re, roots_im = fixed_roots(2 * n, 2 * n, bits)
        self.zeta_fixed = (roots_re[::2], roots_im[::2])

        j = np.arange(n, dtype=np.int64)
        chirp = (j * j) % (2 * n)
        c_re, c_im = roots_re[chirp], roots_im[chirp]
        p_re, p_im = fixed_roots(field.p, field.p, bits)
        a_re, a_im = fixed_mul(p_re[self.psi_traces], p_im[self.psi_traces], c_re, c_im, bits)

        size = 1 << (2 * n - 1).bit_length()
        A_re, A_im, B_re, B_im = (np.zeros(size, dtype=object) for _ in range(4))
        A_re[:n], A_im[:n] = a_re, a_im
        B_re[:n], B_im[:n] = c_re, -c_im
        if n > 1:
            B_re[size - n + 1:], B_im[size - n + 1:] = c_re[:0:-1], -c_im[:0:-1]

        A_re, A_im = fixed_fft(A_re, A_im, bits)
        B_re, B_im = fixed_fft(B_re, B_im, bits)
        C_re, C_im = fixed_fft(*fixed_mul(A_re, A_im, B_re, B_im, bits), bits, inverse=True)
        shift = size.bit_length() - 1
        g_re, g_im = fixed_mul(C_re[:n] >> shift, C_im[:n] >> shift, c_re, c_im, bits)
        g_re[0], g_im[0] = -(1 << bits), 0
        self.gauss_fixed = (g_re, g_im)

    def _norm_residual(self):
        if self.field.order == 1:
            return 0.0
        if self.gauss_fixed is not None:
            bits = self.fixed_bits
            g_re, g_im = self.gauss_fixed
            norms = (g_re[1:] * g_re[1:] + g_im[1:] * g_im[1:]) >> bits
            return float(np.abs(norms - (self.field.q << bits)).max()) * 2.0 ** -bits
        return float(np.max(np.abs(np.abs(self.gauss[1:]) ** 2 - self.field.q)))

    def reflection_residual(self):
        """max |g(m)g(-m) - omega(-1)^m q| over m != 0."""
        order = self.field.order
        if order == 1:
            return 0.0
        m = np.arange(1, order)
        signs = np.where(m % 2 == 0, 1, -1)
        if self.gauss_fixed is not None:
            bits = self.fixed_bits
            g_re, g_im = self.gauss_fixed
            lhs_re, lhs_im = fixed_mul(g_re[m], g_im[m], g_re[(-m) % order], g_im[(-m) % order], bits)
            rhs = signs.astype(object) * (self.field.q << bits)
            worst = max(np.abs(lhs_re - rhs).max(), np.abs(lhs_im).max())
            return float(worst) * 2.0 ** -bits
        lhs = self.gauss[m] * self.gauss[(-m) % order]
        return float(np.max(np.abs(lhs - signs * self.field.q)))


def gauss_table(field, precision=DEFAULT_PRECISION, high_precision=None, additive_scale=1):
    return CharacterSystem(field, precision, high_precision, additive_scale)


@lru_cache(maxsize=16)
def character_system(p, n=1, precision=DEFAULT_PRECISION, high_precision=None):
    """Cached per-process table for sweeps."""
    return CharacterSystem(field_new(p, n), precision, high_precision)


def gauss(cs, m):
    return complex(cs.gauss[int(m) % cs.field.order])


def omega_power(cs, x, m):
    x = cs.field.element(x)
    if x.is_zero():
        raise DomainError("omega is not evaluated at zero")
    return complex(cs.zeta_order[(int(m) * x.log) % cs.field.order])
