import math
from fractions import Fraction

from django.test import SimpleTestCase

from hgm.V1.engine.charsum import CharacterSystem, character_system
from hgm.V1.engine.ffield import field_new, next_generator
from hgm.V1.engine.hyperg import (CURVE_DATUM, MAIN_DATUM, bcm_gauss_sum, datum_from_parameters, h2_direct,
                                  h3_direct, hg_H2, hg_H3, hg_sum)
from hgm.V1.exceptions import DatumError, DomainError


class DatumTests(SimpleTestCase):

    def test_main_datum(self):
        self.assertEqual(MAIN_DATUM.p_list, (4,))
        self.assertEqual(MAIN_DATUM.q_list, (1, 1, 1, 1))
        self.assertEqual(MAIN_DATUM.M, 256)
        self.assertEqual(MAIN_DATUM.epsilon, 1)

    def test_curve_datum(self):
        self.assertEqual(sorted(CURVE_DATUM.p_list), [1, 6])
        self.assertEqual(sorted(CURVE_DATUM.q_list), [3, 4])
        self.assertEqual(CURVE_DATUM.M, Fraction(27, 4))
        self.assertEqual(CURVE_DATUM.epsilon, -1)

    def test_parameters_are_reduced_mod_one(self):
        self.assertEqual(datum_from_parameters(["5/4", "1/2", "-1/4"], [0, 1, 2]), MAIN_DATUM)

    def test_rejected_data(self):
        with self.assertRaises(DatumError):
            datum_from_parameters(["1/3"], [0])
        with self.assertRaises(DatumError):
            datum_from_parameters(["1/2", "0"], [0, 0])
        with self.assertRaises(DatumError):
            datum_from_parameters(["1/2"], [0, 0])


class SumTests(SimpleTestCase):

    def test_h3_value(self):
        self.assertEqual(hg_H3(character_system(7), 4), -3)

    def test_h2_values(self):
        cs = character_system(5)
        self.assertEqual(hg_H2(cs, 3), Fraction(-2, 5))
        self.assertEqual(hg_H2(cs, 2), Fraction(-3, 5))

    def test_h2_needs_q_prime_to_six(self):
        with self.assertRaises(DomainError):
            hg_H2(character_system(3, 2), 2)

    def test_written_out_sums_agree(self):
        for p in (7, 11, 13):
            cs = character_system(p)
            for t in range(1, p):
                self.assertAlmostEqual(h3_direct(cs, t).real, hg_H3(cs, t), places=6)
                self.assertAlmostEqual(h2_direct(cs, t).real, float(hg_H2(cs, t)), places=6)

    def test_extension_field_sum_is_integral(self):
        result = hg_sum(MAIN_DATUM, character_system(3, 2), 2)
        self.assertEqual(result.rounded.denominator, 1)
        self.assertLess(result.residual, 1e-6)

    def test_zero_argument(self):
        with self.assertRaises(DomainError):
            hg_sum(MAIN_DATUM, character_system(7), 0)


class CharacterChoiceTests(SimpleTestCase):

    FIELDS = ((7, 1), (13, 1), (5, 2), (7, 2))

    def assert_same_sums(self, cs0, cs1):
        q = cs0.field.q
        for t in range(1, min(q, 9)):
            if t % cs0.field.p == 0:
                continue
            self.assertEqual(hg_H3(cs0, t), hg_H3(cs1, t), (q, t))
            if math.gcd(q, 6) == 1:
                self.assertEqual(hg_H2(cs0, t), hg_H2(cs1, t), (q, t))
            self.assertAlmostEqual(abs(bcm_gauss_sum(cs0, t) - bcm_gauss_sum(cs1, t)), 0.0, delta=1e-6 * q ** 3)

    def test_sums_do_not_depend_on_the_generator(self):
        for p, n in self.FIELDS:
            base = field_new(p, n)
            other = field_new(p, n, generator=next_generator(base))
            self.assertNotEqual(other.generator, base.generator)
            self.assert_same_sums(CharacterSystem(base), CharacterSystem(other))

    def test_sums_do_not_depend_on_the_additive_character(self):
        for p, n in self.FIELDS:
            field = field_new(p, n)
            for a in (2, 3):
                self.assert_same_sums(CharacterSystem(field), CharacterSystem(field, additive_scale=a))


class HighPrecisionSumTests(SimpleTestCase):

    def test_high_precision_values(self):
        self.assertEqual(hg_H3(CharacterSystem(field_new(7), high_precision=True), 4), -3)
        cs = CharacterSystem(field_new(5), high_precision=True)
        self.assertEqual(hg_H2(cs, 3), Fraction(-2, 5))
        self.assertEqual(hg_H2(cs, 2), Fraction(-3, 5))

    def test_high_precision_matches_fp64(self):
        for p, n in ((13, 1), (3, 2), (23, 1)):
            fast = CharacterSystem(field_new(p, n))
            slow = CharacterSystem(field_new(p, n), high_precision=True)
            for t in range(1, min(fast.field.q, 8)):
                if t % p == 0:
                    continue
                a, b = hg_sum(MAIN_DATUM, fast, t), hg_sum(MAIN_DATUM, slow, t)
                self.assertEqual(a.rounded, b.rounded)
                self.assertAlmostEqual(abs(a.value - b.value), 0.0, places=8)
                self.assertLess(b.residual, 1e-9)
