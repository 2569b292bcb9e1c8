from fractions import Fraction

from django.test import SimpleTestCase

from hgm.V1.engine.charsum import character_system
from hgm.V1.engine.ffield import field_new
from hgm.V1.engine.k3count import (conic_count, count_affine, count_elliptic_surface, count_report,
                                   delta_closed_form, surface_bookkeeping, trace_transcendental,
                                   verify_bcm_identity, verify_conic_count, verify_main_identity,
                                   verify_point_count_lemma, verify_sym2_relation, verify_trace_corollary)
from hgm.V1.exceptions import DomainError, UnsupportedConfigurationError

GRID_T = [Fraction(2), Fraction(3), Fraction(5, 2), Fraction(-1), Fraction(7), Fraction(81, 256),
          Fraction(-9, 16), Fraction(10)]


class CountTests(SimpleTestCase):

    def setUp(self):
        self.f7 = field_new(7)

    def test_counts_at_q7_t2(self):
        self.assertEqual(count_affine(self.f7, 2), 28)
        self.assertEqual(count_affine(self.f7, 2, mode="naive"), 28)
        total, fibers = count_elliptic_surface(self.f7, 2)
        self.assertEqual(total, 180)
        self.assertEqual(trace_transcendental(self.f7, 2), -3)
        by_place = {f["place"]: f["count"] for f in fibers}
        self.assertEqual(by_place["1"], 57)
        self.assertEqual(by_place["-1"], 57)
        self.assertEqual(by_place["0"], 28)

    def test_counting_modes_agree(self):
        for p, n in ((5, 1), (11, 1), (3, 2)):
            field = field_new(p, n)
            for t in (2, 3, -1):
                self.assertEqual(count_affine(field, t), count_affine(field, t, mode="naive"))
        with self.assertRaises(DomainError):
            count_affine(self.f7, 2, mode="cubic")

    def test_count_report(self):
        report = count_report(self.f7, "2").as_json()
        self.assertEqual((report["affine"], report["surface"], report["trace"]), (28, 180, -3))
        self.assertEqual(count_report(self.f7, "2", method="naive").as_json()["affine"], 28)

    def test_t_one_is_unsupported_by_the_fibred_counter(self):
        with self.assertRaises(UnsupportedConfigurationError):
            count_elliptic_surface(self.f7, 8)

    def test_conic(self):
        for t in (1, 2, 3, 6):
            self.assertTrue(verify_conic_count(self.f7, t).passed)
        self.assertEqual(conic_count(self.f7, 1), 8)
        self.assertTrue(verify_conic_count(self.f7, 7).skipped)


class IdentityTests(SimpleTestCase):

    def test_spot_values(self):
        cs = character_system(7)
        self.assertTrue(verify_point_count_lemma(cs.field, 2).passed)
        self.assertTrue(verify_bcm_identity(cs, 2).passed)
        trace = verify_trace_corollary(cs, 2)
        self.assertTrue(trace.passed)
        self.assertEqual(trace.lhs, "-3")
        main = verify_main_identity(cs, 2)
        self.assertTrue(main)
        for report in main:
            self.assertTrue(report.passed or report.skipped, report)
        self.assertTrue(any(r.variant.startswith("S=2") and r.lhs == "-3" for r in main))
        self.assertTrue(verify_sym2_relation(cs.field, 2).passed)

    def test_grid(self):
        for p, n in ((5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (5, 2)):
            cs = character_system(p, n)
            for t in GRID_T:
                self.assertTrue(verify_bcm_identity(cs, t).passed or verify_bcm_identity(cs, t).skipped)
                lemma = verify_point_count_lemma(cs.field, t)
                self.assertTrue(lemma.passed, lemma)
                corollary = verify_trace_corollary(cs, t)
                self.assertTrue(corollary.passed, corollary)
                for report in verify_main_identity(cs, t):
                    self.assertTrue(report.passed, report)
                self.assertTrue(surface_bookkeeping(cs.field, t).passed)

    def test_skip_reasons(self):
        cs = character_system(7)
        self.assertEqual(verify_point_count_lemma(cs.field, 7).reason, "bad reduction")
        self.assertEqual(verify_point_count_lemma(cs.field, Fraction(1, 7)).reason, "bad reduction")
        self.assertEqual(verify_point_count_lemma(cs.field, 8).reason, "t≡1")
        self.assertFalse(verify_bcm_identity(cs, 8).skipped)
        self.assertEqual(verify_main_identity(character_system(3, 2), 2)[0].reason, "q|6")

    def test_delta_forms(self):
        field = field_new(7)
        t = field.element(2)
        # s^2 = t/(t-1) = 2 is a square mod 7
        # -2 = 5 is not, so delta(-2, -2) = 0
        self.assertEqual(delta_closed_form(field, t), -2 * 7 + 4 + 2 * 7 + 4)
        self.assertTrue(surface_bookkeeping(field, 2).passed)
