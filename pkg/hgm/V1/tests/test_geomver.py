from fractions import Fraction
from unittest import mock

from django.test import SimpleTestCase
from sympy import Rational, sin, symbols

from hgm.V1.engine import catalog, geomver
from hgm.V1.engine.ffield import field_new
from hgm.V1.exceptions import ConfigurationError, DomainError

FAST = {"trials": 5, "prime_bits": 40, "seed": 7}


class CompiledRationalTests(SimpleTestCase):

    def test_evaluation(self):
        x, y = symbols("x y")
        expr = geomver.CompiledRational((x ** 2 + Rational(1, 2)) / (y - 1), (x, y))
        self.assertEqual(expr.exact([Fraction(1), Fraction(3)]), Fraction(3, 4))
        self.assertEqual(expr.mod_p([1, 3], 7), (3 * pow(4, -1, 7)) % 7)
        self.assertIsNone(expr.mod_p([1, 1], 7))
        self.assertEqual(expr.degree, 3)

    def test_non_rational_expression(self):
        x = symbols("x")
        with self.assertRaises(ConfigurationError):
            geomver.CompiledRational(sin(x), (x,))


class MapCatalogTests(SimpleTestCase):

    def tearDown(self):
        geomver.compiled_map.cache_clear()

    def test_every_catalog_entry(self):
        for report in geomver.verify_maps(**FAST):
            self.assertTrue(report.passed, report)
            self.assertEqual(report.lhs, "5")

    def test_psi_chain_composite(self):
        reports = geomver.verify_chain_psi(**FAST)
        self.assertEqual(len(reports), len(catalog.PSI_CHAIN) + 1)
        self.assertEqual(reports[-1].variant, "composite")
        self.assertTrue(all(r.passed for r in reports))

    def test_report_is_reproducible(self):
        first = geomver.verify_map("can1->weier1", **FAST)
        second = geomver.verify_map("can1->weier1", **FAST)
        self.assertEqual(first.details, second.details)

    def test_wrong_map_is_caught(self):
        x, y, X, Y = catalog.x, catalog.y, catalog.X, catalog.Y
        broken = catalog.RationalMap(
            "broken", "shifted x", (x, y), (y ** 2 - x ** 3 - 1,), y,
            ((X, x + 1), (Y, y)), (Y ** 2 - X ** 3 - 1,))
        with mock.patch.dict(catalog.CATALOG, {"broken": broken}):
            report = geomver.verify_map("broken", **FAST)
        self.assertFalse(report.passed)
        self.assertIn("witness", report.details)

    def test_unknown_map_and_bad_parameters(self):
        with self.assertRaises(DomainError):
            geomver.verify_map("nowhere")
        with self.assertRaises(DomainError):
            geomver.verify_map("identity", trials=0)
        with self.assertRaises(DomainError):
            geomver.verify_map("identity", prime_bits=16)

    def test_symbolic_residuals_vanish(self):
        for name in catalog.QT_MAPS + catalog.X0_2_MAPS:
            self.assertEqual(geomver.symbolic_residual(name), [0])


class ShiodaInoseTests(SimpleTestCase):

    def test_h_equals_one(self):
        self.assertEqual(geomver.si_values(1), geomver.SI_AT_ONE)
        self.assertFalse(any(geomver.si_residuals(1)))

    def test_parameter_reports(self):
        reports = geomver.verify_si_parameters(**FAST)
        self.assertEqual([r.variant for r in reports][:2], ["h=1", "random-rationals"])
        self.assertTrue(all(r.passed for r in reports), reports)

    def test_h_must_be_nonzero(self):
        with self.assertRaises(DomainError):
            geomver.si_values(0)


class JInvariantTests(SimpleTestCase):

    def test_rational_pairs(self):
        self.assertEqual(geomver.j_invariants_pair(1).rational_values(), (8000, 8000))
        self.assertEqual(geomver.j_invariants_pair(Fraction(-9, 16)).rational_values(), (0, 54000))
        self.assertEqual(geomver.j_invariants_pair(Fraction(81, 32)).rational_values(), (1728, 287496))
        self.assertIsNone(geomver.j_invariants_pair(9).rational_values())
        with self.assertRaises(DomainError):
            geomver.j_invariants_pair(0)

    def test_match_in_f7(self):
        field = field_new(7)
        report = geomver.j_match_check(field, 2, 2)
        self.assertTrue(report.passed, report)
        self.assertTrue(geomver.j_pair_symmetric(field, 2, 2))

    def test_match_over_the_rationals(self):
        report = geomver.j_match_check(None, Fraction(-1, 3), 2)
        self.assertTrue(report.passed, report)

    def test_random_matches(self):
        report = geomver.j_match_sample(trials=200, seed=3)
        self.assertTrue(report.passed, report)
        self.assertGreater(int(report.lhs), 100)

    def test_twist(self):
        self.assertTrue(geomver.verify_twist_relation(Fraction(-1, 3), 2).passed)
        self.assertTrue(geomver.verify_twist_relation(2, 2, field=field_new(7)).passed)


class X02Tests(SimpleTestCase):

    def test_special_values(self):
        self.assertEqual(geomver.j_of_u(-256), 0)
        self.assertEqual(geomver.j_of_u(64), 8000)
        self.assertEqual(geomver.j_of_ab(4, 2), 8000)
        self.assertEqual(geomver.s_t_from_ab(1, 1), (Fraction(7), Fraction(-1, 48)))
        with self.assertRaises(DomainError):
            geomver.s_t_from_ab(2, 1)

    def test_checks(self):
        reports = geomver.x0_2_checks(**FAST)
        self.assertTrue(all(r.passed for r in reports), reports)
        self.assertTrue(reports[-1].skipped)
        self.assertIn("degenerate", reports[-1].reason)

    def test_ab_point_check_computes_generic_points(self):
        for a, b in ((1, 1), (3, 1), (Fraction(1, 2), 5), (-4, 3)):
            report = geomver.ab_point_check(a, b)
            self.assertTrue(report.passed, report)
            self.assertFalse(report.skipped)
        self.assertEqual(geomver.ab_point_check(3, 1).details["s"], "-1/9")

    def test_ab_point_check_skips_what_s_t_from_ab_rejects(self):
        for a, b in ((2, 1), (0, 1), (1, 0), (-6, 9)):
            report = geomver.ab_point_check(a, b)
            self.assertTrue(report.skipped, (a, b))
            self.assertIn("degenerate", report.reason)

    def test_ab_point_check_reports_a_broken_parametrization(self):
        with mock.patch.object(geomver, "s_t_from_ab", return_value=(Fraction(1), Fraction(3))):
            report = geomver.ab_point_check(1, 1)
        self.assertFalse(report.passed)
        self.assertFalse(report.skipped)

    def test_section_on_inose_model(self):
        self.assertTrue(all(r.passed for r in geomver.verify_qt_on_curve(**FAST)))
