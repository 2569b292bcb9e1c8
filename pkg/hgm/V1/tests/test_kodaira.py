from collections import Counter
from fractions import Fraction

from django.test import SimpleTestCase

from hgm.V1.engine.kodaira import MODELS, kodaira_profile, kodaira_type
from hgm.V1.exceptions import DomainError


class KodairaTypeTests(SimpleTestCase):

    def test_table(self):
        self.assertEqual(kodaira_type(0, 0, 0), "I0")
        self.assertEqual(kodaira_type(0, 0, 4), "I4")
        self.assertEqual(kodaira_type(1, 1, 2), "II")
        self.assertEqual(kodaira_type(1, 2, 3), "III")
        self.assertEqual(kodaira_type(2, 2, 4), "IV")
        self.assertEqual(kodaira_type(2, 3, 6), "I0*")
        self.assertEqual(kodaira_type(2, 3, 8), "I2*")
        self.assertEqual(kodaira_type(3, 4, 8), "IV*")
        self.assertEqual(kodaira_type(3, 5, 9), "III*")
        self.assertEqual(kodaira_type(4, 5, 10), "II*")


class ProfileTests(SimpleTestCase):

    def assertProfile(self, model, t, expected):
        profile = kodaira_profile(model, t)
        self.assertTrue(profile.passed, profile.problems)
        self.assertEqual(profile.euler, 24)
        counts = Counter()
        for row in profile.rows:
            counts[row.type] += row.degree
        self.assertEqual(dict(counts), expected)
        return profile

    def test_family19(self):
        self.assertProfile("family19", 2, {"III*": 2, "I4": 1, "I1": 2})
        self.assertProfile("family19", 1, {"III*": 2, "I4": 1, "I2": 1})

    def test_family19alt(self):
        self.assertProfile("family19alt", Fraction(5, 2), {"III*": 2, "I4": 1, "I1": 2})
        self.assertProfile("family19alt", 1, {"III*": 2, "I4": 1, "I2": 1})

    def test_weier1(self):
        self.assertProfile("weier1", 3, {"I2": 2, "I16": 1, "I1": 4})
        self.assertProfile("weier1", 1, {"I2": 3, "I16": 1, "I1": 2})

    def test_inose(self):
        self.assertProfile("inose", 2, {"II*": 2, "I1": 4})
        self.assertProfile("inose", 1, {"II*": 2, "I2": 1, "I1": 2})
        self.assertProfile("inose", Fraction(81, 256), {"II*": 2, "I2": 1, "I1": 2})
        self.assertProfile("inose", Fraction(-9, 16), {"II*": 2, "II": 2})

    def test_iv_star(self):
        self.assertProfile("iv_star", 2, {"IV*": 1, "I12": 1, "I1": 4})

    def test_report(self):
        report = kodaira_profile("family19", 2).report()
        self.assertEqual((report.check, report.map_name, report.lhs, report.rhs), ("fibration", "family19", "24", "24"))
        self.assertTrue(report.details["fibres"])

    def test_rejected_inputs(self):
        with self.assertRaises(DomainError):
            kodaira_profile("nowhere", 2)
        with self.assertRaises(DomainError):
            kodaira_profile("family19", 0)
        self.assertEqual(set(MODELS), {"family19", "family19alt", "weier1", "inose", "iv_star"})
