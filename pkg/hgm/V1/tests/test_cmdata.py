import json
import os
import tempfile
from fractions import Fraction

from django.test import SimpleTestCase

from hgm.V1.engine import cmdata
from hgm.V1.exceptions import DatumError, DomainError


class TablesTests(SimpleTestCase):

    def test_fixture_loads(self):
        tables = cmdata.load_tables()
        self.assertEqual(len(tables.rational), 5)
        self.assertEqual(len(tables.quadratic), 10)
        self.assertEqual(len(tables.rational_cm_j), 13)
        self.assertEqual(tables.row_for("81/256")["field_m"], -7)
        self.assertIsNone(tables.row_for(2))

    def test_invalid_fixture(self):
        handle, path = tempfile.mkstemp(suffix=".json")
        self.addCleanup(os.remove, path)
        with os.fdopen(handle, "w") as out:
            json.dump({"version": 1, "rational_cm_j": ["0"], "rational": [], "quadratic": []}, out)
        with self.assertRaises(DatumError):
            cmdata.load_tables(path)


class ClassifyTests(SimpleTestCase):

    def test_classify(self):
        self.assertEqual(cmdata.classify_t(1), cmdata.CM_RATIONAL_J)
        self.assertEqual(cmdata.classify_t(Fraction(-9, 16)), cmdata.CM_RATIONAL_J)
        self.assertEqual(cmdata.classify_t(9), cmdata.CM_QUADRATIC_J)
        self.assertEqual(cmdata.classify_t(2), cmdata.GENERIC)
        with self.assertRaises(DomainError):
            cmdata.classify_t(0)

    def test_squarefree_part(self):
        self.assertEqual(cmdata.squarefree_part(72), 2)
        self.assertEqual(cmdata.squarefree_part(2401 * 2400), 6)
        self.assertEqual(cmdata.squarefree_part(Fraction(-7, 4)), -7)
        with self.assertRaises(DomainError):
            cmdata.squarefree_part(0)

    def test_field_of_S(self):
        self.assertEqual(cmdata.field_of_S(1), 1)
        self.assertEqual(cmdata.field_of_S(9), 2)
        self.assertEqual(cmdata.field_of_S(Fraction(81, 256)), -7)


class VerifyTests(SimpleTestCase):

    def test_rational_rows(self):
        reports = cmdata.verify_rational_cm()
        self.assertEqual(len(reports), 5)
        self.assertTrue(all(r.passed for r in reports), [r.details for r in reports if not r.passed])

    def test_quadratic_rows(self):
        reports = cmdata.verify_quadratic_cm()
        self.assertEqual(len(reports), 10)
        self.assertTrue(all(r.passed for r in reports), [r.details for r in reports if not r.passed])
        self.assertEqual({r.check for r in reports}, {"cm-quadratic"})


class SurveyTests(SimpleTestCase):

    def test_survey_rows(self):
        rows = cmdata.cm_trace_survey(Fraction(81, 32), 40)
        self.assertTrue(rows)
        for row in rows:
            self.assertGreaterEqual(row.p, 5)
            self.assertEqual(row.a_E1_squared, row.a_E1 ** 2)
            self.assertIn(row.kronecker, (-1, 0, 1))
            self.assertEqual(set(row.as_json()), {"p", "S", "T", "a_E1", "a_E1_squared", "kronecker", "note"})

    def test_survey_at_t1(self):
        rows = cmdata.cm_trace_survey(1, 20)
        self.assertTrue(rows)
        self.assertTrue(all(row.T is None and row.note == "t≡1" for row in rows))

    def test_survey_rejects_generic_t(self):
        with self.assertRaises(DomainError):
            cmdata.cm_trace_survey(2, 30)
