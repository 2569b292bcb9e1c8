from fractions import Fraction

from django.conf import settings
from django.test import SimpleTestCase

from hgm.V1.engine.report import CheckReport
from hgm.V1.models import record_from_report
from hgm.V1.serializers import (RECORD_FIELDS, CMRecordSerializer, SweepConfigSerializer,
                                VerificationRecordSerializer)


class SweepConfigSerializerTests(SimpleTestCase):

    def test_grid_defaults(self):
        serializer = SweepConfigSerializer(data={"check": "bcm", "q": [9, 7, 7]})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        data = serializer.validated_data
        self.assertEqual(data["q"], [7, 9])
        self.assertEqual(len(data["t"]), 8)
        self.assertIn(Fraction(81, 256), data["t"])
        self.assertEqual(data["seed"], settings.HGMK3_SEED)
        self.assertEqual(data["precision"], settings.HGMK3_PRECISION)

    def test_prime_range(self):
        serializer = SweepConfigSerializer(data={"check": "main", "pmax": 13, "t": ["2", "5/2"]})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data["t"], [Fraction(2), Fraction(5, 2)])

    def test_rejects_bad_q(self):
        for q in ([15], [8], []):
            serializer = SweepConfigSerializer(data={"check": "bcm", "q": q})
            self.assertFalse(serializer.is_valid(), q)
            self.assertIn("q", serializer.errors)

    def test_grid_needs_exactly_one_range(self):
        self.assertFalse(SweepConfigSerializer(data={"check": "bcm"}).is_valid())
        self.assertFalse(SweepConfigSerializer(data={"check": "bcm", "q": [7], "pmax": 11}).is_valid())
        serializer = SweepConfigSerializer(data={"check": "bcm", "pmin": 11, "pmax": 7})
        self.assertFalse(serializer.is_valid())
        self.assertIn("pmax", serializer.errors)

    def test_rejects_bad_t(self):
        for t in (["0"], ["x"], ["1/0"], []):
            serializer = SweepConfigSerializer(data={"check": "bcm", "q": [7], "t": t})
            self.assertFalse(serializer.is_valid(), t)
            self.assertIn("t", serializer.errors)

    def test_random_checks(self):
        serializer = SweepConfigSerializer(data={"check": "maps", "trials": 5})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data["bits"], 62)
        self.assertFalse(SweepConfigSerializer(data={"check": "maps", "only": "nowhere"}).is_valid())
        self.assertFalse(SweepConfigSerializer(data={"check": "maps", "bits": 20}).is_valid())


class RecordSerializerTests(SimpleTestCase):

    def test_field_order(self):
        record = record_from_report(CheckReport.compare("bcm", Fraction(3), Fraction(3), q=7, t="2"))
        data = VerificationRecordSerializer(record).data
        self.assertEqual(list(data), list(RECORD_FIELDS))
        self.assertEqual(data["schema_version"], "hgmk3/1")
        self.assertIs(data["pass"], True)
        self.assertEqual((data["check"], data["lhs"], data["rhs"]), ("bcm", "3", "3"))

    def test_opt_in_fields(self):
        report = CheckReport.compare("bcm", 1, 2, q=7, t="2", details={"n": 1})
        report.timing = 0.5
        data = VerificationRecordSerializer(record_from_report(report),
                                            context={"include_timing": True, "include_details": True}).data
        self.assertEqual(list(data)[-2:], ["timing", "details"])
        self.assertIs(data["pass"], False)


class CMRecordSerializerTests(SimpleTestCase):

    def test_rational_row_needs_j(self):
        row = {"t": "1", "order": "Z[sqrt(-2)]", "D": 1, "field_m": 1, "ns_block": [-2, 0, -4]}
        self.assertFalse(CMRecordSerializer(data=row, context={"kind": "rational"}).is_valid())
        row["j"] = "8000"
        serializer = CMRecordSerializer(data=row, context={"kind": "rational"})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data["j"], Fraction(8000))

    def test_quadratic_row_needs_discriminant(self):
        row = {"t": "9", "order": "Z[sqrt(-6)]", "D": -3, "field_m": 2, "ns_block": [-4, 0, -6]}
        self.assertFalse(CMRecordSerializer(data=row, context={"kind": "quadratic"}).is_valid())

    def test_rejects_short_block(self):
        row = {"t": "9", "order": "Z[sqrt(-6)]", "D": -3, "field_m": 2, "disc_rk": -24, "ns_block": [-4, 0]}
        self.assertFalse(CMRecordSerializer(data=row, context={"kind": "quadratic"}).is_valid())
