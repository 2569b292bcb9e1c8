import json
from io import StringIO
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from hgm.V1.engine.report import CheckReport
from hgm.V1.models import SweepRun
from hgm.V1.serializers import RECORD_FIELDS


def run(*args):
    out, err = StringIO(), StringIO()
    call_command(*args, stdout=out, stderr=err)
    return out.getvalue()


def json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


class InfoCommandTests(SimpleTestCase):

    def test_field_info(self):
        payload = json.loads(run("field_info", "--q", "7", "--element", "2"))
        self.assertEqual((payload["q"], payload["p"], payload["n"]), (7, 7, 1))
        self.assertEqual(payload["element"]["dlog"], 2)
        self.assertTrue(payload["element"]["is_square"])

    def test_field_info_rejects_even_q(self):
        with self.assertRaises(CommandError) as ctx:
            run("field_info", "--q", "8")
        self.assertEqual(ctx.exception.returncode, 2)

    def test_curve_count(self):
        payload = json.loads(run("curve", "count", "--q", "5", "--a4", "1", "--extension", "2"))
        self.assertEqual(payload["points"], 4)
        self.assertEqual(payload["trace"], 2)

    def test_count_surface(self):
        payload = json.loads(run("count", "surface", "--q", "7", "--t", "2"))
        self.assertEqual(payload["surface"], 180)

    def test_hgsum(self):
        payload = json.loads(run("hgsum", "--alpha", "1/4,1/2,3/4", "--beta", "0,0,0", "--q", "7", "--t", "4"))
        self.assertEqual(payload["rounded"], "-3")
        self.assertEqual(payload["q"], 7)

    def test_field_given_as_p_and_n(self):
        by_q = json.loads(run("hgsum", "--alpha", "1/4,1/2,3/4", "--beta", "0,0,0", "--q", "9", "--t", "2"))
        by_pn = json.loads(run("hgsum", "--alpha", "1/4,1/2,3/4", "--beta", "0,0,0", "--p", "3", "--n", "2",
                               "--t", "2"))
        self.assertEqual(by_pn, by_q)
        self.assertEqual(json.loads(run("curve", "count", "--p", "5", "--a4", "1"))["points"], 4)
        self.assertEqual(json.loads(run("curve", "count", "--p", "3", "--n", "2", "--a4", "1")),
                         json.loads(run("curve", "count", "--q", "9", "--a4", "1")))
        self.assertEqual(json.loads(run("count", "surface", "--p", "7", "--t", "2"))["surface"], 180)
        self.assertEqual(json.loads(run("field_info", "--p", "3", "--n", "3"))["q"], 27)

    def test_field_arguments_are_exclusive(self):
        for args in (("curve", "count"), ("curve", "count", "--q", "5", "--p", "5"),
                     ("hgsum", "--alpha", "1/4,1/2,3/4", "--beta", "0,0,0", "--t", "2"),
                     ("curve", "count", "--p", "9", "--a4", "1")):
            with self.assertRaises(CommandError) as ctx:
                run(*args)
            self.assertEqual(ctx.exception.returncode, 2, args)

    def test_report_schema(self):
        schema = json.loads(run("report_schema"))
        self.assertEqual(schema["csv_header"], list(RECORD_FIELDS))
        self.assertEqual(schema["field_order"][-1], "timing")


class VerifyCommandTests(SimpleTestCase):

    def test_bcm_passes(self):
        records = json_lines(run("verify", "bcm", "--q", "7", "--t", "2"))
        self.assertTrue(records)
        self.assertTrue(all(r["pass"] for r in records))
        self.assertEqual(list(records[0]), list(RECORD_FIELDS))
        self.assertEqual((records[0]["q"], records[0]["t"]), (7, "2"))

    def test_parallel_sweep_matches_serial(self):
        args = ("verify", "bcm", "--q", "5,7,11", "--t", "2,3,1/2")
        serial = run(*args, "--jobs", "1")
        self.assertEqual(run(*args, "--jobs", "2"), serial)
        self.assertEqual(run(*args, "--jobs", "1"), serial)
        csv_args = args + ("--format", "csv")
        self.assertEqual(run(*csv_args, "--jobs", "2"), run(*csv_args, "--jobs", "1"))
        self.assertEqual(run(*csv_args, "--jobs", "2"), run(*csv_args, "--jobs", "2"))

    def test_timing_column(self):
        records = json_lines(run("verify", "lemma", "--q", "7", "--t", "2", "--timing"))
        self.assertIn("timing", records[0])

    def test_csv_header(self):
        text = run("verify", "conic", "--q", "5,7", "--t", "2", "--format", "csv")
        lines = text.splitlines()
        self.assertEqual(lines[0], ",".join(RECORD_FIELDS))
        self.assertEqual(len(lines), 3)

    def test_gauss_check(self):
        records = json_lines(run("gauss_check", "--q", "3,5,9"))
        self.assertEqual([r["q"] for r in records], [3, 5, 9])
        self.assertTrue(all(r["pass"] for r in records))

    def test_empty_t_is_a_usage_error(self):
        with self.assertRaises(CommandError) as ctx:
            run("verify", "bcm", "--q", "7", "--t", "")
        self.assertEqual(ctx.exception.returncode, 2)

    def test_failure_exit_code(self):
        failing = [CheckReport(check="bcm", passed=False, q=7, t="2", lhs="1", rhs="2")]
        with mock.patch("hgm.V1.management.commands.verify.run_sweep", return_value=failing):
            with self.assertRaises(CommandError) as ctx:
                run("verify", "bcm", "--q", "7", "--t", "2")
        self.assertEqual(ctx.exception.returncode, 1)

    def test_random_check(self):
        records = json_lines(run("verify", "qt", "--trials", "3", "--bits", "40", "--seed", "1"))
        self.assertTrue(all(r["pass"] for r in records))


class StructureCommandTests(SimpleTestCase):

    def test_lattice_ns_generic(self):
        records = json_lines(run("lattice", "ns-generic"))
        self.assertEqual(len(records), 7)
        self.assertTrue(all(r["pass"] for r in records))

    def test_lattice_cm_single_profile(self):
        records = json_lines(run("lattice", "cm", "--pe7", "1", "--pg2", "1", "--po", "0"))
        self.assertEqual(len(records), 1)
        self.assertEqual(records[0]["variant"], "L1,p_O=0")

    def test_lattice_cm_blocks(self):
        records = json_lines(run("lattice", "cm-blocks"))
        self.assertEqual(len(records), 15)

    def test_cm_classify(self):
        rows = json_lines(run("cm", "classify", "--t", "1,9,2"))
        self.assertEqual([r["class"] for r in rows], ["cm_rational_j", "cm_quadratic_j", "generic"])
        self.assertEqual(rows[1]["field_m"], 2)

    def test_cm_survey_rejects_generic_t(self):
        with self.assertRaises(CommandError) as ctx:
            run("cm", "survey", "--t", "2", "--pmax", "20")
        self.assertEqual(ctx.exception.returncode, 2)

    def test_fibration_profile(self):
        records = json_lines(run("fibration", "profile", "--model", "inose", "--t", "2,1"))
        self.assertEqual(len(records), 2)
        self.assertTrue(all(r["pass"] for r in records))
        self.assertIn("details", records[0])


class SaveSweepTests(TestCase):

    def test_save_persists_run(self):
        records = json_lines(run("verify", "bcm", "--q", "5,7", "--t", "2", "--save"))
        sweep = SweepRun.objects.get()
        self.assertEqual(sweep.check_name, "bcm")
        self.assertEqual(sweep.total, len(records))
        self.assertEqual(sweep.records.count(), len(records))
        self.assertTrue(sweep.passed)
        self.assertEqual(sweep.records.failures().count(), 0)
        self.assertEqual(sweep.records.for_check("bcm").count(), len(records))

    def test_manager_records_a_report(self):
        sweep = SweepRun.objects.create(command="verify", check_name="conic", seed=1)
        record = sweep.records.model.objects.create_from_report(
            sweep, CheckReport(check="conic", passed=False, q=5, t="2", lhs="4", rhs="6"))
        self.assertEqual(list(sweep.records.failures()), [record])
        self.assertEqual(sweep.records.for_check("bcm").count(), 0)
