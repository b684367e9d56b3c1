"""
Tests for the grl management command
"""

import json
import tempfile
from io import StringIO
from pathlib import Path

import openpyxl
from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from audit.models import RunLog
from toolkit.reports import EXIT_BUDGET, EXIT_CONDITION_FAILS, EXIT_USAGE
from toolkit.specfiles import load_spec

SAMPLES = Path(settings.BASE_DIR) / "samples"


def sample(name):
    return str(SAMPLES / name)


class GrlCommandMixin:
    def run_grl(self, *args):
        out, err = StringIO(), StringIO()
        call_command("grl", *args, stdout=out, stderr=err)
        return out.getvalue(), err.getvalue()

    def run_grl_failing(self, *args):
        out, err = StringIO(), StringIO()
        with self.assertRaises(CommandError) as cm:
            call_command("grl", *args, stdout=out, stderr=err)
        return cm.exception.returncode, out.getvalue()


class BuildAndCheckTestCase(GrlCommandMixin, SimpleTestCase):
    """Test build and check"""

    def test_build_json(self):
        """Test the report carries the spec and generator"""
        out, _ = self.run_grl("build", sample("gf11_mds.json"), "--parity", "--json")
        data = json.loads(out)
        self.assertEqual(data["command"], "build")
        self.assertEqual(data["exit_status"], 0)
        self.assertEqual(data["results"]["generator"][1], [0, 1, 2, 4, 5, 1, 8, 1])
        self.assertEqual(len(data["results"]["parity_check"]), 4)

    def test_build_human(self):
        """Test the human-readable generator heading"""
        out, _ = self.run_grl("build", sample("gf11_mds.json"))
        self.assertIn("Generator (4 x 8) over GF(11)", out)

    def test_check_mds_holds(self):
        """Test the GF(11) example passes the MDS criterion"""
        out, _ = self.run_grl("check", sample("gf11_mds.json"), "mds", "--json")
        self.assertTrue(json.loads(out)["results"]["report"]["holds"])

    def test_check_amds_dual_fails_on_mds_code(self):
        """Test exit status 1 when the criterion fails"""
        status, out = self.run_grl_failing("check", sample("gf11_mds.json"), "amds-dual", "--json")
        self.assertEqual(status, EXIT_CONDITION_FAILS)
        self.assertEqual(json.loads(out)["exit_status"], EXIT_CONDITION_FAILS)

    def test_check_amds_dual_example(self):
        """Test the GF(7) example passes the dual-AMDS criterion"""
        out, _ = self.run_grl("check", sample("gf7_amds_dual.json"), "amds-dual")
        self.assertIn("holds", out)

    def test_self_dual_exact_instance(self):
        """Test the exact GF(13) spec is self-dual with lambda 9"""
        out, _ = self.run_grl("check", sample("gf13_selfdual.json"), "self-dual", "--json")
        self.assertEqual(json.loads(out)["results"]["lambda"], 9)

    def test_self_dual_published_parameters(self):
        """Test the published parameters fail exactly and pass the printed system"""
        status, _ = self.run_grl_failing("check", sample("gf13_selfdual_published.json"), "self-dual")
        self.assertEqual(status, EXIT_CONDITION_FAILS)
        out, _ = self.run_grl(
            "check", sample("gf13_selfdual_published.json"), "self-dual", "--convention", "printed", "--json"
        )
        self.assertEqual(json.loads(out)["results"]["lambda"], 3)

    def test_check_xlsx(self):
        """Test --xlsx writes the condition tables"""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "check.xlsx"
            self.run_grl("check", sample("gf7_amds_dual.json"), "amds-dual", "--xlsx", str(path))
            self.assertEqual(openpyxl.load_workbook(path).sheetnames, ["conditions", "details"])

    def test_invalid_spec(self):
        """Test validation errors exit with status 2"""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "bad.json"
            path.write_text(json.dumps({"field": {"p": 11}, "alpha": ["0", "0"], "A": [["1"]], "k": 1}))
            status, out = self.run_grl_failing("check", str(path), "mds", "--json")
        self.assertEqual(status, EXIT_USAGE)
        self.assertIn("alpha entries must be distinct", json.loads(out)["results"]["error"])


class AnalyzeTestCase(GrlCommandMixin, SimpleTestCase):
    """Test analyze"""

    def test_matrix_file(self):
        """Test the GF(8) GRL matrix is a [7,3,4] NMDS code"""
        out, _ = self.run_grl("analyze", "--matrix", sample("gf8_grl_nmds.txt"))
        self.assertIn("[7,3,4] NMDS", out)

    def test_spec_file_json(self):
        """Test the GF(11) example is MDS with a non-GRS certificate"""
        out, _ = self.run_grl("analyze", sample("gf11_mds.json"), "--json")
        analysis = json.loads(out)["results"]["analysis"]
        self.assertEqual(analysis["classification"]["kind"], "MDS")
        self.assertEqual(analysis["schur"], {"certified": True, "schur_dim": 8, "threshold": 7})

    def test_budget_exceeded(self):
        """Test a tiny budget exits with status 3"""
        status, out = self.run_grl_failing("analyze", sample("gf11_mds.json"), "--budget", "5", "--json")
        self.assertEqual(status, EXIT_BUDGET)
        self.assertIn("error", json.loads(out)["results"])

    def test_nothing_to_analyze(self):
        """Test analyze without input is a usage error"""
        status, _ = self.run_grl_failing("analyze")
        self.assertEqual(status, EXIT_USAGE)


class SolveAndSearchTestCase(GrlCommandMixin, SimpleTestCase):
    """Test solve-self-dual, search and field-info"""

    def test_solve_exact(self):
        """Test the exact GF(13) solution and the written spec"""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "sd.json"
            out, _ = self.run_grl("solve-self-dual", "13", "1", "2", "5", "8", "9", "--out", str(path), "--json")
            solution = json.loads(out)["results"]["attempt"]["solution"]
            self.assertEqual((solution["lambda"], solution["mu"], solution["delta"], solution["tau"]), (9, 4, 9, 3))
            self.assertEqual(load_spec(path), load_spec(SAMPLES / "gf13_selfdual.json"))

    def test_solve_failure(self):
        """Test a failing system names its stage"""
        status, out = self.run_grl_failing(
            "solve-self-dual", "13", "1", "2", "3", "4", "5", "--convention", "printed", "--json"
        )
        self.assertEqual(status, EXIT_CONDITION_FAILS)
        self.assertEqual(json.loads(out)["results"]["attempt"]["stage"], "delta")

    def test_search_printed(self):
        """Test hits are JSON lines and the footer goes to stderr"""
        out, err = self.run_grl("search", sample("search_selfdual_gf13_printed.json"))
        hits = [json.loads(line) for line in out.splitlines() if line.strip()]
        self.assertIn([1, 4, 5, 6, 9], [h["alpha"] for h in hits])
        self.assertIn("hit(s)", err)

    def test_search_estimate(self):
        """Test --estimate prints the cost only"""
        out, _ = self.run_grl("search", sample("search_mds_gf11.json"), "--estimate")
        cost = json.loads(out)
        self.assertEqual(cost["candidate_count"], 462)

    def test_field_info(self):
        """Test GF(8) presentation details"""
        out, _ = self.run_grl("field-info", "2", "--m", "3", "--json")
        results = json.loads(out)["results"]
        self.assertEqual((results["q"], results["generator"]), (8, 2))

    def test_reducible_modulus(self):
        """Test a reducible modulus is a usage error"""
        status, _ = self.run_grl_failing("field-info", "2", "--m", "2", "--modulus", "1", "0", "1")
        self.assertEqual(status, EXIT_USAGE)


class VerifyPaperTestCase(GrlCommandMixin, SimpleTestCase):
    """Test the reproduction suite through the command"""

    def test_suite_passes(self):
        """Test verify-paper exits 0 with no FAIL rows"""
        out, _ = self.run_grl("verify-paper", "--json")
        data = json.loads(out)
        self.assertEqual(data["exit_status"], 0)
        self.assertTrue(data["results"]["passed"])
        rows = data["results"]["rows"]
        self.assertEqual([r["label"] for r in rows if r["status"] == "FAIL"], [])
        self.assertIn("Table 1 J={0,1,2}: e2=2", [r["label"] for r in rows])


class RecordTestCase(GrlCommandMixin, TestCase):
    """Test the audit log integration"""

    def test_record_and_history(self):
        """Test --record stores the run and history lists it"""
        self.run_grl("build", sample("gf11_mds.json"), "--record")
        self.run_grl_failing("check", sample("gf11_mds.json"), "amds-dual", "--record")
        self.assertEqual(RunLog.objects.count(), 2)
        latest = RunLog.objects.first()
        self.assertEqual((latest.command, latest.exit_status), ("check", EXIT_CONDITION_FAILS))
        self.assertEqual(latest.report["command"], "check")

        out, _ = self.run_grl("history", "--json")
        runs = json.loads(out)["results"]["runs"]
        self.assertEqual([r["command"] for r in runs], ["check", "build"])
        self.assertEqual(RunLog.objects.count(), 2)

    def test_no_record_by_default(self):
        """Test runs are not stored without --record"""
        self.run_grl("build", sample("gf11_mds.json"))
        self.assertFalse(RunLog.objects.exists())
