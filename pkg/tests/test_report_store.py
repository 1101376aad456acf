import unittest
import sys
import os
import json
import tempfile

# Add project root to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src import __version__
from src.report_store import ReportCache, RunReport, cache_key


class TestRunReport(unittest.TestCase):

    def setUp(self):
        self.report = RunReport(command="verify iso", parameters={"n": 2, "p": 2, "d": [1, 2]})
        self.report.results["point_count"] = 25
        self.report.results["poincare"] = [1, 2, 3, 1]

    def test_passed_tracks_checks(self):
        self.assertTrue(self.report.passed)
        self.assertTrue(self.report.add_check("first", True))
        self.assertTrue(self.report.passed)
        self.assertFalse(self.report.add_check("second", False, "25 vs 24"))
        self.assertFalse(self.report.passed)

    def test_json_is_sorted_and_complete(self):
        self.report.add_check("point_count_matches_poincare", True)
        text = self.report.to_json()
        data = json.loads(text)
        self.assertTrue(text.endswith("\n"))
        self.assertEqual(list(data), sorted(data))
        self.assertEqual(data["results"]["point_count"], 25)
        self.assertTrue(data["passed"])
        self.assertEqual(data["version"], __version__)
        self.assertEqual(text, self.report.to_json())

    def test_round_trip_through_json(self):
        self.report.add_check("x", False, "detail")
        restored = RunReport.model_validate_json(self.report.to_json())
        self.assertEqual(restored.checks[0].detail, "detail")
        self.assertFalse(restored.passed)

    def test_frame_and_csv(self):
        self.report.add_check("zeta_injective", True)
        frame = self.report.to_frame()
        self.assertEqual(list(frame.columns), ["section", "name", "value"])
        self.assertEqual(set(frame["section"]), {"parameter", "result", "check"})
        csv = self.report.to_csv()
        self.assertTrue(csv.startswith("section,name,value"))
        self.assertIn("zeta_injective,pass", csv)

    def test_table(self):
        self.report.add_check("zeta_injective", False)
        table = self.report.to_table()
        self.assertIn("VERIFY ISO - FAIL", table)
        self.assertIn("=" * 60, table)


class TestReportCache(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.cache = ReportCache(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def test_key_is_canonical(self):
        a = cache_key("count degflag", {"n": 2, "p": 2, "d": [1, 2]})
        b = cache_key("count degflag", {"d": [1, 2], "p": 2, "n": 2})
        self.assertEqual(a, b)
        self.assertNotEqual(a, cache_key("count degflag", {"n": 2, "p": 3, "d": [1, 2]}))
        self.assertNotEqual(a, cache_key("count degflag", {"n": 2, "p": 2, "d": [1, 2]}, version="0.0.0"))

    def test_miss_then_hit(self):
        params = {"n": 2, "d": [1, 2]}
        self.assertIsNone(self.cache.load("count quotient", params))
        report = RunReport(command="count quotient", parameters=params, results={"count": 12})
        path = self.cache.store(report)
        self.assertTrue(os.path.exists(path))
        self.assertEqual(self.cache.load("count quotient", params), report.to_json())

    def test_unreadable_entry_is_ignored(self):
        params = {"n": 1}
        path = os.path.join(self.tmp.name, f"{cache_key('verify lemma', params)}.json")
        with open(path, 'w') as f:
            f.write("{not json")
        self.assertIsNone(self.cache.load("verify lemma", params))


if __name__ == '__main__':
    unittest.main()
