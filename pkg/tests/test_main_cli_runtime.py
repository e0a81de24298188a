from __future__ import annotations

import contextlib
import io
import tempfile
import unittest
from pathlib import Path

from imaging.ppm_codec import read_ppm
from inout.csv_writer import CsvTableWriter
from main import main

SMALL_IMAGE = ["--synth-width", "16", "--synth-height", "16", "--synth-colors", "4", "--bins-per-axis", "4"]


def _quiet(argv: list[str]) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


class MainCliRuntimeTests(unittest.TestCase):
    def setUp(self) -> None:
        self._tmp = tempfile.TemporaryDirectory()
        self.root = Path(self._tmp.name)

    def tearDown(self) -> None:
        self._tmp.cleanup()

    def test_synth_writes_image(self) -> None:
        out = self.root / "img.ppm"
        code, stdout, _ = _quiet(["synth", "--width", "12", "--height", "6", "--colors", "3", "--noise", "0", "--out", str(out)])

        self.assertEqual(code, 0)
        img = read_ppm(out.read_bytes())
        self.assertEqual((img.width, img.height), (12, 6))
        self.assertEqual(img.distinct_colors(), 3)
        self.assertIn("3 distinct colours", stdout)

    def test_schedules_writes_one_column_per_schedule(self) -> None:
        out = self.root / "curves.csv"
        code, _, _ = _quiet(["schedules", "--schedule", "LD", "--schedule", "B[0.50]", "--g-max", "10", "--out", str(out)])

        self.assertEqual(code, 0)
        rows = CsvTableWriter.read(out)
        self.assertEqual(len(rows), 11)
        self.assertEqual(list(rows[0].keys()), ["g", "LD", "B[0.50]"])
        self.assertEqual(float(rows[0]["B[0.50]"]), 0.5)

    def test_run_writes_trace_summary_and_report(self) -> None:
        out = self.root / "results"
        code, stdout, _ = _quiet(
            ["run", "--test-id", "tiny", "--generations", "6", "--pop", "10", "--seed", "3", *SMALL_IMAGE, "--output", str(out)]
        )

        self.assertEqual(code, 0)
        self.assertEqual(len(CsvTableWriter.read(out / "traces" / "tiny.csv")), 6)
        summary = CsvTableWriter.read(out / "summary.csv")
        self.assertEqual([r["test_id"] for r in summary], ["tiny"])
        self.assertTrue((out / "images" / "tiny.ppm").is_file())
        self.assertTrue((out / "reports" / "tiny.txt").is_file())
        self.assertIn("Final best fitness", stdout)

    def test_invalid_value_returns_error_code(self) -> None:
        code, _, stderr = _quiet(["run", "--generations", "0", *SMALL_IMAGE, "--output", str(self.root / "r")])

        self.assertEqual(code, 1)
        self.assertIn("Error:", stderr)


if __name__ == "__main__":
    unittest.main()
