from __future__ import annotations

import tempfile
import unittest
from pathlib import Path

from app.presets import (
    TABLE_1,
    build_run_config,
    matrix_preset,
    parse_config,
    parse_neoteny,
    parse_schedule,
    preset_values,
)
from config.image_source_config import ImageSourceConfig
from ga.schedules import ScheduleKind

IMAGE = ImageSourceConfig()


def _preset(name: str, **extra: str):
    return build_run_config({"preset": name, **extra}, IMAGE, 8)


class RunPresetTests(unittest.TestCase):
    def test_paper_test_2(self) -> None:
        cfg = _preset("paper-test-2")
        self.assertEqual(cfg.test_id, "paper-test-2")
        self.assertEqual(cfg.seed, 9)
        self.assertEqual(cfg.generations, 3000)
        self.assertEqual(cfg.p_c, 0.8)
        self.assertIs(cfg.schedule.kind, ScheduleKind.LINEAR)
        self.assertIsNone(cfg.neoteny)

    def test_paper_test_6(self) -> None:
        cfg = _preset("paper-test-6")
        self.assertIs(cfg.schedule.kind, ScheduleKind.LINEAR)
        self.assertEqual(cfg.neoteny.e, 1.0)
        self.assertEqual(cfg.neoteny.capture, (1, 100))
        self.assertEqual(cfg.neoteny.throw, (1000, 3000))
        self.assertFalse(cfg.neoteny.with_random_companion)

    def test_back_presets(self) -> None:
        self.assertEqual(_preset("paper-test-4").schedule.p0, 0.15)
        five = _preset("paper-test-5")
        self.assertIs(five.schedule.kind, ScheduleKind.BACK)
        self.assertEqual(five.schedule.p0, 0.5)
        self.assertEqual(five.schedule.label, "B[0.50]")

    def test_other_table_rows(self) -> None:
        self.assertEqual(_preset("paper-test-9").generations, 6000)
        self.assertEqual(_preset("paper-test-27").neoteny.e, 1.5)
        self.assertEqual(_preset("paper-test-33").neoteny.capture, (1, 50))
        companion = _preset("paper-test-35")
        self.assertEqual(companion.neoteny.e, 1.0)
        self.assertTrue(companion.neoteny.with_random_companion)
        self.assertEqual(companion.summary_fields()["E"], "1+R")

    def test_every_table_row_builds(self) -> None:
        for row in TABLE_1:
            cfg = _preset(f"paper-test-{row[0]}")
            self.assertEqual((cfg.seed, cfg.generations), (row[1], row[2]))

    def test_explicit_keys_override_preset(self) -> None:
        cfg = _preset("paper-test-2", seed="14", generations="50")
        self.assertEqual((cfg.seed, cfg.generations), (14, 50))

    def test_unknown_preset_and_keys_rejected(self) -> None:
        with self.assertRaises(ValueError):
            preset_values("paper-test-39")
        with self.assertRaises(ValueError):
            preset_values("table-9")
        with self.assertRaises(ValueError):
            build_run_config({"colour": "red"}, IMAGE, 8)

    def test_overlapping_windows_rejected(self) -> None:
        with self.assertRaises(ValueError):
            build_run_config({"capture": "[1,100]", "throw": "[50,3000]"}, IMAGE, 8)


class KeyParsingTests(unittest.TestCase):
    def test_schedule_text(self) -> None:
        self.assertEqual(parse_schedule({"schedule": "B[0.15]"}).p0, 0.15)
        self.assertEqual(parse_schedule({"schedule": "BACK"}).p0, 0.5)
        self.assertEqual(parse_schedule({"schedule": "BACK", "p0": "0.25"}).p0, 0.25)
        self.assertEqual(parse_schedule({"schedule": "QD", "switch_g": "10"}).switch_g, 10)
        self.assertEqual(parse_schedule({"schedule": "B", "back_n": "531", "back_T": "3000"}).n, 531)
        with self.assertRaises(ValueError):
            parse_schedule({"schedule": "LD[0.5]"})
        with self.assertRaises(ValueError):
            parse_schedule({"schedule": "LD 0.5"})

    def test_neoteny_switch(self) -> None:
        self.assertIsNone(parse_neoteny({}))
        self.assertIsNone(parse_neoteny({"neoteny": "off", "E": "2"}))
        self.assertEqual(parse_neoteny({"E": "1.5"}).e, 1.5)
        star = parse_neoteny({"neoteny": "on", "E": "2*"})
        self.assertEqual(star.e, 1.0)
        self.assertTrue(star.with_random_companion)


class MatrixPresetTests(unittest.TestCase):
    def test_sizes(self) -> None:
        self.assertEqual(len(matrix_preset("paper-table-1")[0]), 38)
        self.assertEqual(len(matrix_preset("paper-table-2")[0]), 35)
        self.assertEqual(len(matrix_preset("trend-check")[0]), 15)
        with self.assertRaises(ValueError):
            matrix_preset("table-9")

    def test_table_2_ids_are_unique_and_descriptive(self) -> None:
        ids = [r["test_id"] for r in matrix_preset("paper-table-2")[0]]
        self.assertEqual(len(set(ids)), 35)
        self.assertIn("LD-N-R9", ids)
        self.assertIn("QD-NR-R7445", ids)

    def test_desk_table_1_is_scaled(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            spec = parse_config(f"matrix = desk-table-1\noutput = {tmpdir}\n")
        self.assertEqual(len(spec.runs), 38)
        self.assertEqual(spec.run("paper-test-1").generations, 300)
        self.assertEqual(spec.run("paper-test-9").generations, 600)
        six = spec.run("paper-test-6")
        self.assertEqual(six.schedule.switch_g, 10)
        self.assertEqual(six.neoteny.capture, (0, 10))
        self.assertEqual(six.neoteny.throw, (100, 300))

    def test_trend_check_uses_late_throw_window(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            spec = parse_config(f"matrix = trend-check\noutput = {tmpdir}\n")
        self.assertEqual({r.generations for r in spec.runs}, {1500})
        ldn = [r for r in spec.runs if r.neoteny is not None]
        self.assertEqual(len(ldn), 5)
        self.assertTrue(all(r.neoteny.throw == (750, 1500) for r in ldn))


class ParseConfigTests(unittest.TestCase):
    def setUp(self) -> None:
        self._tmp = tempfile.TemporaryDirectory()
        self.out = Path(self._tmp.name) / "out"

    def tearDown(self) -> None:
        self._tmp.cleanup()

    def test_sections_inherit_shared_defaults(self) -> None:
        text = (
            "# two runs on a small image\n"
            "synth_width = 32\n"
            "synth_height = 16\n"
            "synth_colors = 4\n"
            "bins_per_axis = 4\n"
            f"output = {self.out}\n"
            "generations = 50\n"
            "seed = 3\n"
            "\n"
            "[ld-run]\n"
            "schedule = LD\n"
            "\n"
            "[c-run]  # constant rate\n"
            "schedule = C\n"
            "seed = 4\n"
        )
        spec = parse_config(text)
        self.assertEqual(spec.test_ids, ["ld-run", "c-run"])
        self.assertEqual([r.seed for r in spec.runs], [3, 4])
        self.assertEqual({r.generations for r in spec.runs}, {50})
        self.assertEqual(spec.bins_per_axis, 4)
        self.assertEqual(spec.image.synth_width, 32)
        self.assertEqual(spec.output_dir, self.out.resolve())
        self.assertFalse(self.out.exists())

    def test_no_sections_is_a_single_run(self) -> None:
        spec = parse_config(f"output = {self.out}\nschedule = QD\ngenerations = 10\n")
        self.assertEqual(spec.test_ids, ["run"])
        self.assertIs(spec.runs[0].schedule.kind, ScheduleKind.QUADRATIC)

    def test_section_preset_keeps_section_name(self) -> None:
        spec = parse_config(f"output = {self.out}\n[mine]\npreset = paper-test-6\nseed = 1\n")
        run = spec.run("mine")
        self.assertEqual(run.seed, 1)
        self.assertEqual(run.neoteny.throw, (1000, 3000))

    def test_scale_applies_to_every_run(self) -> None:
        spec = parse_config(f"output = {self.out}\nscale = 0.5\n[a]\ngenerations = 40\n")
        self.assertEqual(spec.run("a").generations, 20)

    def test_errors_name_the_line(self) -> None:
        with self.assertRaisesRegex(ValueError, "Line 2"):
            parse_config("seed = 1\ncolour = red\n")
        with self.assertRaisesRegex(ValueError, "Line 2"):
            parse_config("seed = 1\nseed = 2\n")
        with self.assertRaisesRegex(ValueError, "Line 3"):
            parse_config("[a]\nseed = 1\nbins_per_axis = 4\n")
        with self.assertRaisesRegex(ValueError, "Line 1"):
            parse_config("just words\n")

    def test_errors_name_the_run(self) -> None:
        with self.assertRaisesRegex(ValueError, "Run 'bad'"):
            parse_config(f"output = {self.out}\n[bad]\ngenerations = many\n")
        with self.assertRaisesRegex(ValueError, "Run 'overlap'"):
            parse_config(f"output = {self.out}\n[overlap]\ncapture = [1,100]\nthrow = [50,3000]\n")

    def test_duplicate_sections_rejected(self) -> None:
        with self.assertRaises(ValueError):
            parse_config(f"output = {self.out}\n[a]\nseed = 1\n[a]\nseed = 2\n")


if __name__ == "__main__":
    unittest.main()
