from __future__ import annotations

import asyncio
import tempfile
import unittest
from pathlib import Path

from app.presets import spec_from_values
from config.image_source_config import ImageSourceConfig
from config.run_config import RunConfig
from ga.engine import GaEngine
from ga.schedules import BACK_P0, MutationSchedule, ScheduleKind
from inout.csv_writer import CsvTableWriter
from inout.ppm_loader import PpmLoader
from services.experiment_service import (
    INIT_POP_HEADER,
    SUMMARY_HEADER,
    ExperimentService,
    aggregate_strategies,
    emit_schedule_curves,
    init_pop_report,
    strategy_of_row,
)
from services.run_service import RunService

IMAGE = ImageSourceConfig(synth_width=32, synth_height=32, synth_colors=4, synth_noise=8)
RUNS = [
    {"test_id": "ld", "seed": "3", "generations": "20", "schedule": "LD"},
    {"test_id": "ld-n", "seed": "3", "generations": "20", "schedule": "LD", "capture": "[1,5]", "throw": "[10,20]"},
]

# Published strategy x seed table: rows C, LD, QD, LD/N, QD/N, LD/N+R, QD/N+R.
TABLE_2 = {
    ("C", "0"): (201.61, 191.15, 183.36, 205.07, 201.52),
    ("LD", "0"): (325.53, 306.48, 275.41, 322.07, 314.29),
    ("QD", "0"): (312.69, 326.55, 286.61, 290.89, 270.74),
    ("LD", "1"): (326.43, 308.92, 285.14, 323.07, 313.87),
    ("QD", "1"): (314.13, 321.01, 310.42, 281.46, 279.56),
    ("LD", "1+R"): (323.25, 290.81, 284.94, 317.57, 312.83),
    ("QD", "1+R"): (315.93, 326.28, 292.87, 297.81, 305.70),
}
TABLE_2_SEEDS = ("9", "7445", "917", "14", "27")


def _service(max_parallel: int = 1) -> ExperimentService:
    return ExperimentService(
        runner=RunService(loader=PpmLoader(), report_every=5),
        csv=CsvTableWriter(),
        max_parallel=max_parallel,
    )


def _table_2_rows() -> list[dict[str, str]]:
    rows = []
    for (schedule, e), values in TABLE_2.items():
        for seed, value in zip(TABLE_2_SEEDS, values):
            rows.append({
                "test_id": f"{schedule}-{e}-{seed}",
                "seed": seed,
                "schedule": schedule,
                "E": e,
                "final_best_fitness": repr(value),
            })
    return rows


class RunMatrixTests(unittest.TestCase):
    def _run(self, out: Path, max_parallel: int = 1):
        spec = spec_from_values(RUNS, IMAGE, 4, out)
        return asyncio.run(_service(max_parallel).run_matrix(spec))

    def test_writes_every_artefact(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            out = Path(tmpdir) / "out"
            outcome = self._run(out)

            rows = CsvTableWriter.read(outcome.summary_path)
            self.assertEqual(len(rows), 2)
            self.assertEqual(tuple(rows[0].keys()), SUMMARY_HEADER)
            self.assertEqual([r["test_id"] for r in rows], ["ld", "ld-n"])
            self.assertEqual(rows[1]["E"], "1")
            self.assertEqual(rows[1]["capture"], "1-5")

            for test_id in ("ld", "ld-n"):
                self.assertTrue((out / "traces" / f"{test_id}.csv").is_file())
                self.assertTrue((out / "images" / f"{test_id}.ppm").is_file())
                self.assertTrue((out / "reports" / f"{test_id}.txt").is_file())
            self.assertFalse((out / "archives" / "ld.archive.txt").exists())
            archived = (out / "archives" / "ld-n.archive.txt").read_text(encoding="ascii").splitlines()
            self.assertEqual(len(archived), 5)

            report = (out / "reports" / "ld-n.txt").read_text(encoding="utf-8")
            self.assertIn("Run Report: ld-n", report)
            self.assertIn("[RESULT] total_injected: 10", report)
            self.assertIn("[DIVERSITY] g=0", report)

    def test_summary_matches_trace_maximum(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            out = Path(tmpdir) / "out"
            outcome = self._run(out)
            for row in CsvTableWriter.read(outcome.summary_path):
                trace = CsvTableWriter.read(out / "traces" / f"{row['test_id']}.csv")
                self.assertEqual(len(trace), 20)
                self.assertEqual(
                    float(row["final_best_fitness"]),
                    max(float(t["best_fitness"]) for t in trace),
                )

    def test_reruns_are_byte_identical(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            a = Path(tmpdir) / "a"
            b = Path(tmpdir) / "b"
            self._run(a)
            self._run(b, max_parallel=2)
            files = [
                "summary.csv",
                "traces/ld.csv",
                "traces/ld-n.csv",
                "images/ld.ppm",
                "images/ld-n.ppm",
                "archives/ld-n.archive.txt",
                "archives/ld-n.archive.csv",
            ]
            for name in files:
                self.assertEqual((a / name).read_bytes(), (b / name).read_bytes(), msg=name)

    def test_on_run_done_sees_every_run(self) -> None:
        seen: list[str] = []
        with tempfile.TemporaryDirectory() as tmpdir:
            spec = spec_from_values(RUNS, IMAGE, 4, Path(tmpdir) / "out")
            asyncio.run(_service(2).run_matrix(spec, on_run_done=lambda cfg, _: seen.append(cfg.test_id)))
        self.assertEqual(sorted(seen), ["ld", "ld-n"])


class AggregateTests(unittest.TestCase):
    def test_strategy_names_from_summary_columns(self) -> None:
        self.assertEqual(strategy_of_row({"schedule": "C", "E": "0"}), "C")
        self.assertEqual(strategy_of_row({"schedule": "LD", "E": "1"}), "LD/N")
        self.assertEqual(strategy_of_row({"schedule": "QD", "E": "1+R"}), "QD/N+R")
        self.assertEqual(strategy_of_row({"schedule": "B[0.50]", "E": "1.5"}), "B[0.50]/N")

    def test_published_table_averages(self) -> None:
        matrix = aggregate_strategies(_table_2_rows())
        self.assertEqual(matrix.strategies, ("C", "LD", "QD", "LD/N", "QD/N", "LD/N+R", "QD/N+R"))
        self.assertEqual(matrix.seeds, TABLE_2_SEEDS)
        expected = {"C": 196.54, "LD": 308.76, "QD": 297.50, "LD/N": 311.49, "QD/N": 301.32, "LD/N+R": 305.88, "QD/N+R": 307.72}
        for strategy, mean in expected.items():
            self.assertAlmostEqual(matrix.strategy_mean(strategy), mean, delta=0.006)
        self.assertAlmostEqual(matrix.seed_mean("9"), 302.80, delta=0.006)
        self.assertAlmostEqual(matrix.overall_mean, 289.89, delta=0.006)
        self.assertAlmostEqual(matrix.strategy_mean("LD/N") / matrix.strategy_mean("C"), 1.585, delta=0.001)

    def test_table_shape(self) -> None:
        header, rows = aggregate_strategies(_table_2_rows()).as_table()
        self.assertEqual(header, ("strategy", "R=9", "R=7445", "R=917", "R=14", "R=27", "average"))
        self.assertEqual(len(rows), 8)
        self.assertEqual(rows[-1][0], "average")

    def test_single_cell(self) -> None:
        matrix = aggregate_strategies([{"test_id": "x", "seed": "1", "schedule": "LD", "E": "0", "final_best_fitness": "12.5"}])
        self.assertEqual(matrix.strategy_mean("LD"), 12.5)
        self.assertEqual(matrix.overall_mean, 12.5)

    def test_explicit_grouping(self) -> None:
        rows = [
            {"test_id": "a", "seed": "1", "schedule": "C", "E": "0", "final_best_fitness": "1.0"},
            {"test_id": "b", "seed": "1", "schedule": "LD", "E": "0", "final_best_fitness": "3.0"},
        ]
        matrix = aggregate_strategies(rows, {"a": "slow", "b": "fast"})
        self.assertEqual(matrix.strategies, ("slow", "fast"))
        with self.assertRaises(ValueError):
            aggregate_strategies(rows, {"a": "slow"})

    def test_missing_and_duplicate_cells_rejected(self) -> None:
        rows = _table_2_rows()
        with self.assertRaises(ValueError):
            aggregate_strategies(rows[:-1])
        with self.assertRaises(ValueError):
            aggregate_strategies(rows + rows[:1])
        with self.assertRaises(ValueError):
            aggregate_strategies([])

    def _two_by_two(self) -> list[dict[str, str]]:
        cells = [("2", "C", "1.0"), ("2", "LD", "3.0"), ("1", "C", "5.0"), ("1", "LD", "7.0")]
        return [
            {"test_id": f"{st}-{seed}", "seed": seed, "schedule": st, "E": "0", "final_best_fitness": value}
            for seed, st, value in cells
        ]

    def test_averages_keep_first_seen_order(self) -> None:
        frame = aggregate_strategies(self._two_by_two()).with_averages()
        self.assertEqual(list(frame.index), ["C", "LD", "average"])
        self.assertEqual(list(frame.columns), ["R=2", "R=1", "average"])
        self.assertEqual(frame.loc["C", "average"], 3.0)
        self.assertEqual(frame.loc["average", "R=1"], 6.0)
        self.assertEqual(frame.loc["average", "average"], 4.0)

    def test_aggregate_csv_is_stable(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            out = aggregate_strategies(self._two_by_two()).to_csv(Path(tmpdir) / "nested" / "strategies.csv")
            self.assertEqual(
                out.read_bytes(),
                b"strategy,R=2,R=1,average\nC,1.0,5.0,3.0\nLD,3.0,7.0,5.0\naverage,2.0,6.0,4.0\n",
            )

    def test_gap_and_duplicate_messages_name_the_cell(self) -> None:
        rows = self._two_by_two()
        with self.assertRaisesRegex(ValueError, "Missing result for strategy 'LD' and seed 1"):
            aggregate_strategies(rows[:-1])
        with self.assertRaisesRegex(ValueError, "Duplicate result for strategy 'C' and seed 2"):
            aggregate_strategies(rows + rows[:1])

    def test_write_aggregate_reads_summary_files(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            root = Path(tmpdir)
            rows = _table_2_rows()
            header = tuple(rows[0].keys())
            writer = CsvTableWriter()
            first = writer.write(root / "one.csv", header, [tuple(r.values()) for r in rows[:20]])
            second = writer.write(root / "two.csv", header, [tuple(r.values()) for r in rows[20:]])
            matrix = _service().write_aggregate([first, second], root / "strategies.csv")
            self.assertEqual(len(matrix.strategies), 7)
            written = CsvTableWriter.read(root / "strategies.csv")
            self.assertEqual(written[0]["strategy"], "C")
            self.assertAlmostEqual(float(written[0]["average"]), 196.54, delta=0.006)


class InitPopReportTests(unittest.TestCase):
    def setUp(self) -> None:
        self.cfg = RunConfig(seed=0, schedule=MutationSchedule(ScheduleKind.LINEAR), image=IMAGE, bins_per_axis=4)

    def test_row_statistics(self) -> None:
        header, rows = init_pop_report([9], self.cfg)
        self.assertEqual(header, INIT_POP_HEADER)
        self.assertEqual(len(rows), 1)
        seed, best, worst, mean, _, total = rows[0]
        self.assertEqual(seed, "9")
        self.assertLessEqual(float(worst), float(mean))
        self.assertLessEqual(float(mean), float(best))
        self.assertAlmostEqual(float(total), 100 * float(mean), delta=1e-6 * float(total))

    def test_same_seed_same_row(self) -> None:
        self.assertEqual(init_pop_report([9, 9], self.cfg)[1][0], init_pop_report([9], self.cfg)[1][0])

    def test_seeds_give_distinct_starting_points(self) -> None:
        _, rows = init_pop_report([9, 7445, 917, 14, 27], self.cfg)
        self.assertEqual(len({r[1] for r in rows}), 5)

    def test_matches_generation_zero_of_a_run(self) -> None:
        _, cubes = RunService(loader=PpmLoader()).prepare_instance(IMAGE, 4)
        _, rows = init_pop_report([14], self.cfg, cubes)
        cfg = RunConfig(seed=14, schedule=self.cfg.schedule, generations=1, image=IMAGE, bins_per_axis=4)
        first = GaEngine(cfg, cubes).run().stats[0]
        self.assertEqual(float(rows[0][1]), first.best_fitness)
        self.assertEqual(float(rows[0][3]), first.mean_fitness)


class ScheduleCurveTests(unittest.TestCase):
    def setUp(self) -> None:
        self.schedules = [
            MutationSchedule(ScheduleKind.BACK, p0=BACK_P0, n=531, t_max=3000),
            MutationSchedule(ScheduleKind.BACK, p0=0.15, n=531, t_max=3000),
            MutationSchedule(ScheduleKind.LINEAR),
            MutationSchedule(ScheduleKind.QUADRATIC),
        ]

    def test_columns_follow_the_schedules(self) -> None:
        header, rows = emit_schedule_curves(self.schedules, 200)
        self.assertEqual(header, ("g", "B[0.50]", "B[0.15]", "LD", "QD"))
        self.assertEqual(len(rows), 201)
        self.assertEqual(float(rows[0][1]), 0.5)
        self.assertAlmostEqual(float(rows[100][3]), 0.0015, places=15)
        for g, row in enumerate(rows):
            for column, schedule in enumerate(self.schedules, start=1):
                self.assertEqual(float(row[column]), schedule.rate(g))
            if g >= 1:
                self.assertLessEqual(float(row[4]), float(row[3]))

    def test_rejects_bad_requests(self) -> None:
        with self.assertRaises(ValueError):
            emit_schedule_curves(self.schedules, -1)
        with self.assertRaises(ValueError):
            emit_schedule_curves([], 10)
        with self.assertRaises(ValueError):
            emit_schedule_curves([self.schedules[2], self.schedules[2]], 10)
        with self.assertRaises(ValueError):
            emit_schedule_curves([MutationSchedule(ScheduleKind.BACK, p0=0.5)], 10)

    def test_write_schedule_curves(self) -> None:
        with tempfile.TemporaryDirectory() as tmpdir:
            out = Path(tmpdir) / "curves.csv"
            _service().write_schedule_curves(self.schedules[2:], 5, out)
            text = out.read_text(encoding="utf-8")
            self.assertTrue(text.startswith("g,LD,QD\n0,0.15,0.15\n"))
            self.assertNotIn("\r", text)
            self.assertEqual(len(text.splitlines()), 7)


if __name__ == "__main__":
    unittest.main()
