from __future__ import annotations

import asyncio
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping, Sequence

import numpy as np
import pandas as pd

from app.hardware import HardwareInfo
from config.experiment_spec import ExperimentSpec
from config.output_paths_config import OutputPathsConfig
from config.run_config import RunConfig
from ga.engine import init_population
from ga.ga_types import TRACE_HEADER, PopulationStats, RunResult
from ga.schedules import BACK_P0, MutationSchedule, ScheduleKind
from imaging.image_types import RasterImage
from imaging.quantize import CubeSet
from inout.archive_writer import ArchiveWriter
from inout.csv_writer import CsvTableWriter
from inout.ppm_loader import PpmLoader
from inout.report_writer import ReportWriter
from services.explainability import RunRecorder
from services.run_service import RunService

SUMMARY_HEADER = ("test_id", "seed", "T", "pc", "schedule", "E", "capture", "throw", "final_best_fitness")
INIT_POP_HEADER = ("seed", "best", "worst", "mean", "stddev", "sum")

Table = tuple[tuple[str, ...], list[tuple[str, ...]]]

# Bäck's hyperbola at both starting rates against LD and QD, as plotted for g in [0, 200].
CURVE_N = 531
CURVE_T = 3000
CURVE_G_MAX = 200
DEFAULT_CURVE_SCHEDULES: tuple[MutationSchedule, ...] = (
    MutationSchedule(ScheduleKind.BACK, p0=BACK_P0, n=CURVE_N, t_max=CURVE_T),
    MutationSchedule(ScheduleKind.BACK, p0=0.15, n=CURVE_N, t_max=CURVE_T),
    MutationSchedule(ScheduleKind.LINEAR),
    MutationSchedule(ScheduleKind.QUADRATIC),
)


def summary_row(cfg: RunConfig, result: RunResult) -> tuple[str, ...]:
    fields = cfg.summary_fields()
    return tuple(fields[h] for h in SUMMARY_HEADER[:-1]) + (repr(result.final_best),)


def strategy_of_row(row: Mapping[str, str]) -> str:
    """
    Table-2 style row name from a summary row: schedule, then '/N' when
    genotypes were injected and '+R' when each came with a random companion.
    """
    e_text = row["E"].strip()
    companion = e_text.endswith("+R")
    e = float(e_text[:-2] if companion else e_text)
    label = row["schedule"]
    if e > 0:
        label += "/N+R" if companion else "/N"
    return label


@dataclass(frozen=True, slots=True, eq=False)
class StrategyMatrix:
    """
    Final best fitness per (strategy, seed): strategies index the rows,
    seeds the columns, both in first-seen order.
    """
    table: pd.DataFrame

    @property
    def strategies(self) -> tuple[str, ...]:
        return tuple(self.table.index)

    @property
    def seeds(self) -> tuple[str, ...]:
        return tuple(self.table.columns)

    def strategy_mean(self, strategy: str) -> float:
        return float(self.table.loc[strategy].mean())

    def seed_mean(self, seed: str) -> float:
        return float(self.table[seed].mean())

    @property
    def overall_mean(self) -> float:
        return float(self.table.to_numpy().mean())

    def with_averages(self) -> pd.DataFrame:
        """The matrix with an `average` column per strategy and an `average` row per seed."""
        out = self.table.rename(columns=lambda s: f"R={s}")
        out["average"] = self.table.mean(axis=1)
        out.loc["average"] = [*self.table.mean(axis=0), self.overall_mean]
        return out

    def as_table(self) -> Table:
        out = self.with_averages()
        header = ("strategy",) + tuple(str(c) for c in out.columns)
        rows = [
            (str(label),) + tuple(repr(float(v)) for v in values)
            for label, values in zip(out.index, out.to_numpy())
        ]
        return header, rows

    def to_csv(self, path: Path) -> Path:
        path.parent.mkdir(parents=True, exist_ok=True)
        self.with_averages().to_csv(path, index_label="strategy", lineterminator="\n")
        return path


def aggregate_strategies(
    summaries: Sequence[Mapping[str, str]],
    grouping: Mapping[str, str] | None = None,
) -> StrategyMatrix:
    """
    Pivot summary rows into a strategy x seed matrix.

    `grouping` maps test_id to a strategy name; without it the strategy is
    derived from the schedule and E columns. Every cell must be filled exactly once.
    """
    if not summaries:
        raise ValueError("Cannot aggregate an empty set of summaries.")

    records = []
    for row in summaries:
        test_id = row["test_id"]
        if grouping is not None:
            if test_id not in grouping:
                raise ValueError(f"No strategy given for test {test_id!r}.")
            strategy = grouping[test_id]
        else:
            strategy = strategy_of_row(row)
        records.append({"strategy": strategy, "seed": row["seed"], "fitness": float(row["final_best_fitness"])})
    frame = pd.DataFrame.from_records(records)

    counts = frame.groupby(["strategy", "seed"], sort=False).size()
    duplicated = counts[counts > 1]
    if not duplicated.empty:
        strategy, seed = duplicated.index[0]
        raise ValueError(f"Duplicate result for strategy {strategy!r} and seed {seed}.")

    strategies = list(frame["strategy"].unique())
    seeds = list(frame["seed"].unique())
    table = frame.pivot(index="strategy", columns="seed", values="fitness").reindex(index=strategies, columns=seeds)
    gaps = np.argwhere(table.isna().to_numpy())
    if gaps.size:
        r, c = gaps[0]
        raise ValueError(f"Missing result for strategy {strategies[r]!r} and seed {seeds[c]}.")

    return StrategyMatrix(table=table)


def init_pop_report(seeds: Sequence[int], cfg: RunConfig, cubes: CubeSet | None = None) -> Table:
    """
    Statistics of the generation-0 population each seed produces; identical
    to what the GA itself starts from for that seed. Without `cubes` the
    instance is built from cfg.image at cfg.bins_per_axis.
    """
    if cubes is None:
        _, cubes = RunService(loader=PpmLoader()).prepare_instance(cfg.image, cfg.bins_per_axis)
    rows: list[tuple[str, ...]] = []
    for seed in seeds:
        rng = np.random.default_rng(seed)
        pop = init_population(rng, cfg, cubes)
        s = PopulationStats.of(pop.fitness)
        rows.append((str(seed), repr(s.best), repr(s.worst), repr(s.mean), repr(s.stddev), repr(s.total)))
    return INIT_POP_HEADER, rows


def emit_schedule_curves(schedules: Sequence[MutationSchedule], g_max: int) -> Table:
    if g_max < 0:
        raise ValueError("g_max must be >= 0.")
    if not schedules:
        raise ValueError("At least one schedule is required.")
    labels = [s.label for s in schedules]
    if len(set(labels)) != len(labels):
        raise ValueError(f"Schedule columns must have distinct labels, got {labels}.")
    for s in schedules:
        s.validate()
    curves = [s.curve(g_max) for s in schedules]
    rows = [(str(g),) + tuple(repr(c[g]) for c in curves) for g in range(g_max + 1)]
    return ("g", *labels), rows


@dataclass(frozen=True, slots=True)
class MatrixOutcome:
    summary_path: Path
    summary_rows: list[tuple[str, ...]]
    results: dict[str, RunResult] = field(default_factory=dict)


@dataclass
class ExperimentService:
    """
    Runs experiment matrices and writes their artefacts.

    Per run: traces/<id>.csv, images/<id>.ppm, reports/<id>.txt and, with
    neoteny, archives/<id>.archive.{txt,csv}. Per matrix: summary.csv.
    """
    runner: RunService
    csv: CsvTableWriter
    hardware: HardwareInfo | None = None
    max_parallel: int = 1
    binary_ppm: bool = True

    def _write_run(self, paths: OutputPathsConfig, cfg: RunConfig, cubes: CubeSet, result: RunResult) -> None:
        self.csv.write(paths.trace_path(cfg.test_id), TRACE_HEADER, (s.as_row() for s in result.stats))
        if result.segmented is not None:
            PpmLoader(binary_output=self.binary_ppm).save(paths.image_path(cfg.test_id), result.segmented)
        if result.archive is not None:
            ArchiveWriter(paths.archives_folder).write(cfg.test_id, result.archive)

        recorder = RunRecorder.new(cfg, self.hardware)
        recorder.start_run(cubes)
        recorder.record_result(result)
        ReportWriter(paths.reports_folder).write(cfg.test_id, recorder.finish_run())

    def _run_one(
        self,
        paths: OutputPathsConfig,
        cfg: RunConfig,
        img: RasterImage,
        cubes: CubeSet,
    ) -> RunResult:
        result = self.runner.run(cfg, img, cubes)
        self._write_run(paths, cfg, cubes, result)
        return result

    async def run_matrix(
        self,
        spec: ExperimentSpec,
        *,
        on_run_done: Callable[[RunConfig, RunResult], None] | None = None,
    ) -> MatrixOutcome:
        spec.validate()
        paths = OutputPathsConfig.from_strings(spec.output_dir)
        paths.validate()
        paths.ensure_output_dirs()

        img, cubes = self.runner.prepare_instance(spec.image, spec.bins_per_axis)
        semaphore = asyncio.Semaphore(self.max_parallel)

        async def _one(cfg: RunConfig) -> RunResult:
            async with semaphore:
                result = await asyncio.to_thread(self._run_one, paths, cfg, img, cubes)
            if on_run_done is not None:
                on_run_done(cfg, result)
            return result

        results = await asyncio.gather(*(_one(cfg) for cfg in spec.runs))

        rows = [summary_row(cfg, result) for cfg, result in zip(spec.runs, results)]
        summary_path = self.csv.write(paths.summary_path(), SUMMARY_HEADER, rows)
        return MatrixOutcome(
            summary_path=summary_path,
            summary_rows=rows,
            results={cfg.test_id: result for cfg, result in zip(spec.runs, results)},
        )

    def write_aggregate(self, summary_paths: Sequence[Path], out_path: Path, grouping: Mapping[str, str] | None = None) -> StrategyMatrix:
        rows: list[dict[str, str]] = []
        for p in summary_paths:
            rows.extend(self.csv.read(p))
        matrix = aggregate_strategies(rows, grouping)
        matrix.to_csv(Path(out_path))
        return matrix

    def write_init_pop_report(self, seeds: Sequence[int], cfg: RunConfig, out_path: Path) -> Table:
        _, cubes = self.runner.prepare_instance(cfg.image, cfg.bins_per_axis)
        header, rows = init_pop_report(seeds, cfg, cubes)
        self.csv.write(out_path, header, rows)
        return header, rows

    def write_schedule_curves(self, schedules: Sequence[MutationSchedule], g_max: int, out_path: Path) -> Table:
        header, rows = emit_schedule_curves(schedules, g_max)
        self.csv.write(out_path, header, rows)
        return header, rows
