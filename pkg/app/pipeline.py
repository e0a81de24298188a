from __future__ import annotations

# Standard library imports
from dataclasses import dataclass
from pathlib import Path
import asyncio
from typing import Callable

from config.experiment_spec import ExperimentSpec
from config.run_config import RunConfig
from ga.ga_types import RunResult
from services.experiment_service import ExperimentService, MatrixOutcome, StrategyMatrix


@dataclass
class ExperimentPipeline:
    """
    End to end pipeline for one experiment file.
    Responsibilities
    - Run every configured GA run (concurrently, bounded by max_parallel)
    - Write the summary table next to the per-run artefacts
    - Optionally pivot the summary into a strategy x seed table
    """

    # Injected dependencies
    experiments: ExperimentService

    def run(
        self,
        spec: ExperimentSpec,
        *,
        aggregate: bool = False,
        on_run_done: Callable[[RunConfig, RunResult], None] | None = None,
    ) -> tuple[MatrixOutcome, StrategyMatrix | None]:
        outcome = asyncio.run(self.experiments.run_matrix(spec, on_run_done=on_run_done))
        matrix = None
        if aggregate:
            matrix = self.experiments.write_aggregate(
                [outcome.summary_path],
                Path(spec.output_dir) / "strategies.csv",
            )
        return outcome, matrix
