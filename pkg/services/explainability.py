from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any

from app.hardware import HardwareInfo
from config.run_config import RunConfig
from ga.ga_types import RunResult
from imaging.quantize import CubeSet


@dataclass
class RunRecorder:
    """
    Collects a human-readable account of one GA run: configuration, host,
    instance size, timing and outcome. Written next to the CSV outputs but
    never mixed into them.
    """
    run_id: str
    run_cfg: RunConfig
    hardware: HardwareInfo | None = None
    _lines: list[str] = field(default_factory=list)

    @staticmethod
    def new(run_cfg: RunConfig, hardware: HardwareInfo | None = None) -> "RunRecorder":
        run_id = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
        return RunRecorder(run_id=run_id, run_cfg=run_cfg, hardware=hardware)

    def reset(self) -> None:
        self._lines.clear()

    def start_run(self, cubes: CubeSet) -> None:
        cfg = self.run_cfg
        self._lines.append(f"Run Report: {cfg.test_id}")
        self._lines.append(f"Generated (UTC): {self.run_id}")
        self._lines.append("")
        self._lines.append("=== RUN CONFIG ===")
        self._lines.append(f"SEED: {cfg.seed}")
        self._lines.append(f"POPULATION: {cfg.population_size}")
        self._lines.append(f"GENERATIONS: {cfg.generations}")
        self._lines.append(f"CROSSOVER_P: {cfg.p_c:g}")
        self._lines.append(f"SCHEDULE: {cfg.schedule.label} (p0={cfg.schedule.p0:g}, switch_g={cfg.schedule.switch_g})")
        if cfg.neoteny is not None:
            n = cfg.neoteny
            self._lines.append(
                f"NEOTENY: E={n.e:g} capture={list(n.capture)} throw={list(n.throw)} "
                f"companion={n.with_random_companion} protect_best={n.protect_best}"
            )
        else:
            self._lines.append("NEOTENY: off")
        self._lines.append(f"WINDOW: {cfg.window}")
        self._lines.append(f"ELITE_CARRYOVER: {cfg.elite_carryover}")
        self._lines.append(f"IMAGE: {cfg.image.describe()}")
        self._lines.append(f"BINS_PER_AXIS: {cfg.bins_per_axis}")
        self._lines.append(f"CUBES (m): {cubes.m}")
        self._lines.append(f"CHROMOSOME LENGTH (n): {cubes.m * cfg.bits_per_gene}")
        if self.hardware is not None:
            self._lines.append(f"HOST: {self.hardware.summary}")
        self._lines.append("")

    def log(self, section: str, message: str) -> None:
        self._lines.append(f"[{section}] {message}")

    def log_kv(self, section: str, data: dict[str, Any]) -> None:
        for key, value in data.items():
            self._lines.append(f"[{section}] {key}: {value}")

    def record_result(self, result: RunResult) -> None:
        generations = max(len(result.stats), 1)
        self.log_kv(
            "RESULT",
            {
                "final_best_fitness": repr(result.final_best),
                "final_best_J": repr(result.best.j),
                "best_generation": result.best_generation,
                "total_injected": result.total_injected,
                "seconds": f"{result.seconds:.3f}",
                "seconds_per_generation": f"{result.seconds / generations:.6f}",
            },
        )
        if result.archive is not None:
            self.log("NEOTENY", f"Archive holds {len(result.archive)} captured genotypes")
        for g, distance in result.diversity:
            self.log("DIVERSITY", f"g={g} mean_pairwise_hamming={distance:.3f}")

    def finish_run(self) -> list[str]:
        return list(self._lines)
