from __future__ import annotations

from dataclasses import dataclass, replace

from config.image_source_config import ImageSourceConfig
from config.neoteny_config import NeotenyConfig, format_interval, to_bool
from ga.genome import DEFAULT_BITS_PER_GENE
from ga.schedules import MutationSchedule, ScheduleKind
from imaging.quantize import DEFAULT_BINS_PER_AXIS


@dataclass(frozen=True, slots=True)
class RunConfig:
    """
    Everything needed to reproduce one GA run (one row of a results table).
    """
    seed: int
    schedule: MutationSchedule
    test_id: str = "run"
    population_size: int = 100
    generations: int = 3000
    p_c: float = 0.8
    neoteny: NeotenyConfig | None = None
    image: ImageSourceConfig = ImageSourceConfig()
    bins_per_axis: int = DEFAULT_BINS_PER_AXIS
    bits_per_gene: int = DEFAULT_BITS_PER_GENE
    window: int = 1
    elite_carryover: bool = False

    def validate(self) -> None:
        if not isinstance(self.test_id, str) or not self.test_id.strip():
            raise ValueError("RunConfig.test_id must be a non-empty string.")
        if any(ch in self.test_id for ch in ",/\\\n"):
            raise ValueError("RunConfig.test_id may not contain commas, slashes or newlines.")

        # bool is a subclass of int; reject it explicitly.
        for label, value in (
            ("seed", self.seed),
            ("population_size", self.population_size),
            ("generations", self.generations),
            ("bins_per_axis", self.bins_per_axis),
            ("bits_per_gene", self.bits_per_gene),
            ("window", self.window),
        ):
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValueError(f"RunConfig.{label} must be an integer.")

        if self.seed < 0:
            raise ValueError("RunConfig.seed must be >= 0.")
        if self.population_size < 2 or self.population_size % 2:
            raise ValueError("RunConfig.population_size must be even and >= 2.")
        if self.generations < 1:
            raise ValueError("RunConfig.generations must be >= 1.")
        if not (0.0 <= self.p_c <= 1.0):
            raise ValueError("RunConfig.p_c must be in [0, 1].")
        if not (1 <= self.bins_per_axis <= 256):
            raise ValueError("RunConfig.bins_per_axis must be in [1, 256].")
        if not (1 <= self.bits_per_gene <= 16):
            raise ValueError("RunConfig.bits_per_gene must be in [1, 16].")
        if self.window < 1:
            raise ValueError("RunConfig.window must be >= 1.")
        if not isinstance(self.elite_carryover, bool):
            raise ValueError("RunConfig.elite_carryover must be a boolean.")

        self.schedule.validate()
        if self.schedule.kind is ScheduleKind.BACK and self.schedule.t_max is not None:
            if self.schedule.t_max < self.generations:
                raise ValueError(
                    f"BACK schedule T={self.schedule.t_max} is shorter than the run ({self.generations} generations)."
                )
        if self.neoteny is not None:
            self.neoteny.validate()
        self.image.validate()

    @property
    def strategy_label(self) -> str:
        """Row name used when grouping runs: schedule, '/N' for neoteny, '+R' for a random companion."""
        label = self.schedule.label
        if self.neoteny is not None and self.neoteny.e > 0:
            label += "/N"
            if self.neoteny.with_random_companion:
                label += "+R"
        return label

    def schedule_for(self, n: int) -> MutationSchedule:
        """The schedule with BACK's n / T filled in for a chromosome of length n."""
        schedule = self.schedule.resolved(n=n, t_max=self.generations)
        schedule.validate()
        return schedule

    def summary_fields(self) -> dict[str, str]:
        """Columns A-G of a results table."""
        neoteny = self.neoteny
        return {
            "test_id": self.test_id,
            "seed": str(self.seed),
            "T": str(self.generations),
            "pc": f"{self.p_c:g}",
            "schedule": self.schedule.label,
            "E": neoteny.describe_e() if neoteny is not None else "0",
            "capture": format_interval(neoteny.capture) if neoteny is not None else "-",
            "throw": format_interval(neoteny.throw) if neoteny is not None else "-",
        }

    def scaled(self, factor: float) -> "RunConfig":
        """
        Desk-scale copy: generations, switch generation and neoteny windows
        multiplied by `factor` (rounded, at least 1).
        """
        if factor <= 0:
            raise ValueError("Scale factor must be > 0.")
        generations = max(1, int(round(self.generations * factor)))
        schedule = replace(self.schedule, switch_g=max(1, int(round(self.schedule.switch_g * factor))))
        if schedule.t_max is not None:
            schedule = replace(schedule, t_max=max(generations, int(round(schedule.t_max * factor))))
        neoteny = self.neoteny.scaled(factor) if self.neoteny is not None else None
        cfg = replace(self, generations=generations, schedule=schedule, neoteny=neoteny)
        cfg.validate()
        return cfg

    @staticmethod
    def from_strings(
        seed: str | int,
        schedule: MutationSchedule,
        test_id: str = "run",
        population_size: str | int = 100,
        generations: str | int = 3000,
        p_c: str | float = 0.8,
        neoteny: NeotenyConfig | None = None,
        image: ImageSourceConfig | None = None,
        bins_per_axis: str | int = DEFAULT_BINS_PER_AXIS,
        bits_per_gene: str | int = DEFAULT_BITS_PER_GENE,
        window: str | int = 1,
        elite_carryover: bool | str = False,
    ) -> "RunConfig":
        cfg = RunConfig(
            seed=int(seed),
            schedule=schedule,
            test_id=test_id,
            population_size=int(population_size),
            generations=int(generations),
            p_c=float(p_c),
            neoteny=neoteny,
            image=image if image is not None else ImageSourceConfig(),
            bins_per_axis=int(bins_per_axis),
            bits_per_gene=int(bits_per_gene),
            window=int(window),
            elite_carryover=to_bool(elite_carryover),
        )
        cfg.validate()
        return cfg
