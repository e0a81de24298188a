from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from ga.genome import Chromosome
from imaging.image_types import RasterImage

if TYPE_CHECKING:
    from ga.neoteny import NeotenyArchive

TRACE_HEADER = ("generation", "best_fitness", "mean_fitness", "stddev_fitness", "pm", "injected")


@dataclass(frozen=True, slots=True)
class Individual:
    chromosome: Chromosome
    fitness: float
    j: float


@dataclass(slots=True, eq=False)
class Population:
    """
    P chromosomes held as one (P, n) uint8 bit matrix with their J and fitness.
    """
    bits: np.ndarray
    j: np.ndarray
    fitness: np.ndarray
    b: int

    @property
    def size(self) -> int:
        return int(self.bits.shape[0])

    @property
    def n(self) -> int:
        return int(self.bits.shape[1])

    def best_index(self) -> int:
        # argmax returns the first maximum, so ties go to the lowest index.
        return int(np.argmax(self.fitness))

    def chromosome(self, i: int) -> Chromosome:
        return Chromosome.from_array(self.bits[i], self.b)

    def individual(self, i: int) -> Individual:
        return Individual(
            chromosome=self.chromosome(i),
            fitness=float(self.fitness[i]),
            j=float(self.j[i]),
        )


@dataclass(frozen=True, slots=True)
class PopulationStats:
    """Best / worst / mean / population stddev / sum of fitness."""
    best: float
    worst: float
    mean: float
    stddev: float
    total: float

    @staticmethod
    def of(fitness: np.ndarray) -> "PopulationStats":
        f = np.asarray(fitness, dtype=np.float64)
        return PopulationStats(
            best=float(f.max()),
            worst=float(f.min()),
            mean=float(f.mean()),
            stddev=float(f.std()),
            total=float(f.sum()),
        )


@dataclass(frozen=True, slots=True)
class GenerationStats:
    g: int
    best_fitness: float
    mean_fitness: float
    stddev_fitness: float
    pm: float
    injected: int

    def as_row(self) -> tuple[str, ...]:
        return (
            str(self.g),
            repr(self.best_fitness),
            repr(self.mean_fitness),
            repr(self.stddev_fitness),
            repr(self.pm),
            str(self.injected),
        )


@dataclass(slots=True)
class RunResult:
    stats: list[GenerationStats]
    best: Individual
    best_generation: int
    m: int
    n: int
    segmented: RasterImage | None = None
    archive: "NeotenyArchive | None" = None
    seconds: float = 0.0
    diversity: list[tuple[int, float]] = field(default_factory=list)

    @property
    def final_best(self) -> float:
        return self.best.fitness

    @property
    def total_injected(self) -> int:
        return sum(s.injected for s in self.stats)

    def running_best(self) -> list[float]:
        out: list[float] = []
        current = float("-inf")
        for s in self.stats:
            current = max(current, s.best_fitness)
            out.append(current)
        return out
