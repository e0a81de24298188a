from __future__ import annotations

import time
from collections import deque
from typing import Callable, Sequence

import numpy as np

from config.run_config import RunConfig
from ga.ga_types import GenerationStats, Individual, Population, PopulationStats, RunResult
from ga.genome import Chromosome, decode, decode_bits, mean_pairwise_hamming, random_bits
from ga.neoteny import NeotenyArchive, inject
from ga.objective import fitness_array, population_objective, render_segmentation
from imaging.image_types import RasterImage
from imaging.quantize import CubeSet


def evaluate_population(cubes: CubeSet, bits: np.ndarray, b: int) -> Population:
    labels = decode_bits(bits, b)
    j = population_objective(cubes, labels, 1 << b)
    return Population(bits=bits, j=j, fitness=fitness_array(j), b=b)


def init_population(rng: np.random.Generator, cfg: RunConfig, cubes: CubeSet) -> Population:
    """
    P uniformly random chromosomes of length m*b, evaluated.
    """
    n = cubes.m * cfg.bits_per_gene
    bits = random_bits(rng, (cfg.population_size, n))
    return evaluate_population(cubes, bits, cfg.bits_per_gene)


def window_scale(fitnesses: Sequence[float] | np.ndarray, window_min: float) -> np.ndarray:
    """
    Windowing: subtract the recent minimum fitness so selection pressure
    does not fade as absolute fitness grows.
    """
    return np.maximum(np.asarray(fitnesses, dtype=np.float64) - window_min, 0.0)


def selection_probabilities(weights: Sequence[float] | np.ndarray) -> np.ndarray:
    w = np.asarray(weights, dtype=np.float64)
    total = w.sum()
    if total <= 0:
        return np.full(w.shape, 1.0 / w.size)
    return w / total


class RouletteWheel:
    """
    Fitness-proportional sampling over non-negative weights, uniform when they all vanish.
    Built once per generation; every draw consumes exactly one uniform number.
    """

    def __init__(self, weights: Sequence[float] | np.ndarray) -> None:
        w = np.asarray(weights, dtype=np.float64)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("Roulette weights must be a non-empty 1-D sequence.")
        if np.any(w < 0):
            raise ValueError("Roulette weights must be non-negative.")
        self.size = int(w.size)
        self.cumulative = np.cumsum(w)
        self.total = float(self.cumulative[-1])
        positive = np.flatnonzero(w > 0)
        self._last = int(positive[-1]) if positive.size else self.size - 1

    def draw(self, rng: np.random.Generator, count: int = 1) -> np.ndarray:
        u = rng.random(count)
        if self.total <= 0:
            return np.minimum((u * self.size).astype(np.int64), self.size - 1)
        idx = np.searchsorted(self.cumulative, u * self.total, side="right")
        return np.minimum(idx, self._last)

    def pair(self, rng: np.random.Generator) -> tuple[int, int]:
        i, j = self.draw(rng, 2)
        return int(i), int(j)


def select_pair(rng: np.random.Generator, weights: Sequence[float] | np.ndarray) -> tuple[int, int]:
    """Two independent roulette draws; the same index may come up twice."""
    return RouletteWheel(weights).pair(rng)


def crossover_bits(
    rng: np.random.Generator,
    a: np.ndarray,
    b: np.ndarray,
    p_c: float,
) -> tuple[np.ndarray, np.ndarray]:
    n = a.shape[0]
    if b.shape[0] != n:
        raise ValueError(f"Cannot cross chromosomes of lengths {n} and {b.shape[0]}.")
    coin = rng.random()
    if coin < p_c and n >= 2:
        k = int(rng.integers(1, n))
        return (
            np.concatenate((a[:k], b[k:])),
            np.concatenate((b[:k], a[k:])),
        )
    return a.copy(), b.copy()


def one_point_crossover(
    rng: np.random.Generator,
    a: Chromosome,
    b: Chromosome,
    p_c: float,
) -> tuple[Chromosome, Chromosome]:
    """
    With probability p_c cut both parents at k ~ U[1, n-1] and swap suffixes;
    otherwise return copies of the parents.
    """
    if a.n != b.n or a.b != b.b:
        raise ValueError(f"Cannot cross chromosomes of lengths {a.n} and {b.n}.")
    if a.n < 2:
        raise ValueError("One-point crossover needs chromosomes of length >= 2.")
    x, y = crossover_bits(rng, a.to_array(), b.to_array(), p_c)
    return Chromosome.from_array(x, a.b), Chromosome.from_array(y, b.b)


def mutate_bits(rng: np.random.Generator, bits: np.ndarray, pm: float) -> np.ndarray:
    flips = rng.random(bits.shape[0]) < pm
    return np.bitwise_xor(bits, flips.astype(np.uint8))


def mutate(rng: np.random.Generator, c: Chromosome, pm: float) -> Chromosome:
    """Flip each bit independently with probability pm."""
    if not (0.0 <= pm <= 1.0):
        raise ValueError("Mutation probability must be in [0, 1].")
    return Chromosome.from_array(mutate_bits(rng, c.to_array(), pm), c.b)


class GaEngine:
    """
    Generational GA over one cube set.

    Each step g: record statistics of the current population, capture an
    elite into the neoteny archive, breed P offspring (roulette pairs with
    windowing, one-point crossover, bit-flip mutation at rate(g)), optionally
    carry the elite over, throw archived genotypes in, then evaluate. The
    offspring replace the population wholesale.
    """

    def __init__(
        self,
        cfg: RunConfig,
        cubes: CubeSet,
        image: RasterImage | None = None,
        *,
        diversity_every: int = 0,
        on_generation: Callable[[GenerationStats], None] | None = None,
    ) -> None:
        cfg.validate()
        if cubes.m < 1:
            raise ValueError("Cube set is empty.")
        self.cfg = cfg
        self.cubes = cubes
        self.image = image
        self.b = cfg.bits_per_gene
        self.n = cubes.m * self.b
        self.schedule = cfg.schedule_for(self.n)
        self.rng = np.random.default_rng(cfg.seed)
        self.population = init_population(self.rng, cfg, cubes)
        self.archive = NeotenyArchive(config=cfg.neoteny) if cfg.neoteny is not None else None
        self.diversity_every = diversity_every
        self.on_generation = on_generation
        self.diversity: list[tuple[int, float]] = []

        self._minima: deque[float] = deque(maxlen=cfg.window)
        self._best: Individual | None = None
        self._best_generation = 0

    @property
    def best(self) -> Individual:
        if self._best is None:
            raise RuntimeError("No generation has been recorded yet.")
        return self._best

    def _track_best(self, g: int) -> None:
        i = self.population.best_index()
        if self._best is None or self.population.fitness[i] > self._best.fitness:
            self._best = self.population.individual(i)
            self._best_generation = g

    def _breed(self, pm: float) -> np.ndarray:
        pop = self.population
        weights = window_scale(pop.fitness, min(self._minima))
        wheel = RouletteWheel(weights)
        offspring = np.empty_like(pop.bits)
        for pair in range(pop.size // 2):
            i, j = wheel.pair(self.rng)
            child_a, child_b = crossover_bits(self.rng, pop.bits[i], pop.bits[j], self.cfg.p_c)
            offspring[2 * pair] = mutate_bits(self.rng, child_a, pm)
            offspring[2 * pair + 1] = mutate_bits(self.rng, child_b, pm)
        return offspring

    def step(self, g: int) -> GenerationStats:
        pop = self.population
        summary = PopulationStats.of(pop.fitness)
        self._track_best(g)
        if self.diversity_every and g % self.diversity_every == 0:
            self.diversity.append((g, mean_pairwise_hamming(pop.bits)))

        if self.archive is not None:
            self.archive = self.archive.maybe_capture(g, pop)

        pm = self.schedule.rate(g)
        self._minima.append(summary.worst)
        offspring = self._breed(pm)

        protected: frozenset[int] = frozenset()
        if self.cfg.elite_carryover:
            offspring[0] = pop.bits[pop.best_index()]
            if self.cfg.neoteny is not None and self.cfg.neoteny.protect_best:
                protected = frozenset({0})

        injected = 0
        if self.archive is not None and self.archive.config.in_throw(g):
            offspring, injected = inject(self.rng, offspring, self.archive, g, protected)

        self.population = evaluate_population(self.cubes, offspring, self.b)

        stats = GenerationStats(
            g=g,
            best_fitness=summary.best,
            mean_fitness=summary.mean,
            stddev_fitness=summary.stddev,
            pm=pm,
            injected=injected,
        )
        if self.on_generation is not None:
            self.on_generation(stats)
        return stats

    def run(self) -> RunResult:
        started = time.perf_counter()
        stats = [self.step(g) for g in range(self.cfg.generations)]
        seconds = time.perf_counter() - started

        best = self.best
        segmented = None
        if self.image is not None:
            segmented = render_segmentation(self.image, self.cubes, decode(best.chromosome))
        return RunResult(
            stats=stats,
            best=best,
            best_generation=self._best_generation,
            m=self.cubes.m,
            n=self.n,
            segmented=segmented,
            archive=self.archive,
            seconds=seconds,
            diversity=list(self.diversity),
        )


def run_ga(cfg: RunConfig, cubes: CubeSet, image: RasterImage | None = None) -> RunResult:
    return GaEngine(cfg, cubes, image).run()
