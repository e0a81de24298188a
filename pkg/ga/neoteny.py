from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from config.neoteny_config import NeotenyConfig
from ga.genome import Chromosome, random_bits
from ga.ga_types import Population


@dataclass(frozen=True, slots=True)
class ArchiveEntry:
    chromosome: Chromosome
    generation: int
    fitness: float


@dataclass(frozen=True, slots=True)
class NeotenyArchive:
    """
    Elite genotypes captured during the capture window, at most one per generation.
    Entries never change once captured.
    """
    config: NeotenyConfig
    entries: tuple[ArchiveEntry, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.entries)

    def generations(self) -> list[int]:
        return [e.generation for e in self.entries]

    def maybe_capture(self, g: int, population: Population) -> "NeotenyArchive":
        """
        Append a copy of the generation's best individual when g is inside the
        capture window (ties -> lowest index). Otherwise return self unchanged.
        """
        if not self.config.in_capture(g):
            return self
        if self.entries and self.entries[-1].generation >= g:
            return self
        i = population.best_index()
        entry = ArchiveEntry(
            chromosome=population.chromosome(i),
            generation=g,
            fitness=float(population.fitness[i]),
        )
        return NeotenyArchive(config=self.config, entries=self.entries + (entry,))


def maybe_capture(archive: NeotenyArchive, g: int, population: Population) -> NeotenyArchive:
    return archive.maybe_capture(g, population)


def injection_count(rng: np.random.Generator, e: float) -> int:
    """
    floor(E) plus one more with probability frac(E), so the expectation is exactly E.
    Always consumes one uniform draw.
    """
    if e < 0:
        raise ValueError("Injection average E must be >= 0.")
    base = math.floor(e)
    frac = e - base
    extra = 1 if rng.random() < frac else 0
    return int(base) + extra


def inject(
    rng: np.random.Generator,
    bits: np.ndarray,
    archive: NeotenyArchive,
    g: int,
    protected: frozenset[int] = frozenset(),
) -> tuple[np.ndarray, int]:
    """
    Overwrite offspring slots in place with archived genotypes.

    Draw order: injection count, target slots (without replacement), archive
    picks (uniform, with replacement), then random companion bits.
    Returns the bit matrix and the number of slots overwritten.
    """
    config = archive.config
    if not config.in_throw(g):
        return bits, 0
    if not archive.entries:
        raise RuntimeError(
            f"Neoteny archive is empty at throw generation {g}; "
            f"capture window {list(config.capture)} never ran before throw window {list(config.throw)}."
        )

    k = injection_count(rng, config.e)
    if k == 0:
        return bits, 0

    per_injection = 2 if config.with_random_companion else 1
    eligible = np.array([i for i in range(bits.shape[0]) if i not in protected], dtype=np.int64)
    k = min(k, eligible.size // per_injection)
    if k == 0:
        return bits, 0

    slots = rng.choice(eligible, size=k * per_injection, replace=False)
    picks = rng.integers(0, len(archive.entries), size=k)
    for slot, pick in zip(slots[:k], picks):
        bits[slot] = archive.entries[int(pick)].chromosome.to_array()
    if config.with_random_companion:
        bits[slots[k:]] = random_bits(rng, (k, bits.shape[1]))
    return bits, k * per_injection
