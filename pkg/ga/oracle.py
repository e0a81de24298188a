from __future__ import annotations

from dataclasses import dataclass

from ga.genome import LabelAssignment
from ga.objective import J_MIN, objective_j
from imaging.quantize import CubeSet

MAX_ASSIGNMENTS = 10 ** 7
AGREEMENT_TOLERANCE = 1e-9


class InstanceTooLargeError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class OracleResult:
    best_labels: LabelAssignment
    best_j: float
    evaluated_count: int


@dataclass(frozen=True, slots=True)
class CrossCheck:
    oracle_j: float
    engine_j: float
    relative_error: float

    @property
    def agrees(self) -> bool:
        return self.relative_error <= AGREEMENT_TOLERANCE


def naive_j(colors: list[tuple[float, float, float]], weights: list[int], labels: tuple[int, ...] | list[int]) -> float:
    """
    Straightforward two-pass recomputation of J with plain Python floats.
    Deliberately shares nothing with the vectorised objective.
    """
    totals: dict[int, float] = {}
    sums: dict[int, list[float]] = {}
    for color, w, label in zip(colors, weights, labels):
        totals[label] = totals.get(label, 0.0) + w
        acc = sums.setdefault(label, [0.0, 0.0, 0.0])
        for c in range(3):
            acc[c] += w * color[c]

    centroids = {label: [s / totals[label] for s in acc] for label, acc in sums.items()}

    j = 0.0
    for color, w, label in zip(colors, weights, labels):
        centre = centroids[label]
        d = 0.0
        for c in range(3):
            diff = color[c] - centre[c]
            d += diff * diff
        j += w * d
    return j


def _instance(cubes: CubeSet) -> tuple[list[tuple[float, float, float]], list[int]]:
    colors = [tuple(float(v) for v in row) for row in cubes.mean_colors.tolist()]
    weights = [int(w) for w in cubes.weights.tolist()]
    return colors, weights  # type: ignore[return-value]


def brute_force_min_j(cubes: CubeSet, b: int) -> OracleResult:
    """
    Enumerate every label assignment (gene 0 varies fastest) and keep the
    first minimiser found.
    """
    k = 1 << b
    m = cubes.m
    total = k ** m
    if total > MAX_ASSIGNMENTS:
        raise InstanceTooLargeError(
            f"Exhaustive search over (2^{b})^{m} = {total} assignments exceeds the limit of {MAX_ASSIGNMENTS}."
        )

    colors, weights = _instance(cubes)
    labels = [0] * m
    best_labels = tuple(labels)
    best_j = naive_j(colors, weights, labels)

    for _ in range(1, total):
        # Mixed-radix increment, gene 0 is the least significant digit.
        i = 0
        while i < m:
            labels[i] += 1
            if labels[i] < k:
                break
            labels[i] = 0
            i += 1
        j = naive_j(colors, weights, labels)
        if j < best_j:
            best_j = j
            best_labels = tuple(labels)

    return OracleResult(
        best_labels=LabelAssignment(labels=best_labels, b=b),
        best_j=best_j,
        evaluated_count=total,
    )


def relative_error(a: float, b: float) -> float:
    # J_MIN floors the denominator so two near-zero errors compare as equal.
    return abs(a - b) / max(abs(a), abs(b), J_MIN)


def cross_check_j(cubes: CubeSet, a: LabelAssignment) -> CrossCheck:
    colors, weights = _instance(cubes)
    oracle = naive_j(colors, weights, a.labels)
    engine = objective_j(cubes, a)
    return CrossCheck(oracle_j=oracle, engine_j=engine, relative_error=relative_error(oracle, engine))
