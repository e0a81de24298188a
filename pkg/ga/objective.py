from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ga.genome import LabelAssignment
from imaging.image_types import RasterImage
from imaging.quantize import CubeSet

FITNESS_SCALE = 1e9
J_MIN = 1e-6


@dataclass(frozen=True, slots=True, eq=False)
class ClusterModel:
    """
    Per-label centroids and pixel weight. Empty clusters keep a zero centroid
    that is never used.
    """
    centroids: np.ndarray
    member_weight: np.ndarray

    @property
    def k(self) -> int:
        return int(self.member_weight.shape[0])

    def non_empty(self) -> np.ndarray:
        return np.flatnonzero(self.member_weight > 0)


@dataclass(frozen=True, slots=True)
class FitnessReport:
    j: float
    fitness: float

    @staticmethod
    def from_j(j: float) -> "FitnessReport":
        return FitnessReport(j=float(j), fitness=fitness(j))


def fitness(j: float) -> float:
    """10**9 / J, capped at 10**9 / J_MIN for degenerate (zero-error) partitions."""
    if j < 0:
        raise ValueError("J must be >= 0.")
    return FITNESS_SCALE / max(float(j), J_MIN)


def fitness_array(j: np.ndarray) -> np.ndarray:
    return FITNESS_SCALE / np.maximum(j, J_MIN)


def _check_length(cubes: CubeSet, m: int) -> None:
    if m != cubes.m:
        raise ValueError(f"Assignment has {m} labels but the cube set has {cubes.m} cubes.")


def _population_centroids(cubes: CubeSet, labels: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    p = labels.shape[0]
    flat = (labels + k * np.arange(p)[:, None]).reshape(-1)
    w = cubes.weights.astype(np.float64)
    wc = w[:, None] * cubes.mean_colors

    member = np.bincount(flat, weights=np.tile(w, p), minlength=p * k).reshape(p, k)
    sums = np.stack(
        [np.bincount(flat, weights=np.tile(wc[:, c], p), minlength=p * k) for c in range(3)],
        axis=-1,
    ).reshape(p, k, 3)
    safe = np.where(member > 0, member, 1.0)
    return sums / safe[..., None], member


def population_objective(cubes: CubeSet, labels: np.ndarray, k: int) -> np.ndarray:
    """
    J for every row of a (P, m) label matrix.

    Two passes: centroids first, then the weighted squared distances of each
    cube's mean colour to its centroid. Rows are independent, so evaluating a
    row alone gives the same value as evaluating it inside a batch.
    """
    labels = np.asarray(labels, dtype=np.int64)
    if labels.ndim != 2:
        raise ValueError("labels must be a (P, m) matrix.")
    _check_length(cubes, labels.shape[1])

    centroids, _ = _population_centroids(cubes, labels, k)
    assigned = centroids[np.arange(labels.shape[0])[:, None], labels]
    diffs = cubes.mean_colors[None, :, :] - assigned
    sq = np.sum(diffs * diffs, axis=-1)
    return np.sum(cubes.weights.astype(np.float64)[None, :] * sq, axis=1)


def build_model(cubes: CubeSet, a: LabelAssignment) -> ClusterModel:
    _check_length(cubes, a.m)
    centroids, member = _population_centroids(cubes, a.as_array()[None, :], a.k)
    return ClusterModel(centroids=centroids[0], member_weight=member[0])


def objective_j(cubes: CubeSet, a: LabelAssignment) -> float:
    """Pixel-weighted within-cluster sum of squared RGB distances."""
    return float(population_objective(cubes, a.as_array()[None, :], a.k)[0])


def evaluate(cubes: CubeSet, a: LabelAssignment) -> FitnessReport:
    return FitnessReport.from_j(objective_j(cubes, a))


def centroid_palette(model: ClusterModel) -> np.ndarray:
    # Nearest integer with ties toward +inf.
    return np.clip(np.floor(model.centroids + 0.5), 0, 255).astype(np.uint8)


def render_segmentation(img: RasterImage, cubes: CubeSet, a: LabelAssignment) -> RasterImage:
    """
    Replace every pixel by its cluster's rounded centroid colour.
    """
    if cubes.pixel_to_cube.shape[0] != img.pixel_count:
        raise ValueError(
            f"Cube set maps {cubes.pixel_to_cube.shape[0]} pixels but the image has {img.pixel_count}."
        )
    model = build_model(cubes, a)
    palette = centroid_palette(model)
    pixel_labels = a.as_array()[cubes.pixel_to_cube]
    return RasterImage(width=img.width, height=img.height, pixels=palette[pixel_labels])
