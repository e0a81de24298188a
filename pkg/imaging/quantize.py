from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from imaging.image_types import RasterImage

DEFAULT_BINS_PER_AXIS = 8


@dataclass(frozen=True, slots=True)
class Cube:
    mean_color: tuple[float, float, float]
    weight: int
    bin_index: tuple[int, int, int]


def bin_bounds(bin_index: int, bins_per_axis: int) -> tuple[int, int]:
    """
    Inclusive channel range covered by `bin_index` on one axis.
    A channel c falls in bin floor(c * bins_per_axis / 256).
    """
    lo = -(-bin_index * 256 // bins_per_axis)
    hi = -(-(bin_index + 1) * 256 // bins_per_axis) - 1
    return lo, min(hi, 255)


def bin_of(channels: np.ndarray, bins_per_axis: int) -> np.ndarray:
    return (np.asarray(channels, dtype=np.int64) * bins_per_axis) >> 8


@dataclass(frozen=True, slots=True, eq=False)
class CubeSet:
    """
    The quantized image.

    Cubes are the non-empty RGB bins sorted lexicographically by bin index;
    gene i of a chromosome refers to cube i.
    """
    bins_per_axis: int
    mean_colors: np.ndarray
    weights: np.ndarray
    bin_indices: np.ndarray
    pixel_to_cube: np.ndarray

    def __post_init__(self) -> None:
        means = np.array(self.mean_colors, dtype=np.float64).reshape(-1, 3)
        weights = np.array(self.weights, dtype=np.int64).reshape(-1)
        bins = np.array(self.bin_indices, dtype=np.int64).reshape(-1, 3)
        mapping = np.array(self.pixel_to_cube, dtype=np.int64).reshape(-1)

        if means.shape[0] != weights.shape[0] or bins.shape[0] != weights.shape[0]:
            raise ValueError("CubeSet arrays must describe the same number of cubes.")
        if weights.size and weights.min() < 1:
            raise ValueError("CubeSet weights must all be >= 1.")
        if mapping.size and (mapping.min() < 0 or mapping.max() >= weights.size):
            raise ValueError("CubeSet.pixel_to_cube indices must lie in [0, m).")

        for name, arr in (("mean_colors", means), ("weights", weights), ("bin_indices", bins), ("pixel_to_cube", mapping)):
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def m(self) -> int:
        return int(self.weights.shape[0])

    @property
    def total_weight(self) -> int:
        return int(self.weights.sum())

    def cube(self, i: int) -> Cube:
        r, g, b = (float(v) for v in self.mean_colors[i])
        br, bg, bb = (int(v) for v in self.bin_indices[i])
        return Cube(mean_color=(r, g, b), weight=int(self.weights[i]), bin_index=(br, bg, bb))

    def cubes(self) -> list[Cube]:
        return [self.cube(i) for i in range(self.m)]

    @staticmethod
    def from_cubes(
        mean_colors: Sequence[Sequence[float]],
        weights: Sequence[int],
        bins_per_axis: int = 256,
    ) -> "CubeSet":
        """
        Build an instance directly from cube colours and weights (no backing image).
        Used for small objective and oracle instances.
        """
        means = np.array(mean_colors, dtype=np.float64).reshape(-1, 3)
        if means.size and (means.min() < 0 or means.max() > 255):
            raise ValueError("Cube mean colours must lie in [0, 255].")
        bins = bin_of(np.floor(means), bins_per_axis)
        return CubeSet(
            bins_per_axis=bins_per_axis,
            mean_colors=means,
            weights=np.array(weights, dtype=np.int64),
            bin_indices=bins,
            pixel_to_cube=np.zeros(0, dtype=np.int64),
        )


def quantize(img: RasterImage, bins_per_axis: int = DEFAULT_BINS_PER_AXIS) -> CubeSet:
    """
    Partition RGB space into bins_per_axis**3 axis-aligned bins and keep the non-empty ones.
    Each cube's representative is the weighted mean of its member pixel colours.
    """
    if isinstance(bins_per_axis, bool) or not isinstance(bins_per_axis, int):
        raise ValueError("bins_per_axis must be an integer.")
    if not (1 <= bins_per_axis <= 256):
        raise ValueError("bins_per_axis must be in [1, 256].")
    if img.pixel_count == 0:
        raise ValueError("Cannot quantize an empty image.")

    px = img.flat_pixels().astype(np.int64)
    bins = bin_of(px, bins_per_axis)
    keys = (bins[:, 0] * bins_per_axis + bins[:, 1]) * bins_per_axis + bins[:, 2]

    # np.unique sorts keys, which is the lexicographic bin order.
    unique_keys, inverse = np.unique(keys, return_inverse=True)
    inverse = inverse.reshape(-1)
    m = unique_keys.shape[0]

    weights = np.bincount(inverse, minlength=m)
    sums = np.stack(
        [np.bincount(inverse, weights=px[:, c], minlength=m) for c in range(3)],
        axis=1,
    )
    means = sums / weights[:, None]
    bin_indices = np.stack(
        [
            unique_keys // (bins_per_axis * bins_per_axis),
            (unique_keys // bins_per_axis) % bins_per_axis,
            unique_keys % bins_per_axis,
        ],
        axis=1,
    )
    return CubeSet(
        bins_per_axis=bins_per_axis,
        mean_colors=means,
        weights=weights,
        bin_indices=bin_indices,
        pixel_to_cube=inverse,
    )
