from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np


@dataclass(frozen=True, slots=True, eq=False)
class RasterImage:
    """
    An 8-bit RGB raster.

    `pixels` is a read-only uint8 array of shape (height, width, 3), row-major.
    """
    width: int
    height: int
    pixels: np.ndarray

    def __post_init__(self) -> None:
        if isinstance(self.width, bool) or not isinstance(self.width, int) or self.width < 0:
            raise ValueError("RasterImage.width must be a non-negative integer.")
        if isinstance(self.height, bool) or not isinstance(self.height, int) or self.height < 0:
            raise ValueError("RasterImage.height must be a non-negative integer.")

        arr = np.asarray(self.pixels)
        if arr.size != self.width * self.height * 3:
            raise ValueError(
                f"RasterImage expects {self.width * self.height * 3} channel values "
                f"for {self.width}x{self.height}, got {arr.size}"
            )
        if arr.dtype != np.uint8:
            if arr.size and (arr.min() < 0 or arr.max() > 255):
                raise ValueError("RasterImage channel values must be in [0, 255].")
            arr = arr.astype(np.uint8)
        arr = np.array(arr, dtype=np.uint8, copy=True).reshape(self.height, self.width, 3)
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @staticmethod
    def from_pixels(width: int, height: int, pixels: Iterable[tuple[int, int, int]]) -> "RasterImage":
        """
        Build an image from a row-major sequence of (r, g, b) tuples.
        """
        flat = np.array(list(pixels), dtype=np.int64).reshape(-1)
        if flat.size and (flat.min() < 0 or flat.max() > 255):
            raise ValueError("RasterImage channel values must be in [0, 255].")
        return RasterImage(width=width, height=height, pixels=flat)

    @property
    def pixel_count(self) -> int:
        return self.width * self.height

    def flat_pixels(self) -> np.ndarray:
        return self.pixels.reshape(-1, 3)

    def pixel(self, x: int, y: int) -> tuple[int, int, int]:
        r, g, b = self.pixels[y, x]
        return int(r), int(g), int(b)

    def distinct_colors(self) -> int:
        if self.pixel_count == 0:
            return 0
        return int(np.unique(self.flat_pixels(), axis=0).shape[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RasterImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and np.array_equal(self.pixels, other.pixels)
        )

    __hash__ = None  # type: ignore[assignment]
