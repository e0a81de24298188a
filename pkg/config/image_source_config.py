from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from imaging.synth import MAX_COLORS, MAX_NOISE, MIN_COLORS


@dataclass(frozen=True, slots=True)
class ImageSourceConfig:
    """
    Where the segmented image comes from: a PPM file, or the seeded synthetic generator.
    """
    path: Path | None = None
    synth_width: int = 128
    synth_height: int = 128
    synth_colors: int = 6
    synth_noise: int = 12
    synth_seed: int = 9

    @property
    def is_synthetic(self) -> bool:
        return self.path is None

    def describe(self) -> str:
        if self.path is not None:
            return f"ppm:{self.path}"
        return (
            f"synth:{self.synth_width}x{self.synth_height},"
            f"colors={self.synth_colors},noise={self.synth_noise},seed={self.synth_seed}"
        )

    def validate(self) -> None:
        if self.path is not None:
            if not self.path.exists():
                raise ValueError(f"Image file does not exist: {self.path}")
            if not self.path.is_file():
                raise ValueError(f"Image path is not a file: {self.path}")
            return

        for label, value in (
            ("synth_width", self.synth_width),
            ("synth_height", self.synth_height),
            ("synth_colors", self.synth_colors),
            ("synth_noise", self.synth_noise),
            ("synth_seed", self.synth_seed),
        ):
            # bool is a subclass of int; reject it explicitly.
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValueError(f"ImageSourceConfig.{label} must be an integer.")

        if not (MIN_COLORS <= self.synth_colors <= MAX_COLORS):
            raise ValueError(f"ImageSourceConfig.synth_colors must be in [{MIN_COLORS}, {MAX_COLORS}].")
        if not (0 <= self.synth_noise <= MAX_NOISE):
            raise ValueError(f"ImageSourceConfig.synth_noise must be in [0, {MAX_NOISE}].")
        if self.synth_height < 1 or self.synth_width < self.synth_colors:
            raise ValueError("ImageSourceConfig needs synth_height >= 1 and synth_width >= synth_colors.")

    @staticmethod
    def from_strings(
        path: str | Path | None = None,
        synth_width: str | int = 128,
        synth_height: str | int = 128,
        synth_colors: str | int = 6,
        synth_noise: str | int = 12,
        synth_seed: str | int = 9,
    ) -> "ImageSourceConfig":
        norm = None
        if path is not None and str(path).strip():
            norm = Path(path).expanduser().resolve()
        cfg = ImageSourceConfig(
            path=norm,
            synth_width=int(synth_width),
            synth_height=int(synth_height),
            synth_colors=int(synth_colors),
            synth_noise=int(synth_noise),
            synth_seed=int(synth_seed),
        )
        cfg.validate()
        return cfg
