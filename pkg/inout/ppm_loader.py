from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from imaging.image_types import RasterImage
from imaging.ppm_codec import read_ppm, write_ppm

PPM_SUFFIXES = {".ppm", ".pnm"}


@dataclass(frozen=True, slots=True)
class PpmLoader():
    """
    Reads and writes PPM files on disk.
    """

    binary_output: bool = True

    def load(self, ppm_path: str | Path) -> RasterImage:
        """
        Read a P3 or P6 file.

        Parameters
        ----------
        ppm_path:
            Path (or string path) to a .ppm file.

        Returns
        ----------
        RasterImage
            The decoded pixels.
        """
        path = Path(ppm_path)
        self._validate_ppm_path(path)
        return read_ppm(path.read_bytes())

    def save(self, ppm_path: str | Path, img: RasterImage) -> Path:
        path = Path(ppm_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(write_ppm(img, binary=self.binary_output))
        return path

    @staticmethod
    def _validate_ppm_path(path: Path) -> None:
        if not path.exists():
            raise FileNotFoundError(f"PPM file not found: {path}")
        if not path.is_file():
            raise ValueError(f"PPM path is not a file: {path}")
        if path.suffix.lower() not in PPM_SUFFIXES:
            raise ValueError(f"Expected a .ppm file, but got: {path.name}")
