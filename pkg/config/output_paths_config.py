from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True, slots=True)
class OutputPathsConfig:
    """
    Where experiment artefacts are written.

    <output_folder>/summary.csv and friends, plus one sub-folder per artefact kind.
    """
    output_folder: Path

    @property
    def traces_folder(self) -> Path:
        return self.output_folder / "traces"

    @property
    def images_folder(self) -> Path:
        return self.output_folder / "images"

    @property
    def archives_folder(self) -> Path:
        return self.output_folder / "archives"

    @property
    def reports_folder(self) -> Path:
        return self.output_folder / "reports"

    def trace_path(self, test_id: str) -> Path:
        return self.traces_folder / f"{test_id}.csv"

    def image_path(self, test_id: str) -> Path:
        return self.images_folder / f"{test_id}.ppm"

    def summary_path(self, name: str = "summary") -> Path:
        return self.output_folder / f"{name}.csv"

    @staticmethod
    def from_strings(output_folder: str | Path) -> "OutputPathsConfig":
        return OutputPathsConfig(output_folder=OutputPathsConfig._norm(output_folder))

    def ensure_output_dirs(self) -> None:
        """
        Create output directories if they don't exist.
        """
        for p in (
            self.output_folder,
            self.traces_folder,
            self.images_folder,
            self.archives_folder,
            self.reports_folder,
        ):
            p.mkdir(parents=True, exist_ok=True)

    def validate(self) -> None:
        """
        Outputs can be created; but if they exist and aren't dirs, that's an error.
        """
        for p, label in [
            (self.output_folder, "output_folder"),
            (self.traces_folder, "traces_folder"),
            (self.images_folder, "images_folder"),
            (self.archives_folder, "archives_folder"),
            (self.reports_folder, "reports_folder"),
        ]:
            if p.exists() and not p.is_dir():
                raise ValueError(f"{label} exists but is not a directory: {p}")

    @staticmethod
    def _norm(p: str | Path) -> Path:
        return Path(p).expanduser().resolve()
